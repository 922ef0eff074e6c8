#pragma once

#include "switchnet/linalg.hpp"

namespace switchnet {

/// Outcome of a linear-program solve.
enum class LPStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
};

[[nodiscard]] const char* to_string(LPStatus status);

/// Linear program
///
///   minimize    c' z
///   subject to  eq_coeffs  z  = eq_rhs
///               in_coeffs  z <= in_rhs
///               lower <= z <= upper   (entries may be +-infinity)
struct LinearProgram {
    Vector objective;
    Matrix eq_coeffs;  ///< may have zero rows
    Vector eq_rhs;
    Matrix in_coeffs;  ///< may have zero rows
    Vector in_rhs;
    Vector lower;
    Vector upper;

    /// A program over `nv` variables with zero objective, no constraints
    /// and unbounded variables.
    [[nodiscard]] static LinearProgram with_variables(Index nv);

    [[nodiscard]] Index num_variables() const { return objective.size(); }

    /// Throws std::invalid_argument on dimension mismatches, non-finite
    /// coefficients or a lower bound above the matching upper bound.
    void validate() const;
};

struct LPOptions {
    double feasibility_tol = kFeasibilityTol;
    double optimality_tol  = 1e-9;
    long   max_iterations  = 0;  ///< 0 selects an automatic cap
};

struct LPSolution {
    LPStatus status = LPStatus::IterationLimit;
    Vector   primal;          ///< best point found (feasible unless Infeasible)
    double   objective = 0.0;
    long     iterations = 0;  ///< simplex pivots across both phases
};

/// Bounded-variable revised simplex with a two-phase start.
///
/// Ties in the entering-variable choice are broken towards the lowest
/// column index, so the solve is deterministic; a Bland's-rule fallback
/// engages on degenerate stalls to guarantee termination.
[[nodiscard]] LPSolution solve_lp(const LinearProgram& lp, const LPOptions& opts = {});

}  // namespace switchnet
