#pragma once

#include <vector>

#include "switchnet/linalg.hpp"

namespace switchnet {

/// First-order moment block of a mode-indicator vector.
///
/// `lambda` collects the first moments of the binary indicators and `Lambda`
/// their second moments; the bordered matrix [[1, lambda'], [lambda, Lambda]]
/// is positive semidefinite, diag(Lambda) = lambda and sum(lambda) = 1.
struct MomentBlock {
    Vector lambda;
    Matrix Lambda;

    /// Bordered (M+1)x(M+1) moment matrix.
    [[nodiscard]] Matrix bordered() const;

    /// The exactly feasible block concentrated on one mode:
    /// lambda = e_j, Lambda = e_j e_j'.
    [[nodiscard]] static MomentBlock vertex(Index mode_count, Index mode);
};

enum class ModeBlockStatus { Converged, IterationLimit };

struct ModeBlockOptions {
    double tol = 1e-9;           ///< primal/dual residual stopping threshold
    long   max_iterations = 50000;
    double rho = 1.0;            ///< initial penalty parameter
    double relaxation = 1.6;     ///< over-relaxation factor
};

struct ModeBlockResult {
    MomentBlock block;
    ModeBlockStatus status = ModeBlockStatus::Converged;
    long iterations = 0;
    double objective = 0.0;  ///< sum_k |(R lambda)_k| at the returned point
    /// Hardened assignment: argmax of lambda, lowest index on ties.
    [[nodiscard]] Index hardened() const;
};

/// Minimize ||R lambda||_1 over the order-one moment relaxation of binary
/// mode indicators, where column j of `residuals` holds the fit residual of
/// mode j.  Solved by operator splitting (alternating projections onto the
/// affine constraints and the PSD-cone/orthant product with dual updates).
///
/// When the iteration cap is hit the result falls back to the best vertex
/// (smallest column 1-norm, lowest index on ties), which is exactly
/// feasible, and reports IterationLimit.
[[nodiscard]] ModeBlockResult solve_mode_block(const Matrix& residuals,
                                               const ModeBlockOptions& opts = {});

/// Batch version; items are independent and run on up to `threads` workers.
/// Results are identical to calling solve_mode_block element-wise.
[[nodiscard]] std::vector<ModeBlockResult> solve_mode_blocks(
    const std::vector<Matrix>& residuals, const ModeBlockOptions& opts = {}, int threads = 0);

/// Index of the column with the smallest 1-norm, lowest index on ties.
[[nodiscard]] Index best_column_by_l1(const Matrix& residuals);

}  // namespace switchnet
