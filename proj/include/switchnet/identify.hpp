#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "switchnet/lp.hpp"
#include "switchnet/model.hpp"
#include "switchnet/moment.hpp"
#include "switchnet/simulate.hpp"

namespace switchnet {

struct IdentificationConfig {
    Index mode_count = 2;
    double eta = 10.0;  ///< box bound on polynomial coefficients
    Index basis_degree = 2;
    BasisKind basis_kind = BasisKind::UnivariatePowers;
    int max_outer_iterations = 50;
    double objective_tol = 1e-8;     ///< objective-decrease part of the stop test
    double rounding_threshold = 0.5;
    std::uint64_t seed = 0;          ///< drives the random initialization
    bool share_node_dynamics = false;  ///< one coefficient matrix for all modes
    bool allow_self_loops = true;
    int threads = 0;
    ModeBlockOptions mode_block;
    LPOptions lp;

    void validate() const;
};

/// Known system used for per-iteration quality metrics.
struct GroundTruth {
    std::vector<AdjacencyMatrix> adjacencies;  ///< one per true mode
    std::vector<Matrix> coeffs;                ///< n x P, one per true mode
};

/// Working variables of the alternating scheme.
struct IdentificationState {
    PolynomialBasis basis;
    std::vector<Matrix> adjacency_relaxed;  ///< latest LP values, entries in [0, 1]
    std::vector<Matrix> adjacency_rounded;  ///< latest binary snapshot
    std::vector<Matrix> adjacency_model;    ///< matrices the mode search evaluates
    std::vector<Matrix> coeffs;             ///< n x P per mode
    std::vector<Index> assignments;         ///< hardened mode per sample
    std::vector<Vector> lambdas;            ///< relaxed indicators per sample
};

struct ModeStepResult {
    double objective_relaxed = 0.0;   ///< sum_i ||R_i lambda_i||_1
    double objective_hardened = 0.0;  ///< sum_i of the chosen column's 1-norm
    int fallbacks = 0;                ///< samples resolved by enumeration
};

/// Quality of one outer iteration; error fields are NaN without ground truth.
struct IterationMetrics {
    int iteration = 0;
    double objective = 0.0;        ///< dynamics LP optimum
    double mode_error = 0.0;       ///< misassigned-sample fraction
    double adjacency_error = 0.0;  ///< total mismatched binary entries
    double coeff_error = 0.0;      ///< max abs coefficient deviation
};

struct IdentificationReport {
    Index nodes = 0;
    Index node_dim = 0;
    IdentificationConfig config;
    std::vector<ModeModel> modes;           ///< rounded graphs + final coefficients
    std::vector<Matrix> adjacency_relaxed;
    std::vector<Index> assignments;
    std::vector<Vector> lambdas;
    bool converged = false;
    int iterations = 0;
    int fallback_count = 0;
    std::vector<IterationMetrics> trace;
    std::vector<std::string> warnings;
};

/// Seed-deterministic start: adjacency entries uniform on [0, 1] and
/// coefficients uniform on [-eta/10, eta/10].
[[nodiscard]] IdentificationState initialize(const IdentificationConfig& config, Index nodes,
                                             Index node_dim);

/// Assign every sample to a mode by minimizing the l1 fit residual over the
/// moment relaxation, then harden to the largest indicator (lowest index on
/// ties).  Samples whose relaxation hits the iteration cap fall back to
/// direct column enumeration.
ModeStepResult mode_step(IdentificationState& state, const SampleSet& samples,
                         const CouplingSpec& coupling, const IdentificationConfig& config);

/// Refit all mode dynamics in a single linear program: box-bounded
/// coefficients, adjacency entries relaxed to [0, 1] and l1 fit slacks.
/// Modes with no assigned samples keep their previous values.  Returns the
/// LP optimum.
double dynamics_step(IdentificationState& state, const SampleSet& samples,
                     const CouplingSpec& coupling, const IdentificationConfig& config);

/// Threshold a relaxed adjacency: entries strictly above `threshold` become 1.
[[nodiscard]] Matrix round_adjacency(const Matrix& relaxed, double threshold = 0.5);
[[nodiscard]] Vector round_adjacency(const Vector& relaxed, double threshold = 0.5);

/// Alternate mode search and dynamics fitting until the hardened
/// assignments, the rounded graphs and the objective all stabilize.
[[nodiscard]] IdentificationReport run_identification(const SampleSet& samples,
                                                      const CouplingSpec& coupling,
                                                      const IdentificationConfig& config,
                                                      const GroundTruth* truth = nullptr);

/// Edge lists (target, source) of each graph in row-major scan order.  For
/// block-structured matrices on nodes of dimension `node_dim` the node-level
/// pattern is extracted first.
[[nodiscard]] std::vector<std::vector<std::pair<Index, Index>>> reconstruct_graphs(
    const std::vector<AdjacencyMatrix>& graphs, Index node_dim = 1);

/// Node-level pattern of a block matrix: entry (p, q) is 1 when any entry of
/// the corresponding node_dim x node_dim block is nonzero.
[[nodiscard]] AdjacencyMatrix collapse_blocks(const Matrix& block_matrix, Index node_dim);

/// Inflate a node-level graph to its (N n) x (N n) block pattern.
[[nodiscard]] Matrix expand_blocks(const AdjacencyMatrix& adjacency, Index node_dim);

/// Number of differing entries between two equally sized binary matrices.
[[nodiscard]] Index count_entry_mismatches(const Matrix& a, const Matrix& b);

}  // namespace switchnet
