#include "switchnet/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "switchnet/parallel.hpp"

namespace switchnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Mode field where the adjacency may carry fractional (relaxed) entries;
/// the coupling term extends linearly in each entry.
Vector relaxed_mode_field(const Matrix& coeffs, const Matrix& adjacency,
                          const CouplingSpec& coupling, const PolynomialBasis& basis,
                          const Vector& x) {
    const Index N = adjacency.rows();
    const Index n = basis.node_dim();
    Vector out(N * n);
    for (Index p = 0; p < N; ++p) {
        const Vector xp = x.segment(p * n, n);
        Vector acc = node_field(coeffs, basis, xp);
        for (Index q = 0; q < N; ++q) {
            const double a = adjacency(p, q);
            if (a == 0.0) continue;
            acc += a * (coupling.channel * (coupling.alpha * xp + coupling.beta * x.segment(q * n, n)));
        }
        out.segment(p * n, n) = acc;
    }
    return out;
}

void check_samples(const SampleSet& samples) {
    if (samples.samples.empty())
        throw std::invalid_argument("identification requires at least one sample");
    if (samples.nodes < 1 || samples.node_dim < 1)
        throw std::invalid_argument("sample set is missing its node geometry");
    const Index K = samples.state_dim();
    for (size_t i = 0; i < samples.samples.size(); ++i) {
        const Sample& s = samples.samples[i];
        if (s.x.size() != K || s.xdot.size() != K)
            throw std::invalid_argument("sample " + std::to_string(i + 1) +
                                        " does not match the joint state dimension " +
                                        std::to_string(K));
        if (!s.x.allFinite() || !s.xdot.allFinite())
            throw std::invalid_argument("sample " + std::to_string(i + 1) +
                                        " has non-finite entries");
    }
}

}  // namespace

void IdentificationConfig::validate() const {
    if (mode_count < 1) throw std::invalid_argument("IdentificationConfig: mode count must be >= 1");
    if (!(eta > 0.0)) throw std::invalid_argument("IdentificationConfig: eta must be positive");
    if (basis_degree < 0) throw std::invalid_argument("IdentificationConfig: degree must be >= 0");
    if (max_outer_iterations < 1)
        throw std::invalid_argument("IdentificationConfig: need at least one outer iteration");
    if (!(objective_tol >= 0.0))
        throw std::invalid_argument("IdentificationConfig: objective tolerance must be >= 0");
    if (!(rounding_threshold > 0.0 && rounding_threshold < 1.0))
        throw std::invalid_argument("IdentificationConfig: rounding threshold must lie in (0, 1)");
}

IdentificationState initialize(const IdentificationConfig& config, Index nodes, Index node_dim) {
    config.validate();
    if (nodes < 1 || node_dim < 1)
        throw std::invalid_argument("initialize: node count and dimension must be >= 1");

    IdentificationState state;
    state.basis = PolynomialBasis(node_dim, config.basis_degree, config.basis_kind);
    const Index P = state.basis.length();
    const Index M = config.mode_count;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> small_coeff(-config.eta / 10.0, config.eta / 10.0);

    state.adjacency_relaxed.resize(static_cast<size_t>(M));
    for (Index j = 0; j < M; ++j) {
        Matrix a(nodes, nodes);
        for (Index p = 0; p < nodes; ++p)
            for (Index q = 0; q < nodes; ++q) a(p, q) = unit(rng);
        if (!config.allow_self_loops) a.diagonal().setZero();
        state.adjacency_relaxed[static_cast<size_t>(j)] = std::move(a);
    }

    const Index blocks = config.share_node_dynamics ? 1 : M;
    std::vector<Matrix> drawn;
    for (Index b = 0; b < blocks; ++b) {
        Matrix c(node_dim, P);
        for (Index r = 0; r < node_dim; ++r)
            for (Index m = 0; m < P; ++m) c(r, m) = small_coeff(rng);
        drawn.push_back(std::move(c));
    }
    state.coeffs.resize(static_cast<size_t>(M));
    for (Index j = 0; j < M; ++j)
        state.coeffs[static_cast<size_t>(j)] =
            config.share_node_dynamics ? drawn[0] : drawn[static_cast<size_t>(j)];

    state.adjacency_model = state.adjacency_relaxed;
    state.adjacency_rounded.clear();
    return state;
}

ModeStepResult mode_step(IdentificationState& state, const SampleSet& samples,
                         const CouplingSpec& coupling, const IdentificationConfig& config) {
    check_samples(samples);
    coupling.validate(samples.node_dim);
    const Index M = config.mode_count;
    const size_t S = samples.samples.size();
    const Index K = samples.state_dim();

    std::vector<Matrix> residuals(S);
    parallel_for(static_cast<long>(S), config.threads, [&](long i) {
        const Sample& s = samples.samples[static_cast<size_t>(i)];
        Matrix R(K, M);
        for (Index j = 0; j < M; ++j)
            R.col(j) = s.xdot - relaxed_mode_field(state.coeffs[static_cast<size_t>(j)],
                                                   state.adjacency_model[static_cast<size_t>(j)],
                                                   coupling, state.basis, s.x);
        residuals[static_cast<size_t>(i)] = std::move(R);
    });

    const std::vector<ModeBlockResult> blocks =
        solve_mode_blocks(residuals, config.mode_block, config.threads);

    state.assignments.resize(S);
    state.lambdas.resize(S);
    ModeStepResult result;
    for (size_t i = 0; i < S; ++i) {
        const ModeBlockResult& blk = blocks[i];
        state.assignments[i] = blk.hardened();
        state.lambdas[i] = blk.block.lambda;
        result.objective_relaxed += blk.objective;
        result.objective_hardened += residuals[i].col(state.assignments[i]).lpNorm<1>();
        if (blk.status == ModeBlockStatus::IterationLimit) ++result.fallbacks;
    }
    return result;
}

namespace {

/// Column layout of the dynamics LP: per-mode adjacency entries, then the
/// coefficient block(s), then the fit slack pair (u, v) per residual row.
struct DynamicsLayout {
    Index M = 0, N = 0, n = 0, P = 0;
    bool share = false;
    std::vector<std::pair<Index, Index>> adj_entries;
    Index rows = 0;

    [[nodiscard]] Index adj_per_mode() const { return static_cast<Index>(adj_entries.size()); }
    [[nodiscard]] Index coeff_blocks() const { return share ? 1 : M; }
    [[nodiscard]] Index adj_col(Index mode, Index entry) const {
        return mode * adj_per_mode() + entry;
    }
    [[nodiscard]] Index coeff_col(Index mode, Index row, Index monomial) const {
        const Index block = share ? 0 : mode;
        return M * adj_per_mode() + block * n * P + row * P + monomial;
    }
    [[nodiscard]] Index slack_base() const { return M * adj_per_mode() + coeff_blocks() * n * P; }
    [[nodiscard]] Index u_col(Index row) const { return slack_base() + row; }
    [[nodiscard]] Index v_col(Index row) const { return slack_base() + rows + row; }
    [[nodiscard]] Index total() const { return slack_base() + 2 * rows; }
};

}  // namespace

double dynamics_step(IdentificationState& state, const SampleSet& samples,
                     const CouplingSpec& coupling, const IdentificationConfig& config) {
    check_samples(samples);
    coupling.validate(samples.node_dim);
    if (state.assignments.size() != samples.samples.size())
        throw std::logic_error("dynamics_step: run mode_step before fitting dynamics");

    DynamicsLayout lay;
    lay.M = config.mode_count;
    lay.N = samples.nodes;
    lay.n = samples.node_dim;
    lay.P = state.basis.length();
    lay.share = config.share_node_dynamics;
    for (Index p = 0; p < lay.N; ++p)
        for (Index q = 0; q < lay.N; ++q) {
            if (p == q && !config.allow_self_loops) continue;
            lay.adj_entries.emplace_back(p, q);
        }
    const Index S = static_cast<Index>(samples.samples.size());
    const Index K = samples.state_dim();
    lay.rows = S * K;

    LinearProgram lp = LinearProgram::with_variables(lay.total());
    lp.eq_coeffs = Matrix::Zero(lay.rows, lay.total());
    lp.eq_rhs = Vector::Zero(lay.rows);

    // Bounds: adjacency in [0, 1], coefficients in [-eta, eta], slacks >= 0.
    for (Index j = 0; j < lay.M; ++j)
        for (Index e = 0; e < lay.adj_per_mode(); ++e) {
            lp.lower(lay.adj_col(j, e)) = 0.0;
            lp.upper(lay.adj_col(j, e)) = 1.0;
        }
    for (Index b = 0; b < lay.coeff_blocks(); ++b)
        for (Index r = 0; r < lay.n; ++r)
            for (Index m = 0; m < lay.P; ++m) {
                const Index col = lay.coeff_col(lay.share ? 0 : b, r, m);
                lp.lower(col) = -config.eta;
                lp.upper(col) = config.eta;
            }
    for (Index row = 0; row < lay.rows; ++row) {
        lp.lower(lay.u_col(row)) = 0.0;
        lp.lower(lay.v_col(row)) = 0.0;
        lp.objective(lay.u_col(row)) = 1.0;
        lp.objective(lay.v_col(row)) = 1.0;
    }

    // Residual rows: F_j(x_i) + u - v = xdot_i for the assigned mode j.
    std::vector<Index> samples_per_mode(static_cast<size_t>(lay.M), 0);
    for (Index i = 0; i < S; ++i) {
        const Sample& s = samples.samples[static_cast<size_t>(i)];
        const Index j = state.assignments[static_cast<size_t>(i)];
        ++samples_per_mode[static_cast<size_t>(j)];
        for (Index p = 0; p < lay.N; ++p) {
            const Vector xp = s.x.segment(p * lay.n, lay.n);
            const Vector psi = state.basis.eval(xp);
            for (Index c = 0; c < lay.n; ++c) {
                const Index row = i * K + p * lay.n + c;
                lp.eq_rhs(row) = s.xdot(p * lay.n + c);
                for (Index m = 0; m < lay.P; ++m)
                    lp.eq_coeffs(row, lay.coeff_col(j, c, m)) = psi(m);
                for (Index e = 0; e < lay.adj_per_mode(); ++e) {
                    const auto& [ep, eq] = lay.adj_entries[static_cast<size_t>(e)];
                    if (ep != p) continue;
                    const Vector coupled =
                        coupling.channel *
                        (coupling.alpha * xp + coupling.beta * s.x.segment(eq * lay.n, lay.n));
                    lp.eq_coeffs(row, lay.adj_col(j, e)) = coupled(c);
                }
                lp.eq_coeffs(row, lay.u_col(row)) = 1.0;
                lp.eq_coeffs(row, lay.v_col(row)) = -1.0;
            }
        }
    }

    const LPSolution sol = solve_lp(lp, config.lp);
    if (sol.status != LPStatus::Optimal)
        throw std::runtime_error(std::string("dynamics_step: LP solve ended with status ") +
                                 to_string(sol.status));

    for (Index j = 0; j < lay.M; ++j) {
        if (samples_per_mode[static_cast<size_t>(j)] == 0) continue;  // keep previous values
        Matrix a = Matrix::Zero(lay.N, lay.N);
        for (Index e = 0; e < lay.adj_per_mode(); ++e) {
            const auto& [p, q] = lay.adj_entries[static_cast<size_t>(e)];
            a(p, q) = std::clamp(sol.primal(lay.adj_col(j, e)), 0.0, 1.0);
        }
        state.adjacency_relaxed[static_cast<size_t>(j)] = std::move(a);
        Matrix c(lay.n, lay.P);
        for (Index r = 0; r < lay.n; ++r)
            for (Index m = 0; m < lay.P; ++m) c(r, m) = sol.primal(lay.coeff_col(j, r, m));
        state.coeffs[static_cast<size_t>(j)] = std::move(c);
    }
    if (lay.share) {
        // All modes see the single fitted block, including empty ones.
        bool any = false;
        Matrix shared;
        for (Index j = 0; j < lay.M; ++j)
            if (samples_per_mode[static_cast<size_t>(j)] > 0) {
                shared = state.coeffs[static_cast<size_t>(j)];
                any = true;
                break;
            }
        if (any)
            for (Index j = 0; j < lay.M; ++j) state.coeffs[static_cast<size_t>(j)] = shared;
    }
    return sol.objective;
}

Matrix round_adjacency(const Matrix& relaxed, double threshold) {
    Matrix out(relaxed.rows(), relaxed.cols());
    for (Index p = 0; p < relaxed.rows(); ++p)
        for (Index q = 0; q < relaxed.cols(); ++q) out(p, q) = relaxed(p, q) > threshold ? 1.0 : 0.0;
    return out;
}

Vector round_adjacency(const Vector& relaxed, double threshold) {
    Vector out(relaxed.size());
    for (Index i = 0; i < relaxed.size(); ++i) out(i) = relaxed(i) > threshold ? 1.0 : 0.0;
    return out;
}

namespace {

struct Quality {
    double mode_error = kNaN;
    double adjacency_error = kNaN;
    double coeff_error = kNaN;
};

Quality compare_to_truth(const std::vector<Matrix>& rounded, const std::vector<Matrix>& coeffs,
                         const std::vector<Index>& assignments, const SampleSet& samples,
                         const GroundTruth& truth, std::vector<std::string>& warnings) {
    const Index M = static_cast<Index>(rounded.size());
    if (static_cast<Index>(truth.adjacencies.size()) != M ||
        static_cast<Index>(truth.coeffs.size()) != M)
        throw std::invalid_argument("ground truth does not match the configured mode count");
    if (M > 8) {
        warnings.push_back("metrics skipped: exhaustive permutation search is limited to 8 modes");
        return {};
    }

    bool labeled = true;
    for (const Sample& s : samples.samples)
        if (!s.true_mode) {
            labeled = false;
            break;
        }

    Quality best;
    bool first = true;
    std::vector<Index> perm(static_cast<size_t>(M));
    for (Index j = 0; j < M; ++j) perm[static_cast<size_t>(j)] = j;
    do {
        double mode_error = 0.0;
        if (labeled) {
            Index wrong = 0;
            for (size_t i = 0; i < samples.samples.size(); ++i)
                if (perm[static_cast<size_t>(assignments[i])] != *samples.samples[i].true_mode)
                    ++wrong;
            mode_error = static_cast<double>(wrong) / static_cast<double>(samples.samples.size());
        }
        double adjacency_error = 0.0;
        double coeff_error = 0.0;
        for (Index j = 0; j < M; ++j) {
            const Index t = perm[static_cast<size_t>(j)];
            adjacency_error += static_cast<double>(count_entry_mismatches(
                rounded[static_cast<size_t>(j)],
                truth.adjacencies[static_cast<size_t>(t)].entries()));
            coeff_error = std::max(
                coeff_error,
                max_abs(coeffs[static_cast<size_t>(j)] - truth.coeffs[static_cast<size_t>(t)]));
        }
        const bool better =
            first || std::tie(mode_error, adjacency_error, coeff_error) <
                         std::tie(best.mode_error, best.adjacency_error, best.coeff_error);
        if (better) {
            best.mode_error = mode_error;
            best.adjacency_error = adjacency_error;
            best.coeff_error = coeff_error;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!labeled) best.mode_error = kNaN;
    return best;
}

}  // namespace

IdentificationReport run_identification(const SampleSet& samples, const CouplingSpec& coupling,
                                        const IdentificationConfig& config,
                                        const GroundTruth* truth) {
    config.validate();
    check_samples(samples);
    coupling.validate(samples.node_dim);

    IdentificationReport report;
    report.nodes = samples.nodes;
    report.node_dim = samples.node_dim;
    report.config = config;

    IdentificationState state = initialize(config, samples.nodes, samples.node_dim);

    std::vector<Index> prev_assignments;
    std::vector<Matrix> prev_rounded;
    double prev_objective = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;

    for (int it = 1; it <= config.max_outer_iterations; ++it) {
        iterations = it;
        const ModeStepResult ms = mode_step(state, samples, coupling, config);
        report.fallback_count += ms.fallbacks;
        if (ms.fallbacks > 0)
            report.warnings.push_back("iteration " + std::to_string(it) + ": " +
                                      std::to_string(ms.fallbacks) +
                                      " mode blocks hit the iteration cap and fell back to "
                                      "column enumeration");

        const double lp_objective = dynamics_step(state, samples, coupling, config);
        const double slack = 1e-6 * (1.0 + std::abs(ms.objective_hardened));
        if (lp_objective > ms.objective_hardened + slack)
            report.warnings.push_back(
                "iteration " + std::to_string(it) +
                ": dynamics refit did not decrease the hardened objective (" +
                std::to_string(lp_objective) + " > " + std::to_string(ms.objective_hardened) + ")");

        std::vector<Matrix> rounded(state.adjacency_relaxed.size());
        for (size_t j = 0; j < state.adjacency_relaxed.size(); ++j) {
            const Matrix& rel = state.adjacency_relaxed[j];
            for (Index p = 0; p < rel.rows(); ++p)
                for (Index q = 0; q < rel.cols(); ++q)
                    if (std::abs(rel(p, q) - config.rounding_threshold) < 1e-6) {
                        std::ostringstream msg;
                        msg << "iteration " << it << ": relaxed adjacency entry (mode " << j + 1
                            << ", " << q + 1 << " -> " << p + 1 << ") = " << rel(p, q)
                            << " is within 1e-6 of the rounding threshold";
                        report.warnings.push_back(msg.str());
                    }
            rounded[j] = round_adjacency(rel, config.rounding_threshold);
        }
        state.adjacency_rounded = rounded;
        state.adjacency_model = rounded;

        IterationMetrics metrics;
        metrics.iteration = it;
        metrics.objective = lp_objective;
        if (truth) {
            const Quality q = compare_to_truth(rounded, state.coeffs, state.assignments, samples,
                                               *truth, report.warnings);
            metrics.mode_error = q.mode_error;
            metrics.adjacency_error = q.adjacency_error;
            metrics.coeff_error = q.coeff_error;
        } else {
            metrics.mode_error = kNaN;
            metrics.adjacency_error = kNaN;
            metrics.coeff_error = kNaN;
        }
        report.trace.push_back(metrics);

        const bool assignments_stable = !prev_assignments.empty() && state.assignments == prev_assignments;
        const bool graphs_stable = !prev_rounded.empty() && rounded == prev_rounded;
        const bool objective_stable = std::abs(prev_objective - lp_objective) <= config.objective_tol;
        if (assignments_stable && graphs_stable && objective_stable) {
            converged = true;
            break;
        }
        prev_assignments = state.assignments;
        prev_rounded = rounded;
        prev_objective = lp_objective;
    }

    report.converged = converged;
    report.iterations = iterations;
    report.assignments = state.assignments;
    report.lambdas = state.lambdas;
    report.adjacency_relaxed = state.adjacency_relaxed;
    report.modes.resize(state.coeffs.size());
    for (size_t j = 0; j < state.coeffs.size(); ++j) {
        report.modes[j].coeffs = state.coeffs[j];
        report.modes[j].adjacency = AdjacencyMatrix(state.adjacency_rounded[j]);
    }
    return report;
}

std::vector<std::vector<std::pair<Index, Index>>> reconstruct_graphs(
    const std::vector<AdjacencyMatrix>& graphs, Index node_dim) {
    if (node_dim < 1) throw std::invalid_argument("reconstruct_graphs: node dimension must be >= 1");
    std::vector<std::vector<std::pair<Index, Index>>> out;
    out.reserve(graphs.size());
    for (const AdjacencyMatrix& g : graphs) {
        const AdjacencyMatrix node_level =
            node_dim == 1 ? g : collapse_blocks(g.entries(), node_dim);
        std::vector<std::pair<Index, Index>> edges;
        for (Index p = 0; p < node_level.nodes(); ++p)
            for (Index q = 0; q < node_level.nodes(); ++q)
                if (node_level.entries()(p, q) == 1.0) edges.emplace_back(p, q);
        out.push_back(std::move(edges));
    }
    return out;
}

AdjacencyMatrix collapse_blocks(const Matrix& block_matrix, Index node_dim) {
    if (node_dim < 1) throw std::invalid_argument("collapse_blocks: node dimension must be >= 1");
    if (block_matrix.rows() != block_matrix.cols() || block_matrix.rows() % node_dim != 0)
        throw std::invalid_argument(
            "collapse_blocks: matrix size is not a multiple of the node dimension");
    const Index N = block_matrix.rows() / node_dim;
    Matrix out = Matrix::Zero(N, N);
    for (Index p = 0; p < N; ++p)
        for (Index q = 0; q < N; ++q) {
            const Matrix block = block_matrix.block(p * node_dim, q * node_dim, node_dim, node_dim);
            out(p, q) = max_abs(block) != 0.0 ? 1.0 : 0.0;
        }
    return AdjacencyMatrix(std::move(out));
}

Matrix expand_blocks(const AdjacencyMatrix& adjacency, Index node_dim) {
    if (node_dim < 1) throw std::invalid_argument("expand_blocks: node dimension must be >= 1");
    return kron(adjacency.entries(), Matrix::Ones(node_dim, node_dim));
}

Index count_entry_mismatches(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("count_entry_mismatches: matrices must have equal shape");
    Index count = 0;
    for (Index p = 0; p < a.rows(); ++p)
        for (Index q = 0; q < a.cols(); ++q)
            if (a(p, q) != b(p, q)) ++count;
    return count;
}

}  // namespace switchnet
