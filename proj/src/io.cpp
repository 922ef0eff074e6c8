#include "switchnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace switchnet {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    return out;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_csv_double(const std::string& cell, const std::string& path, size_t row,
                        const std::string& column) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw DataError(path + ":" + std::to_string(row) + ": column '" + column +
                        "' is not a number: '" + cell + "'");
    }
    if (pos != cell.size())
        throw DataError(path + ":" + std::to_string(row) + ": column '" + column +
                        "' is not a number: '" + cell + "'");
    return v;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw DataError(what + ": expected an array of rows");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j.front().size());
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<size_t>(r)];
        if (static_cast<Index>(row.size()) != cols)
            throw DataError(what + ": rows have inconsistent lengths");
        for (Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<size_t>(c)].get<double>();
    }
    return m;
}

Vector vector_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw DataError(what + ": expected an array");
    Vector v(static_cast<Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
    return v;
}

double json_metric(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string format_cell(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_dataset_csv(const SampleSet& samples, const std::string& path) {
    std::ofstream out = open_for_write(path);
    const Index K = samples.state_dim();
    for (Index i = 1; i <= K; ++i) out << "x_" << i << ",";
    for (Index i = 1; i <= K; ++i) out << "xdot_" << i << ",";
    out << "true_mode\n";
    for (const Sample& s : samples.samples) {
        for (Index i = 0; i < K; ++i) out << format_cell(s.x(i)) << ",";
        for (Index i = 0; i < K; ++i) out << format_cell(s.xdot(i)) << ",";
        if (s.true_mode) out << *s.true_mode + 1;
        out << "\n";
    }
    if (!out) throw DataError("failed while writing '" + path + "'");
}

SampleSet read_dataset_csv(const std::string& path, Index nodes, Index node_dim,
                           Index mode_count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset '" + path + "'");
    const Index K = nodes * node_dim;

    SampleSet set;
    set.nodes = nodes;
    set.node_dim = node_dim;
    set.mode_count = mode_count;

    std::string line;
    size_t row = 0;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::ostringstream expected;
        for (Index i = 1; i <= K; ++i) expected << "x_" << i << ",";
        for (Index i = 1; i <= K; ++i) expected << "xdot_" << i << ",";
        expected << "true_mode";
        if (line != expected.str())
            throw DataError(path + ":1: header does not match the expected " +
                            std::to_string(K) + "-dimensional dataset layout");
    }

    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_row(line);
        if (static_cast<Index>(cells.size()) != 2 * K + 1)
            throw DataError(path + ":" + std::to_string(row) + ": expected " +
                            std::to_string(2 * K + 1) + " columns, got " +
                            std::to_string(cells.size()));
        Sample s;
        s.x.resize(K);
        s.xdot.resize(K);
        for (Index i = 0; i < K; ++i)
            s.x(i) = parse_csv_double(cells[static_cast<size_t>(i)], path, row,
                                      "x_" + std::to_string(i + 1));
        for (Index i = 0; i < K; ++i)
            s.xdot(i) = parse_csv_double(cells[static_cast<size_t>(K + i)], path, row,
                                         "xdot_" + std::to_string(i + 1));
        const std::string& mode_cell = cells[static_cast<size_t>(2 * K)];
        if (!mode_cell.empty()) {
            const double m = parse_csv_double(mode_cell, path, row, "true_mode");
            const Index mi = static_cast<Index>(m);
            if (static_cast<double>(mi) != m || mi < 1 || (mode_count > 0 && mi > mode_count))
                throw DataError(path + ":" + std::to_string(row) +
                                ": true_mode must be an integer in 1.." +
                                std::to_string(mode_count) + ", got '" + mode_cell + "'");
            s.true_mode = mi - 1;
        }
        set.samples.push_back(std::move(s));
    }
    return set;
}

void write_trajectories_csv(const std::vector<Trajectory>& trajectories,
                            const std::string& path) {
    std::ofstream out = open_for_write(path);
    Index K = 0;
    for (const Trajectory& t : trajectories)
        if (!t.states.empty()) {
            K = t.states.front().size();
            break;
        }
    out << "trajectory,time";
    for (Index i = 1; i <= K; ++i) out << ",x_" << i;
    out << ",mode\n";
    for (size_t t = 0; t < trajectories.size(); ++t) {
        const Trajectory& traj = trajectories[t];
        for (size_t k = 0; k < traj.states.size(); ++k) {
            out << t + 1 << "," << format_cell(traj.times[k]);
            for (Index i = 0; i < K; ++i) out << "," << format_cell(traj.states[k](i));
            out << "," << traj.modes[k] + 1 << "\n";
        }
    }
    if (!out) throw DataError("failed while writing '" + path + "'");
}

void write_metrics_csv(const std::vector<IterationMetrics>& trace, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "iteration,objective,mode_error,adjacency_error,coeff_error\n";
    for (const IterationMetrics& m : trace) {
        out << m.iteration << "," << format_cell(m.objective) << "," << format_cell(m.mode_error)
            << "," << format_cell(m.adjacency_error) << "," << format_cell(m.coeff_error) << "\n";
    }
    if (!out) throw DataError("failed while writing '" + path + "'");
}

nlohmann::json report_to_json(const IdentificationReport& report) {
    nlohmann::json j;
    j["schema"] = "switchnet-report-v1";
    j["nodes"] = report.nodes;
    j["node_dim"] = report.node_dim;
    j["mode_count"] = static_cast<Index>(report.modes.size());
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["fallback_count"] = report.fallback_count;

    nlohmann::json cfg;
    cfg["mode_count"] = report.config.mode_count;
    cfg["eta"] = report.config.eta;
    cfg["basis_degree"] = report.config.basis_degree;
    cfg["basis_kind"] = to_string(report.config.basis_kind);
    cfg["max_outer_iterations"] = report.config.max_outer_iterations;
    cfg["objective_tol"] = report.config.objective_tol;
    cfg["rounding_threshold"] = report.config.rounding_threshold;
    cfg["seed"] = report.config.seed;
    cfg["share_node_dynamics"] = report.config.share_node_dynamics;
    cfg["allow_self_loops"] = report.config.allow_self_loops;
    j["config"] = std::move(cfg);

    const PolynomialBasis basis(report.node_dim, report.config.basis_degree,
                                report.config.basis_kind);
    nlohmann::json basis_json;
    basis_json["degree"] = report.config.basis_degree;
    basis_json["kind"] = to_string(report.config.basis_kind);
    basis_json["exponents"] = basis.exponents();
    j["basis"] = std::move(basis_json);

    nlohmann::json modes = nlohmann::json::array();
    std::vector<AdjacencyMatrix> graphs;
    for (const ModeModel& mode : report.modes) graphs.push_back(mode.adjacency);
    const auto edge_lists = reconstruct_graphs(graphs, report.node_dim);
    for (size_t m = 0; m < report.modes.size(); ++m) {
        nlohmann::json mj;
        mj["adjacency"] = matrix_to_json(report.modes[m].adjacency.entries());
        mj["coeffs"] = matrix_to_json(report.modes[m].coeffs);
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& [target, source] : edge_lists[m])
            edges.push_back({source + 1, target + 1});
        mj["edges"] = std::move(edges);
        modes.push_back(std::move(mj));
    }
    j["modes"] = std::move(modes);

    nlohmann::json relaxed = nlohmann::json::array();
    for (const Matrix& r : report.adjacency_relaxed) relaxed.push_back(matrix_to_json(r));
    j["adjacency_relaxed"] = std::move(relaxed);

    nlohmann::json assignments = nlohmann::json::array();
    for (Index a : report.assignments) assignments.push_back(a + 1);
    j["assignments"] = std::move(assignments);

    nlohmann::json lambdas = nlohmann::json::array();
    for (const Vector& l : report.lambdas) {
        nlohmann::json row = nlohmann::json::array();
        for (Index i = 0; i < l.size(); ++i) row.push_back(l(i));
        lambdas.push_back(std::move(row));
    }
    j["lambdas"] = std::move(lambdas);

    nlohmann::json trace = nlohmann::json::array();
    for (const IterationMetrics& m : report.trace) {
        nlohmann::json row;
        row["iteration"] = m.iteration;
        row["objective"] = m.objective;
        row["mode_error"] = m.mode_error;
        row["adjacency_error"] = m.adjacency_error;
        row["coeff_error"] = m.coeff_error;
        trace.push_back(std::move(row));
    }
    j["trace"] = std::move(trace);
    j["warnings"] = report.warnings;
    return j;
}

IdentificationReport report_from_json(const nlohmann::json& j) {
    IdentificationReport report;
    try {
        report.nodes = j.at("nodes").get<Index>();
        report.node_dim = j.at("node_dim").get<Index>();
        report.converged = j.at("converged").get<bool>();
        report.iterations = j.at("iterations").get<int>();
        report.fallback_count = j.at("fallback_count").get<int>();

        const nlohmann::json& cfg = j.at("config");
        report.config.mode_count = cfg.at("mode_count").get<Index>();
        report.config.eta = cfg.at("eta").get<double>();
        report.config.basis_degree = cfg.at("basis_degree").get<Index>();
        report.config.basis_kind = cfg.at("basis_kind").get<std::string>() == "total-degree"
                                       ? BasisKind::TotalDegree
                                       : BasisKind::UnivariatePowers;
        report.config.max_outer_iterations = cfg.at("max_outer_iterations").get<int>();
        report.config.objective_tol = cfg.at("objective_tol").get<double>();
        report.config.rounding_threshold = cfg.at("rounding_threshold").get<double>();
        report.config.seed = cfg.at("seed").get<std::uint64_t>();
        report.config.share_node_dynamics = cfg.at("share_node_dynamics").get<bool>();
        report.config.allow_self_loops = cfg.at("allow_self_loops").get<bool>();

        for (const auto& mj : j.at("modes")) {
            ModeModel mode;
            mode.adjacency = AdjacencyMatrix(matrix_from_json(mj.at("adjacency"), "modes.adjacency"));
            mode.coeffs = matrix_from_json(mj.at("coeffs"), "modes.coeffs");
            report.modes.push_back(std::move(mode));
        }
        for (const auto& rj : j.at("adjacency_relaxed"))
            report.adjacency_relaxed.push_back(matrix_from_json(rj, "adjacency_relaxed"));
        for (const auto& aj : j.at("assignments"))
            report.assignments.push_back(aj.get<Index>() - 1);
        for (const auto& lj : j.at("lambdas"))
            report.lambdas.push_back(vector_from_json(lj, "lambdas"));
        for (const auto& tj : j.at("trace")) {
            IterationMetrics m;
            m.iteration = tj.at("iteration").get<int>();
            m.objective = json_metric(tj.at("objective"));
            m.mode_error = json_metric(tj.at("mode_error"));
            m.adjacency_error = json_metric(tj.at("adjacency_error"));
            m.coeff_error = json_metric(tj.at("coeff_error"));
            report.trace.push_back(m);
        }
        if (j.contains("warnings"))
            for (const auto& w : j.at("warnings")) report.warnings.push_back(w.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("identification report JSON is malformed: ") + e.what());
    }
    return report;
}

nlohmann::json surface_to_json(const SurfaceModel& model) {
    nlohmann::json j;
    j["schema"] = "switchnet-surface-v1";
    j["dimension"] = model.dimension;
    j["degree"] = model.degree;
    j["exponents"] = model.exponents;
    nlohmann::json weights = nlohmann::json::array();
    for (Index i = 0; i < model.weights.size(); ++i) weights.push_back(model.weights(i));
    j["weights"] = std::move(weights);
    j["bias"] = model.bias;
    return j;
}

SurfaceModel surface_from_json(const nlohmann::json& j) {
    SurfaceModel model;
    try {
        model.dimension = j.at("dimension").get<Index>();
        model.degree = j.at("degree").get<Index>();
        model.exponents = j.at("exponents").get<std::vector<std::vector<int>>>();
        model.weights = vector_from_json(j.at("weights"), "weights");
        model.bias = j.at("bias").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("surface JSON is malformed: ") + e.what());
    }
    if (static_cast<Index>(model.exponents.size()) != model.weights.size())
        throw DataError("surface JSON: weights and exponents have different lengths");
    return model;
}

void write_surface_grid_csv(const SurfaceGrid& grid, const std::string& path) {
    std::ofstream out = open_for_write(path);
    for (Index i = 1; i <= grid.points.cols(); ++i) out << "x_" << i << ",";
    out << "value\n";
    for (Index r = 0; r < grid.points.rows(); ++r) {
        for (Index c = 0; c < grid.points.cols(); ++c) out << format_cell(grid.points(r, c)) << ",";
        out << format_cell(grid.values(r)) << "\n";
    }
    if (!out) throw DataError("failed while writing '" + path + "'");
}

void write_surface_comparison_csv(const SurfaceGrid& grid, const Vector& truth_values,
                                  const std::string& path) {
    if (truth_values.size() != grid.values.size())
        throw DataError("surface comparison: value vectors have different lengths");
    std::ofstream out = open_for_write(path);
    for (Index i = 1; i <= grid.points.cols(); ++i) out << "x_" << i << ",";
    out << "identified,truth,sign_match\n";
    for (Index r = 0; r < grid.points.rows(); ++r) {
        for (Index c = 0; c < grid.points.cols(); ++c) out << format_cell(grid.points(r, c)) << ",";
        const bool match = (grid.values(r) >= 0.0) == (truth_values(r) >= 0.0);
        out << format_cell(grid.values(r)) << "," << format_cell(truth_values(r)) << ","
            << (match ? 1 : 0) << "\n";
    }
    if (!out) throw DataError("failed while writing '" + path + "'");
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << j.dump(2) << "\n";
    if (!out) throw DataError("failed while writing '" + path + "'");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
}

}  // namespace switchnet
