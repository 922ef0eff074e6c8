#include "switchnet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "switchnet/io.hpp"

namespace switchnet {

namespace fs = std::filesystem;

namespace {

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

}  // namespace

int cmd_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
    const SwitchedNetworkSystem system = config.system.build();
    config.simulation.validate(system.state_dim());

    const std::vector<Vector> starts =
        random_initial_states(config.simulation.box_lo, config.simulation.box_hi,
                              config.simulation.trajectory_count, config.simulation.seed);
    std::vector<TrajectoryConfig> trajectories;
    for (const Vector& x0 : starts) {
        TrajectoryConfig tc;
        tc.initial_state = x0;
        tc.dt = config.simulation.dt;
        tc.t_end = config.simulation.t_end;
        tc.sampling_stride = config.simulation.stride;
        trajectories.push_back(std::move(tc));
    }

    DatasetOptions opts;
    opts.velocity = config.simulation.velocity;
    opts.noise_std = config.simulation.noise_std;
    opts.seed = config.simulation.seed;
    opts.threads = config.identification.threads;
    const SampleSet samples =
        sample_dataset(system, trajectories, config.simulation.stride, opts);

    std::vector<Trajectory> runs;
    runs.reserve(trajectories.size());
    Index truncated = 0;
    for (const TrajectoryConfig& tc : trajectories) {
        runs.push_back(simulate(system, tc));
        if (runs.back().truncated) ++truncated;
    }

    ensure_directory(out_dir);
    write_dataset_csv(samples, join(out_dir, "dataset.csv"));
    write_trajectories_csv(runs, join(out_dir, "trajectories.csv"));

    std::vector<Index> counts(static_cast<size_t>(system.mode_count()), 0);
    for (const Sample& s : samples.samples)
        if (s.true_mode) ++counts[static_cast<size_t>(*s.true_mode)];
    log << "wrote " << samples.samples.size() << " samples to " << join(out_dir, "dataset.csv")
        << " (per-mode counts:";
    for (Index c : counts) log << " " << c;
    log << ")\n";
    if (truncated > 0)
        log << "warning: " << truncated << " trajectories hit the divergence guard and were "
            << "truncated\n";
    return kExitSuccess;
}

int cmd_identify(const RunConfig& config, const std::string& data_path,
                 const std::string& out_dir, std::ostream& log) {
    if (config.system.nodes < 1 || config.system.node_dim < 1)
        throw ConfigError("identify: the [system] section must define 'nodes' and 'node_dim'");

    CouplingSpec coupling;
    coupling.alpha = config.system.alpha;
    coupling.beta = config.system.beta;
    coupling.channel = config.system.channel.size() == 0
                           ? Matrix(Matrix::Identity(config.system.node_dim, config.system.node_dim))
                           : config.system.channel;

    const SampleSet samples = read_dataset_csv(data_path, config.system.nodes,
                                               config.system.node_dim,
                                               config.identification.mode_count);

    GroundTruth truth;
    const bool have_truth = config.system.has_dynamics() &&
                            config.system.mode_count == config.identification.mode_count;
    if (have_truth) truth = config.system.ground_truth();

    const IdentificationReport report = run_identification(
        samples, coupling, config.identification, have_truth ? &truth : nullptr);

    ensure_directory(out_dir);
    write_json_file(report_to_json(report), join(out_dir, "report.json"));
    write_metrics_csv(report.trace, join(out_dir, "metrics.csv"));

    log << (report.converged ? "converged" : "did not converge") << " after "
        << report.iterations << " iterations; final objective "
        << format_cell(report.trace.empty() ? 0.0 : report.trace.back().objective) << "\n";
    for (const std::string& w : report.warnings) log << "warning: " << w << "\n";
    return report.converged ? kExitSuccess : kExitNoConvergence;
}

int cmd_surface(const RunConfig& config, const std::string& report_path,
                const std::string& data_path, const std::string& out_dir, std::ostream& log) {
    const IdentificationReport report = report_from_json(read_json_file(report_path));
    const Index M = static_cast<Index>(report.modes.size());
    if (M != 2)
        throw ConfigError("surface: learning a switching surface requires exactly 2 modes, the "
                          "report has " + std::to_string(M));

    const SampleSet samples =
        read_dataset_csv(data_path, report.nodes, report.node_dim, M);
    if (samples.samples.size() != report.assignments.size())
        throw DataError("surface: the dataset has " + std::to_string(samples.samples.size()) +
                        " samples but the report assigns " +
                        std::to_string(report.assignments.size()));

    // Decide which identified mode sits on the negative side of the surface.
    // When the config carries the true rule, align to it by majority so the
    // fitted sign convention matches the ground truth; the labeling is
    // otherwise arbitrary (mode 1 negative).
    const Index state_dim = report.nodes * report.node_dim;
    bool have_rule = false;
    SwitchingRuleSpec rule = config.system.rule;
    if (config.system.nodes == report.nodes && config.system.node_dim == report.node_dim) {
        try {
            rule.validate(state_dim, std::max<Index>(config.system.mode_count, 2));
            have_rule = true;
        } catch (const ConfigError&) {
            have_rule = false;
        }
    }
    Index negative_mode = 0;
    if (have_rule) {
        Index agree = 0;
        for (size_t i = 0; i < samples.samples.size(); ++i) {
            const bool inside = rule.decision_value(samples.samples[i].x) <= 0.0;
            const bool assigned_zero = report.assignments[i] == 0;
            if (inside == assigned_zero) ++agree;
        }
        if (2 * agree < static_cast<Index>(samples.samples.size())) negative_mode = 1;
    }

    std::vector<Vector> points;
    std::vector<int> labels;
    points.reserve(samples.samples.size());
    for (size_t i = 0; i < samples.samples.size(); ++i) {
        points.push_back(samples.samples[i].x);
        labels.push_back(report.assignments[i] == negative_mode ? -1 : +1);
    }

    SurfaceFitOptions opts;
    opts.degree = config.surface.degree;
    opts.gamma = config.surface.gamma;
    SurfaceFitInfo info;
    const SurfaceModel model = fit_surface(points, labels, opts, &info);

    Index correct = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        const double v = evaluate_surface(model, points[i]);
        if ((v >= 0.0 ? 1 : -1) == labels[i]) ++correct;
    }
    const double training_accuracy =
        static_cast<double>(correct) / static_cast<double>(points.size());

    Vector grid_lo = config.surface.grid_lo;
    Vector grid_hi = config.surface.grid_hi;
    if (grid_lo.size() != state_dim || grid_hi.size() != state_dim)
        throw ConfigError("surface: grid_lo/grid_hi must have dimension " +
                          std::to_string(state_dim));
    const SurfaceGrid grid =
        export_surface_grid(model, grid_lo, grid_hi, config.surface.grid_resolution,
                            config.identification.threads);

    ensure_directory(out_dir);
    nlohmann::json sj = surface_to_json(model);
    sj["training_accuracy"] = training_accuracy;
    sj["negative_mode"] = negative_mode + 1;

    write_surface_grid_csv(grid, join(out_dir, "surface_grid.csv"));
    if (have_rule) {
        Vector truth_values(grid.values.size());
        for (Index r = 0; r < grid.points.rows(); ++r)
            truth_values(r) = rule.decision_value(grid.points.row(r).transpose());
        write_surface_comparison_csv(grid, truth_values,
                                     join(out_dir, "surface_comparison.csv"));
        Index matches = 0;
        for (Index r = 0; r < grid.values.size(); ++r)
            if ((grid.values(r) >= 0.0) == (truth_values(r) >= 0.0)) ++matches;
        const double agreement =
            static_cast<double>(matches) / static_cast<double>(grid.values.size());
        sj["grid_sign_agreement"] = agreement;
        log << "grid sign agreement with the configured rule: " << format_cell(agreement)
            << "\n";
    }
    write_json_file(sj, join(out_dir, "surface.json"));
    log << "training accuracy " << format_cell(training_accuracy) << " over "
        << points.size() << " samples\n";
    return kExitSuccess;
}

int cmd_report(const std::string& run_dir, std::ostream& log) {
    const std::vector<std::string> required = {"dataset.csv", "report.json", "metrics.csv",
                                              "surface.json"};
    std::vector<std::string> missing;
    for (const std::string& name : required)
        if (!fs::exists(fs::path(run_dir) / name)) missing.push_back(name);
    if (!missing.empty()) {
        log << "missing artifacts in '" << run_dir << "':";
        for (const std::string& name : missing) log << " " << name;
        log << "\n";
        return kExitData;
    }

    const IdentificationReport report =
        report_from_json(read_json_file(join(run_dir, "report.json")));
    const nlohmann::json surface = read_json_file(join(run_dir, "surface.json"));
    const SampleSet samples = read_dataset_csv(join(run_dir, "dataset.csv"), report.nodes,
                                               report.node_dim, report.config.mode_count);

    nlohmann::json summary;
    summary["schema"] = "switchnet-summary-v1";
    summary["samples"] = samples.samples.size();
    summary["nodes"] = report.nodes;
    summary["node_dim"] = report.node_dim;
    summary["mode_count"] = static_cast<Index>(report.modes.size());
    summary["converged"] = report.converged;
    summary["iterations"] = report.iterations;
    summary["fallback_count"] = report.fallback_count;
    if (!report.trace.empty()) {
        const IterationMetrics& last = report.trace.back();
        summary["final_objective"] = last.objective;
        summary["final_mode_error"] = last.mode_error;
        summary["final_adjacency_error"] = last.adjacency_error;
        summary["final_coeff_error"] = last.coeff_error;
    }
    nlohmann::json edges = nlohmann::json::array();
    std::vector<AdjacencyMatrix> graphs;
    for (const ModeModel& mode : report.modes) graphs.push_back(mode.adjacency);
    const auto edge_lists = reconstruct_graphs(graphs, report.node_dim);
    for (const auto& list : edge_lists) edges.push_back(static_cast<Index>(list.size()));
    summary["edge_counts"] = std::move(edges);
    if (surface.contains("training_accuracy"))
        summary["surface_training_accuracy"] = surface.at("training_accuracy");
    if (surface.contains("grid_sign_agreement"))
        summary["surface_grid_sign_agreement"] = surface.at("grid_sign_agreement");
    summary["warnings"] = report.warnings;
    write_json_file(summary, join(run_dir, "summary.json"));

    auto metric_text = [](double v) {
        return std::isnan(v) ? std::string("n/a") : format_cell(v);
    };
    log << std::left;
    log << std::setw(28) << "samples" << samples.samples.size() << "\n";
    log << std::setw(28) << "modes" << report.modes.size() << "\n";
    log << std::setw(28) << "converged" << (report.converged ? "yes" : "no") << "\n";
    log << std::setw(28) << "iterations" << report.iterations << "\n";
    if (!report.trace.empty()) {
        const IterationMetrics& last = report.trace.back();
        log << std::setw(28) << "final objective" << format_cell(last.objective) << "\n";
        log << std::setw(28) << "final mode error" << metric_text(last.mode_error) << "\n";
        log << std::setw(28) << "final adjacency error" << metric_text(last.adjacency_error)
            << "\n";
        log << std::setw(28) << "final max coeff error" << metric_text(last.coeff_error) << "\n";
    }
    for (size_t m = 0; m < edge_lists.size(); ++m)
        log << std::setw(28) << ("mode " + std::to_string(m + 1) + " edges")
            << edge_lists[m].size() << "\n";
    if (surface.contains("training_accuracy"))
        log << std::setw(28) << "surface training accuracy"
            << format_cell(surface.at("training_accuracy").get<double>()) << "\n";
    if (surface.contains("grid_sign_agreement"))
        log << std::setw(28) << "surface sign agreement"
            << format_cell(surface.at("grid_sign_agreement").get<double>()) << "\n";
    if (!report.warnings.empty())
        log << std::setw(28) << "warnings" << report.warnings.size() << "\n";
    return kExitSuccess;
}

}  // namespace switchnet
