#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "switchnet/commands.hpp"
#include "switchnet/io.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string data_path;
    std::string out_dir;
    std::string report_path;
    std::string run_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> max_iter;
};

switchnet::RunConfig load_config(const CliArgs& args) {
    return switchnet::parse_run_config(args.config_path);
}

std::string default_path(const std::string& out_dir, const switchnet::RunConfig& cfg,
                         const std::string& name) {
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    return dir + "/" + name;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and identification of state-dependent switching network dynamics"};
    app.require_subcommand(1);
    CliArgs args;

    CLI::App* sim = app.add_subcommand(
        "simulate", "Integrate the configured system and write a labeled dataset");
    sim->add_option("--config", args.config_path, "Configuration file")->required();
    sim->add_option("--out", args.out_dir, "Output directory (default: [output] directory)");
    sim->add_option("--seed", args.seed, "Override the simulation seed");

    CLI::App* ident = app.add_subcommand(
        "identify", "Identify per-mode dynamics, graphs and assignments from a dataset");
    ident->add_option("--config", args.config_path, "Configuration file")->required();
    ident->add_option("--data", args.data_path, "Dataset CSV (default: <out>/dataset.csv)");
    ident->add_option("--out", args.out_dir, "Output directory (default: [output] directory)");
    ident->add_option("--seed", args.seed, "Override the identification seed");
    ident->add_option("--max-iter", args.max_iter, "Override the outer iteration cap");

    CLI::App* surf = app.add_subcommand(
        "surface", "Learn the switching surface from converged mode labels");
    surf->add_option("--config", args.config_path, "Configuration file")->required();
    surf->add_option("--report", args.report_path,
                     "Identification report JSON (default: <out>/report.json)");
    surf->add_option("--data", args.data_path, "Dataset CSV (default: <out>/dataset.csv)");
    surf->add_option("--out", args.out_dir, "Output directory (default: [output] directory)");

    CLI::App* rep = app.add_subcommand("report", "Summarize the artifacts of a pipeline run");
    rep->add_option("--dir", args.run_dir, "Run directory holding the pipeline outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? switchnet::kExitSuccess : switchnet::kExitConfig;
    }

    try {
        if (sim->parsed()) {
            switchnet::RunConfig cfg = load_config(args);
            if (args.seed) cfg.simulation.seed = *args.seed;
            const std::string out = args.out_dir.empty() ? cfg.output_dir : args.out_dir;
            return switchnet::cmd_simulate(cfg, out);
        }
        if (ident->parsed()) {
            switchnet::RunConfig cfg = load_config(args);
            if (args.seed) cfg.identification.seed = *args.seed;
            if (args.max_iter) cfg.identification.max_outer_iterations = *args.max_iter;
            const std::string out = args.out_dir.empty() ? cfg.output_dir : args.out_dir;
            const std::string data =
                args.data_path.empty() ? default_path(args.out_dir, cfg, "dataset.csv")
                                       : args.data_path;
            return switchnet::cmd_identify(cfg, data, out);
        }
        if (surf->parsed()) {
            switchnet::RunConfig cfg = load_config(args);
            const std::string out = args.out_dir.empty() ? cfg.output_dir : args.out_dir;
            const std::string report =
                args.report_path.empty() ? default_path(args.out_dir, cfg, "report.json")
                                         : args.report_path;
            const std::string data =
                args.data_path.empty() ? default_path(args.out_dir, cfg, "dataset.csv")
                                       : args.data_path;
            return switchnet::cmd_surface(cfg, report, data, out);
        }
        if (rep->parsed()) return switchnet::cmd_report(args.run_dir);
    } catch (const switchnet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return switchnet::kExitConfig;
    } catch (const switchnet::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return switchnet::kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return switchnet::kExitData;
    }
    return switchnet::kExitConfig;
}
