#pragma once

#include <iostream>
#include <string>

#include "switchnet/config.hpp"

namespace switchnet {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfig = 1;         ///< usage or configuration errors
inline constexpr int kExitData = 2;           ///< missing or malformed data
inline constexpr int kExitNoConvergence = 3;  ///< identification hit the iteration cap

/// Integrate the configured system from random initial states; writes
/// dataset.csv and trajectories.csv into `out_dir`.
int cmd_simulate(const RunConfig& config, const std::string& out_dir,
                 std::ostream& log = std::cout);

/// Run identification on a dataset CSV; writes report.json and metrics.csv.
/// Returns kExitNoConvergence when the outer loop hits its iteration cap.
int cmd_identify(const RunConfig& config, const std::string& data_path,
                 const std::string& out_dir, std::ostream& log = std::cout);

/// Learn the switching surface from a report's converged mode labels; writes
/// surface.json, surface_grid.csv and, when the config defines the true
/// rule, surface_comparison.csv.
int cmd_surface(const RunConfig& config, const std::string& report_path,
                const std::string& data_path, const std::string& out_dir,
                std::ostream& log = std::cout);

/// Summarize the artifacts of a pipeline directory into summary.json and a
/// human-readable table.  Missing artifacts are listed by name (exit 2).
int cmd_report(const std::string& run_dir, std::ostream& log = std::cout);

}  // namespace switchnet
