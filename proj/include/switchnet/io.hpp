#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "switchnet/identify.hpp"
#include "switchnet/simulate.hpp"
#include "switchnet/surface.hpp"

namespace switchnet {

/// Malformed or missing data artifact; maps to exit code 2 in the CLI.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dataset CSV: header x_1..x_K, xdot_1..xdot_K, true_mode with one sample
/// per row; floating-point cells carry 17 significant digits, mode labels are
/// 1-based and the cell is empty for unlabeled samples.
void write_dataset_csv(const SampleSet& samples, const std::string& path);

/// Inverse of write_dataset_csv.  The node geometry is supplied by the
/// caller; errors name the offending row.
[[nodiscard]] SampleSet read_dataset_csv(const std::string& path, Index nodes, Index node_dim,
                                         Index mode_count);

/// Trajectory CSV: trajectory, time, x_1..x_K, mode (one row per step).
void write_trajectories_csv(const std::vector<Trajectory>& trajectories, const std::string& path);

/// Per-iteration metrics CSV with columns
/// iteration, objective, mode_error, adjacency_error, coeff_error.
void write_metrics_csv(const std::vector<IterationMetrics>& trace, const std::string& path);

[[nodiscard]] nlohmann::json report_to_json(const IdentificationReport& report);
[[nodiscard]] IdentificationReport report_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json surface_to_json(const SurfaceModel& model);
[[nodiscard]] SurfaceModel surface_from_json(const nlohmann::json& j);

/// Grid CSV: x_1..x_D, value.
void write_surface_grid_csv(const SurfaceGrid& grid, const std::string& path);

/// Comparison CSV: x_1..x_D, identified, truth, sign_match.
void write_surface_comparison_csv(const SurfaceGrid& grid, const Vector& truth_values,
                                  const std::string& path);

void write_json_file(const nlohmann::json& j, const std::string& path);
[[nodiscard]] nlohmann::json read_json_file(const std::string& path);

/// 17-significant-digit rendering used by every CSV writer.
[[nodiscard]] std::string format_cell(double value);

}  // namespace switchnet
