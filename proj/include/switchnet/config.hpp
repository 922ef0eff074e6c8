#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "switchnet/identify.hpp"
#include "switchnet/model.hpp"
#include "switchnet/simulate.hpp"

namespace switchnet {

/// Configuration or usage problem; maps to exit code 1 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Built-in switching-rule family.
struct SwitchingRuleSpec {
    enum class Kind { Ball, HalfSpace };
    Kind kind = Kind::Ball;
    double radius = 1.0;   ///< ball: ||x||^2 <= radius^2 selects inside_mode
    Vector normal;         ///< half-space: normal' x <= offset selects inside_mode
    double offset = 0.0;
    Index inside_mode = 0;   ///< 0-based
    Index outside_mode = 1;  ///< 0-based

    void validate(Index state_dim, Index mode_count) const;
    [[nodiscard]] Index evaluate(const Vector& x) const;
    /// Signed decision value, negative inside: ||x||^2 - r^2 or normal' x - offset.
    [[nodiscard]] double decision_value(const Vector& x) const;
};

/// Ground-truth system description.
struct SystemSpec {
    Index nodes = 0;
    Index node_dim = 1;
    Index mode_count = 2;
    double alpha = 1.0;
    double beta = -1.0;
    Matrix channel;                    ///< defaults to the identity when empty
    std::vector<Matrix> adjacencies;   ///< one binary matrix per mode
    std::vector<Matrix> coeffs;        ///< one matrix per mode, or a single shared one
    Index basis_degree = 2;
    BasisKind basis_kind = BasisKind::UnivariatePowers;
    SwitchingRuleSpec rule;

    [[nodiscard]] SwitchedNetworkSystem build() const;
    [[nodiscard]] GroundTruth ground_truth() const;
    [[nodiscard]] bool has_dynamics() const { return !adjacencies.empty() && !coeffs.empty(); }
};

struct SimulationSpec {
    Vector box_lo;  ///< initial-state box, dimension N n
    Vector box_hi;
    Index trajectory_count = 10;
    double dt = 0.01;
    double t_end = 1.0;
    int stride = 1;
    std::uint64_t seed = 0;
    double noise_std = 0.0;
    VelocityMode velocity = VelocityMode::Exact;

    void validate(Index state_dim) const;
};

struct SurfaceSpec {
    Index degree = 2;
    double gamma = 10.0;
    Vector grid_lo;  ///< defaults to the simulation box when empty
    Vector grid_hi;
    Index grid_resolution = 41;
};

struct RunConfig {
    SystemSpec system;
    SimulationSpec simulation;
    IdentificationConfig identification;
    SurfaceSpec surface;
    std::string output_dir = "out";
};

/// Parse a configuration file.  Files whose first non-blank byte is '{' (or
/// with a .json extension) use the JSON schema; everything else is parsed as
/// sectioned key = value text.  Errors name the offending key and line.
[[nodiscard]] RunConfig parse_run_config(const std::string& path);

/// Parse from memory; `origin` labels error messages.
[[nodiscard]] RunConfig parse_run_config_text(const std::string& content,
                                              const std::string& origin);

/// Canonical key = value rendering; parsing it back reproduces the config.
[[nodiscard]] std::string serialize_run_config(const RunConfig& config);

}  // namespace switchnet
