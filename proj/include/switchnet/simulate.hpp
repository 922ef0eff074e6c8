#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "switchnet/model.hpp"

namespace switchnet {

/// One integration run: fixed-step RK4 from `initial_state` to `t_end`.
struct TrajectoryConfig {
    Vector initial_state;
    double t_end = 1.0;
    double dt = 0.01;
    int sampling_stride = 1;  ///< keep every k-th step when building datasets

    void validate(Index state_dim) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Index> modes;  ///< active mode at each recorded state
    bool truncated = false;    ///< stopped early by the divergence guard
};

/// One supervision point for identification.
struct Sample {
    Vector x;
    Vector xdot;
    std::optional<Index> true_mode;  ///< absent for imported unlabeled data
};

struct SampleSet {
    Index nodes = 0;
    Index node_dim = 0;
    Index mode_count = 0;
    std::vector<Sample> samples;

    [[nodiscard]] Index state_dim() const { return nodes * node_dim; }
};

enum class VelocityMode {
    Exact,             ///< evaluate the active field at the recorded state
    FiniteDifference,  ///< central difference of neighbouring states
};

struct DatasetOptions {
    VelocityMode velocity = VelocityMode::Exact;
    double noise_std = 0.0;        ///< additive Gaussian noise on xdot
    std::uint64_t seed = 0;        ///< drives the noise stream
    int threads = 0;
};

/// One classic fourth-order Runge-Kutta step of size dt for a frozen field.
[[nodiscard]] Vector rk4_step(const std::function<Vector(const Vector&)>& field, const Vector& x,
                              double dt);

/// Integrate the switched system; the switching rule is re-evaluated at every
/// step boundary.  States whose magnitude exceeds the divergence guard stop
/// the run early with `truncated` set.
[[nodiscard]] Trajectory simulate(const SwitchedNetworkSystem& system,
                                  const TrajectoryConfig& config);

/// Build a labeled dataset by integrating every configuration and keeping
/// each stride-th state.  `stride > 0` overrides the per-trajectory stride.
/// Identical inputs produce identical datasets regardless of thread count.
[[nodiscard]] SampleSet sample_dataset(const SwitchedNetworkSystem& system,
                                       const std::vector<TrajectoryConfig>& configs, int stride,
                                       const DatasetOptions& opts = {});

/// Uniformly random initial states inside the box [lo, hi], seeded.
[[nodiscard]] std::vector<Vector> random_initial_states(const Vector& lo, const Vector& hi,
                                                        Index count, std::uint64_t seed);

}  // namespace switchnet
