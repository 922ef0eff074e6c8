#include "switchnet/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "switchnet/parallel.hpp"

namespace switchnet {

namespace {
/// States beyond this magnitude abort the integration.
constexpr double kDivergenceGuard = 1e9;
}  // namespace

void TrajectoryConfig::validate(Index state_dim) const {
    if (initial_state.size() != state_dim)
        throw std::invalid_argument("TrajectoryConfig: initial state must have dimension " +
                                    std::to_string(state_dim));
    if (!initial_state.allFinite())
        throw std::invalid_argument("TrajectoryConfig: initial state has non-finite entries");
    if (!(dt > 0.0)) throw std::invalid_argument("TrajectoryConfig: dt must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("TrajectoryConfig: t_end must be non-negative");
    if (sampling_stride < 1)
        throw std::invalid_argument("TrajectoryConfig: sampling stride must be >= 1");
}

Vector rk4_step(const std::function<Vector(const Vector&)>& field, const Vector& x, double dt) {
    const Vector k1 = field(x);
    const Vector k2 = field(x + 0.5 * dt * k1);
    const Vector k3 = field(x + 0.5 * dt * k2);
    const Vector k4 = field(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory simulate(const SwitchedNetworkSystem& system, const TrajectoryConfig& config) {
    system.validate();
    config.validate(system.state_dim());

    const long steps = std::lround(config.t_end / config.dt);
    Trajectory traj;
    traj.times.reserve(static_cast<size_t>(steps) + 1);
    traj.states.reserve(static_cast<size_t>(steps) + 1);
    traj.modes.reserve(static_cast<size_t>(steps) + 1);

    Vector x = config.initial_state;
    for (long k = 0; k <= steps; ++k) {
        const Index mode = system.switching_rule(x);
        if (mode < 0 || mode >= system.mode_count())
            throw std::out_of_range("simulate: switching rule returned mode " +
                                    std::to_string(mode) + " for a system with " +
                                    std::to_string(system.mode_count()) + " modes");
        traj.times.push_back(static_cast<double>(k) * config.dt);
        traj.states.push_back(x);
        traj.modes.push_back(mode);
        if (k == steps) break;

        const ModeModel& active = system.modes[static_cast<size_t>(mode)];
        x = rk4_step(
            [&](const Vector& s) { return mode_field(active, system.coupling, system.basis, s); },
            x, config.dt);
        if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
            traj.truncated = true;
            break;
        }
    }
    return traj;
}

SampleSet sample_dataset(const SwitchedNetworkSystem& system,
                         const std::vector<TrajectoryConfig>& configs, int stride,
                         const DatasetOptions& opts) {
    system.validate();
    for (const TrajectoryConfig& cfg : configs) cfg.validate(system.state_dim());
    if (opts.noise_std < 0.0)
        throw std::invalid_argument("sample_dataset: noise level must be non-negative");

    SampleSet set;
    set.nodes = system.nodes;
    set.node_dim = system.node_dim;
    set.mode_count = system.mode_count();

    std::vector<std::vector<Sample>> buckets(configs.size());
    parallel_for(static_cast<long>(configs.size()), opts.threads, [&](long t) {
        const TrajectoryConfig& cfg = configs[static_cast<size_t>(t)];
        const int use_stride = stride > 0 ? stride : cfg.sampling_stride;
        const Trajectory traj = simulate(system, cfg);
        // Independent noise stream per trajectory keeps the dataset identical
        // under any parallel schedule.
        std::mt19937_64 rng(opts.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(t + 1));
        std::normal_distribution<double> gauss(0.0, opts.noise_std);

        std::vector<Sample>& out = buckets[static_cast<size_t>(t)];
        for (size_t k = 0; k < traj.states.size(); k += static_cast<size_t>(use_stride)) {
            Sample s;
            s.x = traj.states[k];
            s.true_mode = traj.modes[k];
            const ModeModel& active = system.modes[static_cast<size_t>(traj.modes[k])];
            if (opts.velocity == VelocityMode::Exact) {
                s.xdot = mode_field(active, system.coupling, system.basis, s.x);
            } else {
                // Central difference where both neighbours exist, one-sided at
                // the ends of the trajectory.
                const double dt = cfg.dt;
                if (k == 0 && traj.states.size() > 1)
                    s.xdot = (traj.states[1] - traj.states[0]) / dt;
                else if (k + 1 >= traj.states.size() && k >= 1)
                    s.xdot = (traj.states[k] - traj.states[k - 1]) / dt;
                else if (traj.states.size() == 1)
                    s.xdot = mode_field(active, system.coupling, system.basis, s.x);
                else
                    s.xdot = (traj.states[k + 1] - traj.states[k - 1]) / (2.0 * dt);
            }
            if (opts.noise_std > 0.0)
                for (Index i = 0; i < s.xdot.size(); ++i) s.xdot(i) += gauss(rng);
            out.push_back(std::move(s));
        }
    });

    for (auto& bucket : buckets)
        for (auto& s : bucket) set.samples.push_back(std::move(s));
    return set;
}

std::vector<Vector> random_initial_states(const Vector& lo, const Vector& hi, Index count,
                                          std::uint64_t seed) {
    if (lo.size() != hi.size())
        throw std::invalid_argument("random_initial_states: box corners must have equal dimension");
    for (Index i = 0; i < lo.size(); ++i)
        if (!(lo(i) <= hi(i)))
            throw std::invalid_argument("random_initial_states: box is empty in coordinate " +
                                        std::to_string(i + 1));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vector> states;
    states.reserve(static_cast<size_t>(count));
    for (Index k = 0; k < count; ++k) {
        Vector x(lo.size());
        for (Index i = 0; i < lo.size(); ++i) x(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
        states.push_back(std::move(x));
    }
    return states;
}

}  // namespace switchnet
