// Timing harness for the parallel kernels.
//
// Every parallel entry point (batched mode searches, dataset sampling, grid
// evaluation) is run once single-threaded and once with the resolved worker
// count, the wall times are compared and the outputs are checked for exact
// equality: the parallel paths are required to be bit-for-bit identical to
// the serial reference, so any speedup is free of result drift.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "switchnet/model.hpp"
#include "switchnet/moment.hpp"
#include "switchnet/parallel.hpp"
#include "switchnet/simulate.hpp"
#include "switchnet/surface.hpp"

using namespace switchnet;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void print_row(const char* kernel, long items, double serial_ms, double parallel_ms,
               bool identical) {
    std::printf("%-22s %8ld %12.1f %12.1f %9.2fx %10s\n", kernel, items, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "yes" : "NO");
}

void bench_mode_blocks(int threads) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Matrix> batch;
    for (int i = 0; i < 240; ++i) {
        Matrix r(6, 3);
        for (Index k = 0; k < r.rows(); ++k)
            for (Index j = 0; j < r.cols(); ++j) r(k, j) = gauss(rng);
        batch.push_back(r);
    }
    std::vector<ModeBlockResult> serial, parallel;
    const double serial_ms = time_ms([&] { serial = solve_mode_blocks(batch, {}, 1); });
    const double parallel_ms = time_ms([&] { parallel = solve_mode_blocks(batch, {}, threads); });
    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = (serial[i].block.lambda.array() == parallel[i].block.lambda.array()).all() &&
                    serial[i].iterations == parallel[i].iterations;
    print_row("mode-block batch", static_cast<long>(batch.size()), serial_ms, parallel_ms,
              identical);
}

void bench_sampling(int threads) {
    SwitchedNetworkSystem sys;
    sys.nodes = 3;
    sys.node_dim = 1;
    sys.coupling.alpha = 1.0;
    sys.coupling.beta = -1.0;
    sys.coupling.channel = Matrix::Constant(1, 1, -1.0);
    sys.basis = PolynomialBasis(1, 2, BasisKind::UnivariatePowers);
    Matrix coeffs(1, 3);
    coeffs << 0.0, -0.1, 0.01;
    Matrix k3(3, 3);
    k3 << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    sys.modes = {{coeffs, AdjacencyMatrix{k3}},
                 {coeffs, AdjacencyMatrix::from_edges(3, {{0, 1}, {1, 2}, {2, 0}})}};
    sys.switching_rule = [](const Vector& x) {
        return x.squaredNorm() <= 9.0 ? Index{0} : Index{1};
    };

    const std::vector<Vector> starts = random_initial_states(
        Vector::Constant(3, -5.0), Vector::Constant(3, 5.0), 60, 42);
    std::vector<TrajectoryConfig> configs;
    for (const Vector& x0 : starts) {
        TrajectoryConfig c;
        c.initial_state = x0;
        c.dt = 0.001;
        c.t_end = 2.0;
        configs.push_back(c);
    }
    DatasetOptions serial_opts;
    serial_opts.threads = 1;
    serial_opts.noise_std = 0.01;
    DatasetOptions parallel_opts = serial_opts;
    parallel_opts.threads = threads;

    SampleSet serial, parallel;
    const double serial_ms =
        time_ms([&] { serial = sample_dataset(sys, configs, 10, serial_opts); });
    const double parallel_ms =
        time_ms([&] { parallel = sample_dataset(sys, configs, 10, parallel_opts); });
    bool identical = serial.samples.size() == parallel.samples.size();
    for (std::size_t i = 0; identical && i < serial.samples.size(); ++i)
        identical = (serial.samples[i].x.array() == parallel.samples[i].x.array()).all() &&
                    (serial.samples[i].xdot.array() == parallel.samples[i].xdot.array()).all();
    print_row("dataset sampling", static_cast<long>(configs.size()), serial_ms, parallel_ms,
              identical);
}

void bench_grid(int threads) {
    SurfaceModel model;
    model.dimension = 3;
    model.degree = 2;
    model.exponents = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                       {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    model.weights = Vector::Zero(9);
    model.weights << 0.1, -0.2, 0.05, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0;
    model.bias = -9.0;

    const Vector lo = Vector::Constant(3, -5.0);
    const Vector hi = Vector::Constant(3, 5.0);
    SurfaceGrid serial, parallel;
    const double serial_ms = time_ms([&] { serial = export_surface_grid(model, lo, hi, 101, 1); });
    const double parallel_ms =
        time_ms([&] { parallel = export_surface_grid(model, lo, hi, 101, threads); });
    const bool identical = (serial.values.array() == parallel.values.array()).all();
    print_row("surface grid", static_cast<long>(serial.values.size()), serial_ms, parallel_ms,
              identical);
}

}  // namespace

int main() {
    const int threads = resolve_threads(0);
    std::printf("worker count: %d (override with %s)\n\n", threads, kThreadsEnvVar);
    std::printf("%-22s %8s %12s %12s %10s %10s\n", "kernel", "items", "serial ms", "parallel ms",
                "speedup", "identical");
    bench_mode_blocks(threads);
    bench_sampling(threads);
    bench_grid(threads);
    return 0;
}
