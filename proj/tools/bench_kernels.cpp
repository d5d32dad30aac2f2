// Timing comparison between the serial reference kernel and the OpenMP one,
// plus a phase breakdown of a representative full solve. The two kernels must
// agree bit for bit; the run aborts if they ever differ.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tfbs/collocation.hpp"
#include "tfbs/history.hpp"
#include "tfbs/l1_caputo.hpp"
#include "tfbs/problems.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point begin) {
    return std::chrono::duration<double>(clock_type::now() - begin).count();
}

tfbs::CoefficientHistory synthetic_history(std::size_t nodes, std::size_t steps,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    tfbs::CoefficientHistory history(nodes);
    history.reserve(steps + 1);
    std::vector<double> row(nodes);
    for (std::size_t n = 0; n <= steps; ++n) {
        for (double& v : row) {
            v = dist(rng);
        }
        history.push(row, dist(rng), dist(rng));
    }
    return history;
}

void bench_history_kernel(std::size_t nodes, std::size_t steps) {
    const tfbs::CoefficientHistory history = synthetic_history(nodes, steps, 1234);
    const tfbs::L1Weights weights = tfbs::l1_weights(0.5, steps, 1.0 / static_cast<double>(steps));
    std::vector<double> serial(nodes), parallel(nodes);

    const int reps = nodes >= 4096 ? 20 : 100;

    auto begin = clock_type::now();
    for (int r = 0; r < reps; ++r) {
        tfbs::history_term_serial(weights, history, steps - 1, serial);
    }
    const double serial_time = seconds_since(begin) / reps;

    begin = clock_type::now();
    for (int r = 0; r < reps; ++r) {
        tfbs::history_term_into(weights, history, steps - 1, parallel);
    }
    const double parallel_time = seconds_since(begin) / reps;

    if (std::memcmp(serial.data(), parallel.data(), nodes * sizeof(double)) != 0) {
        std::fprintf(stderr, "kernel outputs differ at nodes=%zu\n", nodes);
        std::exit(1);
    }

    std::printf("history term  nodes=%6zu steps=%5zu  serial %10.3f us  parallel %10.3f us  speedup %.2fx\n",
                nodes, steps, serial_time * 1e6, parallel_time * 1e6,
                serial_time / parallel_time);
}

void bench_full_solve() {
    const tfbs::ManufacturedProblem problem = tfbs::example_problem(1, 0.5);
    const tfbs::SpatialGrid grid(0.0, 1.0, 500);
    const auto begin = clock_type::now();
    const tfbs::SolveResult result = tfbs::solve(problem.spec, grid, 320, 0.5, 1.5);
    const double total = seconds_since(begin);
    std::printf("full solve    nx=500 nt=320       total %8.1f ms  (setup %.1f, march %.1f, reconstruct %.1f)\n",
                total * 1e3, result.timings.setup.count() * 1e3,
                result.timings.march.count() * 1e3, result.timings.reconstruct.count() * 1e3);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled, parallel kernel falls back to serial\n");
#endif
    for (const std::size_t nodes : {257, 1025, 4097}) {
        for (const std::size_t steps : {256, 1024}) {
            bench_history_kernel(nodes, steps);
        }
    }
    bench_full_solve();
    return 0;
}
