// Compares the serial reference replication loop against the OpenMP kernel
// on a stochastic rising workload and checks that both produce identical
// trajectories.

#include <chrono>
#include <cmath>
#include <iostream>

#include "gtb/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

gtb::GtbInstance bench_instance(long T) {
    gtb::GtbInstance inst;
    inst.kind = gtb::Kind::Rising;
    inst.T = T;
    inst.sigma = 0.25;
    inst.graph = gtb::ConnectivityMatrix::from_blocks(6, {{0, 1, 2}, {3, 4, 5}});
    for (int i = 0; i < 6; ++i)
        inst.curves.push_back(gtb::RewardCurve::exponential_rise(0.4 + 0.08 * i, 0.999));
    return inst;
}

} // namespace

int main(int argc, char** argv) {
    long T = 4000;
    int reps = 16;
    if (argc > 1) T = std::atol(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);

    const auto inst = bench_instance(T);
    gtb::AlgoSpec algo{"r_square_ucb", nlohmann::json{{"name", "r_square_ucb"}, {"epsilon", 0.25},
                                                      {"alpha", 3.0}},
                       "r_square_ucb"};
    const auto oracle = gtb::oracle_rising_block(inst);

    auto t0 = Clock::now();
    const auto serial = gtb::run_replications_serial(inst, algo, 0, reps, 7, &oracle);
    const double serial_s = seconds_since(t0);

    t0 = Clock::now();
    const auto parallel = gtb::run_replications(inst, algo, 0, reps, 7, &oracle, true);
    const double parallel_s = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t r = 0; identical && r < serial.size(); ++r)
        identical = serial[r].actions == parallel[r].actions && serial[r].J == parallel[r].J;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "instance: rising k=6, T=" << T << ", sigma=0.25, reps=" << reps << "\n";
    std::cout << "threads:  " << threads << "\n";
    std::cout << "serial:   " << serial_s << " s (" << reps / serial_s << " episodes/s)\n";
    std::cout << "parallel: " << parallel_s << " s (" << reps / parallel_s << " episodes/s)\n";
    std::cout << "speedup:  " << serial_s / parallel_s << "x\n";
    std::cout << "identical results: " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
