// Throughput comparison of the serial and OpenMP Monte Carlo paths.
// Both paths must agree bit-for-bit; the benchmark asserts that too.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "bm/mc.hpp"

using namespace bm;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_case(const char* name, const MomentIndex& idx, std::uint64_t samples,
                std::uint64_t seed) {
    auto t0 = Clock::now();
    McEstimate serial = mc_four(idx, samples, seed, McMode::serial);
    double ts = seconds_since(t0);

    t0 = Clock::now();
    McEstimate parallel = mc_four(idx, samples, seed, McMode::parallel);
    double tp = seconds_since(t0);

    bool identical = serial.mean == parallel.mean && serial.std_error == parallel.std_error;
    std::printf("%-24s samples=%llu  serial %.3fs (%.1f Ms/s)  openmp %.3fs (%.1f Ms/s)  "
                "speedup %.2fx  bit-identical=%s\n",
                name, static_cast<unsigned long long>(samples), ts, samples / ts / 1e6, tp,
                samples / tp / 1e6, ts / tp, identical ? "yes" : "NO");
    if (!identical) std::exit(1);
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
    bench_case("I_1100", MomentIndex(1, 1, 0, 0), samples, 7);
    bench_case("I_0000", MomentIndex(0, 0, 0, 0), samples, 7);
    bench_case("I^2_1111 s=2", MomentIndex(1, 1, 1, 1, 2, 2), samples, 7);

    auto t0 = Clock::now();
    McEstimate rs = mc_root(4, samples, 7, McMode::serial);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    McEstimate rp = mc_root(4, samples, 7, McMode::parallel);
    double tp = seconds_since(t0);
    bool identical = rs.mean == rp.mean && rs.std_error == rp.std_error;
    std::printf("%-24s samples=%llu  serial %.3fs (%.1f Ms/s)  openmp %.3fs (%.1f Ms/s)  "
                "speedup %.2fx  bit-identical=%s\n",
                "I_4 (8-simplex)", static_cast<unsigned long long>(samples), ts,
                samples / ts / 1e6, tp, samples / tp / 1e6, ts / tp, identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
