// Serial vs OpenMP timing for the two data-parallel kernels: exhaustive
// weight enumeration and the Monte Carlo frame loop. Both pairs must agree
// bit-exactly; the table reports wall times and speedup.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "psc/channel.hpp"
#include "psc/codec.hpp"
#include "psc/gf2.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-36s %10.3f s %10.3f s %7.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run single-threaded\n");
#endif
    std::printf("%-36s %12s %12s %9s\n", "kernel", "serial", "OpenMP", "speedup");

    {
        // x^22 + x + 1 (x^18 + x^7 + 1 in quick mode); rate 1/2, 2^k messages
        const std::vector<std::uint32_t> sup =
            quick ? std::vector<std::uint32_t>{0, 7, 18} : std::vector<std::uint32_t>{0, 1, 22};
        const auto h = psc::gf2_poly::from_support(sup);
        const std::uint32_t n = 2 * static_cast<std::uint32_t>(h.degree());
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = psc::weight_distribution_exact(h, n, {26, false});
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = psc::weight_distribution_exact(h, n, {26, true});
        const double tp = seconds_since(t0);
        report("weight enumeration (rate 1/2)", ts, tp, serial.counts == parallel.counts);
    }

    {
        psc::sim_options opts;
        opts.snr_db = {4.0};
        opts.stop = {1'000'000'000, quick ? 20'000ull : 200'000ull};
        opts.seed = 42;
        const auto h = psc::gf2_poly::parse("10001000000001011");

        opts.parallel = false;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = psc::run_monte_carlo(h, 32, opts);
        const double ts = seconds_since(t0);

        opts.parallel = true;
        t0 = std::chrono::steady_clock::now();
        const auto parallel = psc::run_monte_carlo(h, 32, opts);
        const double tp = seconds_since(t0);
        report("Monte Carlo [32,16] @ 4 dB", ts, tp, serial.to_csv() == parallel.to_csv());
    }
    return 0;
}
