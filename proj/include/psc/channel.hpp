#ifndef PSC_CHANNEL_HPP
#define PSC_CHANNEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psc/codec.hpp"
#include "psc/matrix.hpp"
#include "psc/rng.hpp"

namespace psc {

/// Eb/N0 point with the matching noise variance for unit-energy BPSK:
/// sigma^2 = 1 / (2 R 10^(dB/10)).
struct snr_point {
    double eb_n0_db = 0.0;
    double sigma2 = 0.0;
};

snr_point make_snr_point(double eb_n0_db, rational rate);

/// bit 0 -> +1.0, bit 1 -> -1.0
std::vector<double> modulate_bpsk(std::span<const std::uint8_t> bits);

/// i.i.d. zero-mean Gaussian noise of variance sigma2 on each symbol.
std::vector<double> awgn(std::span<const double> symbols, double sigma2, xoshiro256pp& rng);
void add_awgn(std::span<double> symbols, double sigma2, xoshiro256pp& rng);

/// llr_i = 2 y_i / sigma^2, positive means bit 0.
std::vector<double> channel_llr(std::span<const double> received, double sigma2);

struct stop_rule {
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 10'000'000;
};

struct sim_options {
    std::vector<double> snr_db;
    stop_rule stop;
    std::uint64_t seed = 1;
    bool all_zero = false;           // transmit the all-zero codeword instead of random messages
    bool count_all_positions = false;  // BER over all n positions instead of the k info positions
    unsigned max_iterations = 100;
    bool parallel = true;
};

struct sim_point_record {
    double eb_n0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;  // bit_errors / (frames * counted positions)
    double cer = 0.0;  // frame_errors / frames
};

struct simulation_report {
    std::string code_label;
    code_spec spec;
    std::uint64_t seed = 0;
    unsigned max_iterations = 0;
    bool all_zero = false;
    bool count_all_positions = false;
    std::vector<sim_point_record> points;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Monte Carlo BER/CER of the punctured simplex code (h, n) under BPSK/AWGN
/// and sum-product decoding. Frames are sharded deterministically: results
/// are a pure function of (options.seed, options), independent of thread
/// count.
simulation_report run_monte_carlo(const gf2_poly& h, std::uint32_t n, const sim_options& options);

/// Same harness for an arbitrary parity-check matrix (e.g. a circulant
/// expansion). Transmission is all-zero — the matrix alone carries no
/// systematic encoder — and errors are counted over all n positions.
simulation_report run_monte_carlo(const parity_check_matrix& H, const sim_options& options);

/// Uncoded BPSK reference: hard decisions on k raw bits per frame.
simulation_report run_uncoded(std::uint32_t k, const sim_options& options);

/// 0.5 * erfc(sqrt(10^(dB/10))), the closed-form uncoded BPSK bit error rate.
double uncoded_ber_reference(double eb_n0_db);

}  // namespace psc

#endif
