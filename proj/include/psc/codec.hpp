#ifndef PSC_CODEC_HPP
#define PSC_CODEC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psc/gf2.hpp"
#include "psc/matrix.hpp"

namespace psc {

/// Systematic LFSR encoding: c_0..c_{k-1} is the message, then
/// c_{i+k} = sum_j h_j c_{i+j} over GF(2). Every length-n window of the
/// sequence has zero syndrome against build_parity_check(h, n).
std::vector<std::uint8_t> encode(const gf2_poly& h, std::uint32_t n,
                                 std::span<const std::uint8_t> message);

struct weight_distribution {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<std::uint64_t> counts;  // counts[w] = A(w), w in [0, n]

    std::uint64_t a(std::uint32_t w) const { return w < counts.size() ? counts[w] : 0; }
    std::uint64_t total() const;
};

struct enumeration_options {
    std::uint32_t dimension_cap = 26;  // refuse k beyond this many 2^k encodings
    bool parallel = true;
};

/// Exact A(w) for the punctured simplex code (h, n), by encoding all 2^k
/// messages. Dimensions above the cap throw resource_limit_error; raise the
/// cap explicitly to go further.
weight_distribution weight_distribution_exact(const gf2_poly& h, std::uint32_t n,
                                              enumeration_options options = {});

/// Single-threaded reference enumeration; kept independent of the OpenMP
/// path so the two can be checked against each other.
weight_distribution weight_distribution_serial(const gf2_poly& h, std::uint32_t n,
                                               std::uint32_t dimension_cap = 26);

/// Smallest positive weight with A(w) > 0. Throws on the zero code.
std::uint32_t min_distance(const weight_distribution& dist);

/// G_inf = R * d_min, in dB and linear.
double asymptotic_gain_db(rational R, std::uint32_t d_min);
double asymptotic_gain_linear(rational R, std::uint32_t d_min);

struct tub_curve {
    std::uint32_t d_star = 0;
    std::vector<std::pair<double, double>> points;  // (Eb/N0 dB, BER bound)
};

/// Truncated union bound
///   BER(snr) = sum_{w=d_min}^{d*} 1/2 (w/n) A(w) erfc(sqrt(w (k/n) Eb/N0)).
/// Requires d_min <= d_star <= n (d_min constraint waived for the zero code,
/// where the bound is identically zero).
tub_curve tub(const weight_distribution& dist, std::uint32_t d_star,
              std::span<const double> snr_db);

// plot-ready emitters
std::string distribution_to_csv(const weight_distribution& dist);
std::string distribution_to_json(const weight_distribution& dist, const gf2_poly& seed);
std::string tub_to_csv(const tub_curve& curve);

}  // namespace psc

#endif
