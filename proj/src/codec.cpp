#include "psc/codec.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "psc/errors.hpp"

namespace psc {

std::vector<std::uint8_t> encode(const gf2_poly& h, std::uint32_t n,
                                 std::span<const std::uint8_t> message) {
    const int deg = h.degree();
    if (deg < 1) throw std::invalid_argument("encode: seed degree must be >= 1");
    const std::uint32_t k = static_cast<std::uint32_t>(deg);
    if (n < k) throw std::invalid_argument("encode: n must be >= k");
    if (message.size() != k) throw std::invalid_argument("encode: message length must equal k");

    std::vector<std::uint8_t> c(n);
    for (std::uint32_t i = 0; i < k; ++i) c[i] = message[i] & 1;
    const auto sup = support(h);  // last entry is k itself
    for (std::uint32_t i = 0; i + k < n; ++i) {
        std::uint8_t b = 0;
        for (std::size_t t = 0; t + 1 < sup.size(); ++t) b ^= c[i + sup[t]];
        c[i + k] = b;
    }
    return c;
}

std::uint64_t weight_distribution::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

// Accumulates codeword weights for messages in [first, last). The sliding
// window holds the k most recent sequence bits; taps is h_0..h_{k-1}.
void enumerate_messages(std::uint32_t taps, std::uint32_t k, std::uint32_t n,
                        std::uint64_t first, std::uint64_t last, std::uint64_t* counts) {
    const std::uint32_t steps = n - k;
    for (std::uint64_t msg = first; msg < last; ++msg) {
        std::uint32_t window = static_cast<std::uint32_t>(msg);
        std::uint32_t weight = static_cast<std::uint32_t>(std::popcount(window));
        for (std::uint32_t i = 0; i < steps; ++i) {
            const std::uint32_t b = std::popcount(window & taps) & 1u;
            weight += b;
            window = (window >> 1) | (b << (k - 1));
        }
        ++counts[weight];
    }
}

void check_enumeration_args(const gf2_poly& h, std::uint32_t n, std::uint32_t cap) {
    const int deg = h.degree();
    if (deg < 1) throw std::invalid_argument("weight_distribution: seed degree must be >= 1");
    const std::uint32_t k = static_cast<std::uint32_t>(deg);
    if (k > cap)
        throw resource_limit_error("weight_distribution: k = " + std::to_string(k) +
                                   " exceeds the enumeration cap " + std::to_string(cap) +
                                   "; raise dimension_cap to override");
    if (k > 30)
        throw resource_limit_error("weight_distribution: enumeration kernel supports k <= 30");
    if (n < k) throw std::invalid_argument("weight_distribution: n must be >= k");
    if (k < 32 && n > (1u << k) - 1)
        throw std::invalid_argument("weight_distribution: n exceeds the cyclic length N");
}

}  // namespace

weight_distribution weight_distribution_exact(const gf2_poly& h, std::uint32_t n,
                                              enumeration_options options) {
    check_enumeration_args(h, n, options.dimension_cap);
    const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
    std::uint32_t taps = 0;
    for (std::uint32_t j = 0; j < k; ++j)
        if (h.coeff(j)) taps |= 1u << j;

    weight_distribution dist;
    dist.n = n;
    dist.k = k;
    dist.counts.assign(n + 1, 0);
    const std::uint64_t total = 1ULL << k;

    if (!options.parallel || total < (1ULL << 14)) {
        enumerate_messages(taps, k, n, 0, total, dist.counts.data());
        return dist;
    }

    const std::uint64_t chunks = 256;
    const std::uint64_t chunk = total / chunks;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(n + 1, 0);
#pragma omp for schedule(static) nowait
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
            const std::uint64_t first = static_cast<std::uint64_t>(c) * chunk;
            const std::uint64_t last = (c + 1 == static_cast<std::int64_t>(chunks)) ? total : first + chunk;
            enumerate_messages(taps, k, n, first, last, local.data());
        }
#pragma omp critical
        for (std::uint32_t w = 0; w <= n; ++w) dist.counts[w] += local[w];
    }
    return dist;
}

weight_distribution weight_distribution_serial(const gf2_poly& h, std::uint32_t n,
                                               std::uint32_t dimension_cap) {
    check_enumeration_args(h, n, dimension_cap);
    const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
    weight_distribution dist;
    dist.n = n;
    dist.k = k;
    dist.counts.assign(n + 1, 0);
    // deliberately goes through the generic encoder, not the bit-packed kernel
    std::vector<std::uint8_t> msg(k);
    for (std::uint64_t m = 0; m < (1ULL << k); ++m) {
        for (std::uint32_t i = 0; i < k; ++i) msg[i] = (m >> i) & 1;
        const auto cw = encode(h, n, msg);
        const auto w = static_cast<std::uint32_t>(std::accumulate(cw.begin(), cw.end(), 0u));
        ++dist.counts[w];
    }
    return dist;
}

std::uint32_t min_distance(const weight_distribution& dist) {
    for (std::uint32_t w = 1; w < dist.counts.size(); ++w)
        if (dist.counts[w] > 0) return w;
    throw std::invalid_argument("min_distance: zero code has no nonzero codeword");
}

double asymptotic_gain_linear(rational R, std::uint32_t d_min) {
    if (R.num <= 0 || R.num > R.den)
        throw std::invalid_argument("asymptotic_gain: R must be in (0, 1]");
    return R.to_double() * static_cast<double>(d_min);
}

double asymptotic_gain_db(rational R, std::uint32_t d_min) {
    return 10.0 * std::log10(asymptotic_gain_linear(R, d_min));
}

tub_curve tub(const weight_distribution& dist, std::uint32_t d_star,
              std::span<const double> snr_db) {
    if (d_star > dist.n) throw std::invalid_argument("tub: d_star exceeds the code length");
    bool nonzero = false;
    for (std::uint32_t w = 1; w < dist.counts.size(); ++w) {
        if (dist.counts[w] > 0) {
            if (d_star < w) throw std::invalid_argument("tub: d_star below the minimum distance");
            nonzero = true;
            break;
        }
    }
    tub_curve curve;
    curve.d_star = d_star;
    curve.points.reserve(snr_db.size());
    const double rate = static_cast<double>(dist.k) / static_cast<double>(dist.n);
    for (double db : snr_db) {
        const double ebn0 = std::pow(10.0, db / 10.0);
        double bound = 0.0;
        if (nonzero) {
            for (std::uint32_t w = 1; w <= d_star; ++w) {
                if (dist.counts[w] == 0) continue;
                bound += 0.5 * (static_cast<double>(w) / dist.n) * static_cast<double>(dist.counts[w]) *
                         std::erfc(std::sqrt(static_cast<double>(w) * rate * ebn0));
            }
        }
        curve.points.emplace_back(db, bound);
    }
    return curve;
}

std::string distribution_to_csv(const weight_distribution& dist) {
    std::ostringstream out;
    out << "w,A_w\n";
    for (std::uint32_t w = 0; w < dist.counts.size(); ++w)
        if (dist.counts[w] > 0) out << w << ',' << dist.counts[w] << '\n';
    return out.str();
}

std::string distribution_to_json(const weight_distribution& dist, const gf2_poly& seed) {
    nlohmann::json j;
    j["code"] = {{"n", dist.n},
                 {"k", dist.k},
                 {"rate", rational(dist.k, dist.n).str()},
                 {"polynomial", seed.to_binary_string()}};
    nlohmann::json counts = nlohmann::json::object();
    std::uint32_t dmin = 0;
    for (std::uint32_t w = 0; w < dist.counts.size(); ++w) {
        if (dist.counts[w] > 0) {
            counts[std::to_string(w)] = dist.counts[w];
            if (dmin == 0 && w > 0) dmin = w;
        }
    }
    j["A"] = counts;
    if (dmin > 0) {
        j["d_min"] = dmin;
        j["G_inf_dB"] = asymptotic_gain_db(rational(dist.k, dist.n), dmin);
        j["G_inf_linear"] = asymptotic_gain_linear(rational(dist.k, dist.n), dmin);
    }
    return j.dump(2);
}

std::string tub_to_csv(const tub_curve& curve) {
    std::ostringstream out;
    out << "EbN0_dB,BER_TUB\n";
    out.precision(12);
    for (const auto& [db, ber] : curve.points) out << db << ',' << ber << '\n';
    return out.str();
}

}  // namespace psc
