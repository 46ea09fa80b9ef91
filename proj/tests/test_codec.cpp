#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "psc/codec.hpp"
#include "psc/errors.hpp"
#include "psc/matrix.hpp"
#include "psc/rng.hpp"

using psc::encode;
using psc::gf2_poly;
using psc::rational;
using psc::weight_distribution;

namespace {

std::vector<std::uint8_t> message_bits(std::uint64_t m, std::uint32_t k) {
    std::vector<std::uint8_t> bits(k);
    for (std::uint32_t i = 0; i < k; ++i) bits[i] = (m >> i) & 1;
    return bits;
}

std::uint32_t hamming_weight(const std::vector<std::uint8_t>& bits) {
    return static_cast<std::uint32_t>(std::accumulate(bits.begin(), bits.end(), 0u));
}

bool zero_syndrome(const psc::parity_check_matrix& H, const std::vector<std::uint8_t>& cw) {
    for (std::uint32_t i = 0; i < H.r(); ++i) {
        std::uint8_t parity = 0;
        for (auto c : H.row(i)) parity ^= cw[c];
        if (parity) return false;
    }
    return true;
}

// Independent erfc for the TUB oracle: adaptive Simpson quadrature of the
// Gaussian integral plus the asymptotic continued fraction for large x.
double simpson(double a, double b, int depth, double fa, double fm, double fb) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    auto f = [](double t) { return std::exp(-t * t); };
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-15 * std::abs(left + right))
        return left + right;
    return simpson(a, m, depth - 1, fa, flm, fm) + simpson(m, b, depth - 1, fm, frm, fb);
}

double erfc_quadrature(double x) {
    auto f = [](double t) { return std::exp(-t * t); };
    // integrate e^{-t^2} over [x, x + 12]; the tail beyond is < 1e-60 relative
    const double a = x, b = x + 12.0;
    const double integral = simpson(a, b, 48, f(a), f(0.5 * (a + b)), f(b));
    return 2.0 / std::sqrt(std::acos(-1.0)) * integral;
}

}  // namespace

TEST_CASE("systematic LFSR encoding") {
    const auto h = gf2_poly::parse("1101");
    CHECK(encode(h, 7, message_bits(0, 3)) == std::vector<std::uint8_t>(7, 0));

    // full-length simplex: every nonzero message gives weight 2^{k-1} = 4
    for (std::uint64_t m = 1; m < 8; ++m) CHECK(hamming_weight(encode(h, 7, message_bits(m, 3))) == 4);

    const auto bad = message_bits(0, 4);
    CHECK_THROWS_AS(encode(h, 7, bad), std::invalid_argument);
}

TEST_CASE("exactly seven messages of the [14,7] code give weight-3 codewords") {
    const auto h = gf2_poly::parse("10010001");
    std::uint32_t count = 0;
    for (std::uint64_t m = 0; m < 128; ++m)
        if (hamming_weight(encode(h, 14, message_bits(m, 7))) == 3) ++count;
    CHECK(count == 7);
}

TEST_CASE("encoder output always has zero syndrome") {
    psc::xoshiro256pp rng(41);
    const std::vector<const char*> seeds = {"1101", "11001", "101001", "10010001",
                                            "10001000000001011"};
    for (int trial = 0; trial < 1000; ++trial) {
        const auto h = gf2_poly::parse(seeds[rng.next() % seeds.size()]);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        const std::uint32_t n_max = std::min<std::uint32_t>((1u << std::min(k, 20u)) - 1, 5 * k);
        const std::uint32_t n = k + 1 + static_cast<std::uint32_t>(rng.next() % (n_max - k));
        std::vector<std::uint8_t> msg(k);
        for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next() & 1);
        const auto cw = encode(h, n, msg);
        CHECK(std::equal(msg.begin(), msg.end(), cw.begin()));
        CHECK(zero_syndrome(psc::build_parity_check(h, n), cw));
    }
}

TEST_CASE("weight distributions of the rate-adaptive [_,7] family") {
    const auto h = gf2_poly::parse("10010001");
    const auto d14 = psc::weight_distribution_exact(h, 14);
    CHECK(d14.a(0) == 1);
    CHECK(d14.a(3) == 7);
    CHECK(d14.a(4) == 7);
    CHECK(d14.a(5) == 7);
    CHECK(d14.a(6) == 21);
    CHECK(d14.total() == 128);

    const auto d21 = psc::weight_distribution_exact(h, 21);
    CHECK(d21.a(5) == 1);
    CHECK(d21.a(6) == 11);
    CHECK(d21.a(7) == 3);
    CHECK(d21.a(8) == 4);

    const auto d28 = psc::weight_distribution_exact(h, 28);
    CHECK(d28.a(9) == 7);
    CHECK(d28.a(10) == 7);
    CHECK(d28.a(11) == 6);
    CHECK(d28.a(12) == 7);
}

TEST_CASE("weight distributions of the [_,16] family") {
    const auto h = gf2_poly::parse("10001000000001011");
    const auto d64 = psc::weight_distribution_exact(h, 64);
    CHECK(d64.a(16) == 3);
    CHECK(d64.a(17) == 11);
    CHECK(d64.a(18) == 17);
    CHECK(d64.total() == 65536);
    CHECK(psc::min_distance(d64) == 16);
}

TEST_CASE("the [6,3] code distribution") {
    const auto d = psc::weight_distribution_exact(gf2_poly::parse("1101"), 6);
    CHECK(d.a(0) == 1);
    CHECK(d.a(3) == 4);
    CHECK(d.a(4) == 3);
    CHECK(d.total() == 8);
}

TEST_CASE("parallel enumeration equals the serial reference") {
    for (const auto& [seed, n] : std::vector<std::pair<const char*, std::uint32_t>>{
             {"10010001", 14}, {"10010001", 21}, {"10001000000001011", 32}}) {
        const auto h = gf2_poly::parse(seed);
        const auto par = psc::weight_distribution_exact(h, n, {26, true});
        const auto ser = psc::weight_distribution_serial(h, n);
        CHECK(par.counts == ser.counts);
        const auto seq = psc::weight_distribution_exact(h, n, {26, false});
        CHECK(par.counts == seq.counts);
    }
}

TEST_CASE("enumeration refuses dimensions over the cap") {
    const std::vector<std::uint32_t> sup = {0, 1, 28};
    const auto h = gf2_poly::from_support(sup);
    CHECK_THROWS_AS(psc::weight_distribution_exact(h, 56), psc::resource_limit_error);
    CHECK_NOTHROW(psc::weight_distribution_exact(h, 32, {28, true}));  // cap raised
}

TEST_CASE("full-length simplex distributions") {
    for (const char* s : {"1101", "11001", "101001"}) {
        const auto h = gf2_poly::parse(s);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        const auto d = psc::weight_distribution_exact(h, (1u << k) - 1);
        CHECK(d.a(1u << (k - 1)) == (1u << k) - 1);
        CHECK(d.total() == (1u << k));
    }
}

TEST_CASE("rate-1/2 codes from weight-3 primitive seeds: d_min 3 and A(3) = k") {
    for (std::uint32_t k = 4; k <= 11; ++k) {
        for (std::uint32_t m = 1; m < k; ++m) {
            const std::vector<std::uint32_t> sup = {0, m, k};
            const auto h = gf2_poly::from_support(sup);
            if (!psc::is_primitive(h)) continue;
            const auto d = psc::weight_distribution_exact(h, 2 * k);
            CAPTURE(k);
            CAPTURE(m);
            CHECK(psc::min_distance(d) == 3);
            CHECK(d.a(3) == k);
        }
    }
}

TEST_CASE("weight-3 seeds share the distribution up to A(5) at rate 1/2") {
    for (std::uint32_t k : {5u, 6u, 7u}) {
        std::vector<std::array<std::uint64_t, 6>> seen;
        for (std::uint32_t m = 1; m < k; ++m) {
            const std::vector<std::uint32_t> sup = {0, m, k};
            const auto h = gf2_poly::from_support(sup);
            if (!psc::is_primitive(h)) continue;
            const auto d = psc::weight_distribution_exact(h, 2 * k);
            seen.push_back({d.a(0), d.a(1), d.a(2), d.a(3), d.a(4), d.a(5)});
        }
        REQUIRE(seen.size() >= 2);
        for (const auto& dist : seen) CHECK(dist == seen.front());
    }
}

TEST_CASE("minimum distance") {
    CHECK(psc::min_distance(psc::weight_distribution_exact(gf2_poly::parse("10001000000001011"), 32)) == 5);
    CHECK(psc::min_distance(psc::weight_distribution_exact(gf2_poly::parse("10010001"), 28)) == 9);
    CHECK(psc::min_distance(psc::weight_distribution_exact(gf2_poly::parse("1101"), 7)) == 4);
    weight_distribution zero;
    zero.n = 4;
    zero.k = 0;
    zero.counts.assign(5, 0);
    zero.counts[0] = 1;
    CHECK_THROWS_AS(psc::min_distance(zero), std::invalid_argument);
}

TEST_CASE("minimum distance grows as the rate drops") {
    const auto h7 = gf2_poly::parse("10010001");
    const auto d_of = [](const gf2_poly& h, std::uint32_t n) {
        return psc::min_distance(psc::weight_distribution_exact(h, n));
    };
    CHECK(d_of(h7, 21) > d_of(h7, 14));
    CHECK(d_of(h7, 28) > d_of(h7, 21));
    const auto h16 = gf2_poly::parse("10001000000001011");
    CHECK(d_of(h16, 48) > d_of(h16, 32));
    CHECK(d_of(h16, 64) > d_of(h16, 48));
}

TEST_CASE("asymptotic coding gain") {
    CHECK(psc::asymptotic_gain_db(rational(1, 2), 3) == doctest::Approx(1.8).epsilon(0.03));
    CHECK(psc::asymptotic_gain_db(rational(1, 3), 10) == doctest::Approx(5.2).epsilon(0.01));
    CHECK(psc::asymptotic_gain_db(rational(1, 1), 1) == doctest::Approx(0.0));
    CHECK(psc::asymptotic_gain_linear(rational(1, 2), 3) == doctest::Approx(1.5));
    CHECK_THROWS_AS(psc::asymptotic_gain_db(rational(0, 1), 3), std::invalid_argument);
}

TEST_CASE("truncated union bound") {
    const auto h = gf2_poly::parse("10001000000001011");
    const auto dist = psc::weight_distribution_exact(h, 32);
    const std::vector<double> snrs = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto curve = psc::tub(dist, 7, snrs);
    REQUIRE(curve.points.size() == snrs.size());
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        CHECK(std::isfinite(curve.points[i].second));
        CHECK(curve.points[i].second > 0.0);
        if (i > 0) CHECK(curve.points[i].second < curve.points[i - 1].second);
    }

    CHECK_THROWS_AS(psc::tub(dist, 4, snrs), std::invalid_argument);   // below d_min = 5
    CHECK_THROWS_AS(psc::tub(dist, 33, snrs), std::invalid_argument);  // above n
}

TEST_CASE("TUB values agree with an independent quadrature oracle") {
    // sanity of the oracle itself
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0, 4.5}) {
        CHECK(erfc_quadrature(x) == doctest::Approx(std::erfc(x)).epsilon(1e-12));
    }

    const auto d633 = psc::weight_distribution_exact(gf2_poly::parse("1101"), 6);
    const std::vector<double> at4 = {4.0};
    const auto curve = psc::tub(d633, 4, at4);
    // oracle recomputation of the bound with quadrature erfc
    double expected = 0.0;
    const double ebn0 = std::pow(10.0, 0.4);
    for (std::uint32_t w : {3u, 4u}) {
        expected += 0.5 * (w / 6.0) * static_cast<double>(d633.a(w)) *
                    erfc_quadrature(std::sqrt(w * 0.5 * ebn0));
    }
    CHECK(curve.points[0].second == doctest::Approx(expected).epsilon(1e-10));
    // frozen from the oracle
    CHECK(curve.points[0].second == doctest::Approx(0.007574470247441129).epsilon(1e-12));
}

TEST_CASE("TUB of a zero code is identically zero") {
    weight_distribution zero;
    zero.n = 6;
    zero.k = 0;
    zero.counts.assign(7, 0);
    zero.counts[0] = 1;
    const std::vector<double> snrs = {0, 5, 10};
    const auto curve = psc::tub(zero, 4, snrs);
    for (const auto& [db, ber] : curve.points) CHECK(ber == 0.0);
}

TEST_CASE("CSV and JSON emitters") {
    const auto h = gf2_poly::parse("1101");
    const auto dist = psc::weight_distribution_exact(h, 6);
    const auto csv = psc::distribution_to_csv(dist);
    CHECK(csv == "w,A_w\n0,1\n3,4\n4,3\n");
    const auto json_text = psc::distribution_to_json(dist, h);
    CHECK(json_text.find("\"3\": 4") != std::string::npos);
    CHECK(json_text.find("\"d_min\": 3") != std::string::npos);

    const std::vector<double> snrs = {0.0, 1.0};
    const auto tub_csv = psc::tub_to_csv(psc::tub(dist, 4, snrs));
    CHECK(tub_csv.rfind("EbN0_dB,BER_TUB\n", 0) == 0);
    CHECK(std::count(tub_csv.begin(), tub_csv.end(), '\n') == 3);
}
