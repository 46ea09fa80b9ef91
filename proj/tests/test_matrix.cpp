#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "psc/errors.hpp"
#include "psc/matrix.hpp"
#include "psc/rng.hpp"

using psc::build_parity_check;
using psc::gf2_poly;
using psc::parity_check_matrix;
using psc::rational;

namespace {

const std::vector<const char*> kSmallSeeds = {"1101", "11001", "101001", "1100001", "10010001"};

// weight-3 through weight-5 primitive seeds across a few degrees, for
// randomized matrix properties
gf2_poly random_seed(psc::xoshiro256pp& rng) {
    return gf2_poly::parse(kSmallSeeds[rng.next() % kSmallSeeds.size()]);
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(rational(3, 6) == rational(1, 2));
    CHECK(rational(7, 14).str() == "1/2");
    CHECK(rational(4, 2).str() == "2");
    CHECK(rational(0, 5) == rational(0, 9));
    CHECK(rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK_THROWS_AS(rational(1, 0), std::invalid_argument);
}

TEST_CASE("band construction") {
    const auto H = build_parity_check(gf2_poly::parse("10010001"), 14);
    CHECK(H.n() == 14);
    CHECK(H.r() == 7);
    CHECK(H.row(0) == std::vector<std::uint32_t>{0, 3, 7});
    CHECK(H.row(6) == std::vector<std::uint32_t>{6, 9, 13});

    const auto full = build_parity_check(gf2_poly::parse("1101"), 7);
    CHECK(full.n() == 7);
    CHECK(full.r() == 4);

    const auto tiny = build_parity_check(gf2_poly::parse("1101"), 4);
    CHECK(tiny.r() == 1);
    CHECK(tiny.row(0) == std::vector<std::uint32_t>{0, 1, 3});
}

TEST_CASE("construction argument checks") {
    const auto h = gf2_poly::parse("10010001");
    CHECK_THROWS_AS(build_parity_check(h, 7), std::invalid_argument);    // < k + 1
    CHECK_THROWS_AS(build_parity_check(h, 128), std::invalid_argument);  // > N = 127
    CHECK_THROWS_AS(build_parity_check(gf2_poly::parse("1111"), 6), std::invalid_argument);
    CHECK_NOTHROW(build_parity_check(gf2_poly::parse("1111"), 6, /*unchecked=*/true));
    // degree > 64: primitivity is not decidable, seed accepted as-is
    const std::vector<std::uint32_t> c1 = {0, 8, 25, 105, 115, 116, 121};
    CHECK_NOTHROW(build_parity_check(gf2_poly::from_support(c1), 242));
}

TEST_CASE("direct band construction equals repeated row-column elimination") {
    for (const char* s : {"1101", "11001", "10010001"}) {
        const auto h = gf2_poly::parse(s);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        const std::uint32_t full_n = (1u << k) - 1;
        const auto full = build_parity_check(h, full_n);
        for (std::uint32_t n = k + 1; n < full_n; ++n) {
            // erase the last N - n rows and columns of the full cyclic matrix
            std::vector<std::vector<std::uint32_t>> trimmed;
            for (std::uint32_t i = 0; i < n - k; ++i) {
                std::vector<std::uint32_t> row;
                for (auto c : full.row(i))
                    if (c < n) row.push_back(c);
                trimmed.push_back(std::move(row));
            }
            const auto punctured = build_parity_check(h, n);
            REQUIRE(punctured.r() == trimmed.size());
            for (std::uint32_t i = 0; i < punctured.r(); ++i) CHECK(punctured.row(i) == trimmed[i]);
        }
    }
}

TEST_CASE("column weight profile") {
    const auto p14 = psc::column_profile(build_parity_check(gf2_poly::parse("10010001"), 14));
    CHECK(p14.counts == std::map<std::uint32_t, std::uint32_t>{{1, 7}, {2, 7}});
    CHECK(p14.mean == rational(3, 2));

    const auto p28 = psc::column_profile(build_parity_check(gf2_poly::parse("10010001"), 28));
    CHECK(p28.mean == rational(9, 4));

    const auto p4 = psc::column_profile(build_parity_check(gf2_poly::parse("1101"), 4));
    CHECK(p4.counts == std::map<std::uint32_t, std::uint32_t>{{0, 1}, {1, 3}});
    CHECK(p4.mean == rational(3, 4));
}

TEST_CASE("average column weight formula") {
    CHECK(psc::mean_column_weight_formula(3, rational(1, 2)) == rational(3, 2));
    CHECK(psc::mean_column_weight_formula(5, rational(1, 3)) == rational(10, 3));
    CHECK(psc::mean_column_weight_formula(3, rational(1, 1)) == rational(0, 1));
    CHECK_THROWS_AS(psc::mean_column_weight_formula(3, rational(3, 2)), std::invalid_argument);
}

TEST_CASE("profile mean equals w(1 - R) exactly") {
    psc::xoshiro256pp rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = random_seed(rng);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        const std::uint32_t alpha = 2 + static_cast<std::uint32_t>(rng.next() % 3);
        if (alpha * k > (1u << k) - 1) continue;
        const auto prof = psc::column_profile(build_parity_check(h, alpha * k));
        CHECK(prof.mean == psc::mean_column_weight_formula(
                               static_cast<std::uint32_t>(h.weight()),
                               rational(1, static_cast<std::int64_t>(alpha))));
    }
}

TEST_CASE("rate-1/2 profile of the weight-5 degree-16 seed") {
    // s = [4, 9, 2, 1]: s_0+s_3 = 5 columns of weight 1 and of weight 4,
    // s_1+s_2 = 11 columns of weight 2 and of weight 3
    const auto prof = psc::column_profile(build_parity_check(gf2_poly::parse("10001000000001011"), 32));
    CHECK(prof.counts ==
          std::map<std::uint32_t, std::uint32_t>{{1, 5}, {2, 11}, {3, 11}, {4, 5}});
    CHECK(prof.mean == rational(5, 2));
}

TEST_CASE("four-cycle detection") {
    CHECK_FALSE(psc::has_four_cycle(build_parity_check(gf2_poly::parse("1101"), 6)));
    CHECK_FALSE(psc::has_four_cycle(build_parity_check(gf2_poly::parse("10010001"), 14)));

    const parity_check_matrix all_ones(2, {{0, 1}, {0, 1}});
    const auto w = psc::find_four_cycle(all_ones);
    REQUIRE(w.has_value());
    CHECK(w->row_a != w->row_b);
    CHECK(w->col_a != w->col_b);

    // p = [0,2,3,4,7]: differences collide, so the matrix has a 4-cycle
    const auto bad = build_parity_check(gf2_poly::parse("10111001"), 14);
    const auto witness = psc::find_four_cycle(bad);
    REQUIRE(witness.has_value());
    for (auto row : {witness->row_a, witness->row_b}) {
        const auto& r = bad.row(row);
        CHECK(std::find(r.begin(), r.end(), witness->col_a) != r.end());
        CHECK(std::find(r.begin(), r.end(), witness->col_b) != r.end());
    }
}

TEST_CASE("row-column constraint equals the Golomb predicate and 4-cycle freedom") {
    CHECK(psc::satisfies_rc_constraint(gf2_poly::parse("10001000000001011")));
    CHECK(psc::satisfies_rc_constraint(gf2_poly::parse("1101")));
    CHECK_FALSE(psc::satisfies_rc_constraint(gf2_poly::parse("10111001")));
    const std::vector<std::uint32_t> c2 = {0, 25, 31, 138, 150, 160, 240};
    CHECK(psc::satisfies_rc_constraint(gf2_poly::from_support(c2)));

    for (const char* s : {"1101", "11001", "101001", "110111", "101111", "10010001", "10111001",
                          "11110001", "100011101"}) {
        const auto h = gf2_poly::parse(s);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        for (std::uint32_t alpha : {2u, 3u}) {
            if (alpha * k > (1u << k) - 1) continue;
            const auto H = build_parity_check(h, alpha * k);
            CAPTURE(s);
            CHECK(psc::satisfies_rc_constraint(h) == !psc::has_four_cycle(H));
        }
    }
}

TEST_CASE("GF(2) rank") {
    CHECK(psc::rank_gf2(build_parity_check(gf2_poly::parse("10010001"), 14)) == 7);
    CHECK(psc::rank_gf2(parity_check_matrix(4, {{0, 1, 3}})) == 1);
    CHECK(psc::rank_gf2(build_parity_check(gf2_poly::parse("10001000000001011"), 48)) == 32);
    // dependent rows
    CHECK(psc::rank_gf2(parity_check_matrix(3, {{0, 1}, {1, 2}, {0, 2}})) == 2);
}

TEST_CASE("punctured simplex matrices always have full rank") {
    psc::xoshiro256pp rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto h = random_seed(rng);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        const std::uint32_t n_max = (1u << k) - 1;
        const std::uint32_t n = k + 1 + static_cast<std::uint32_t>(rng.next() % (n_max - k));
        const auto H = build_parity_check(h, n);
        CHECK(psc::rank_gf2(H) == n - k);
    }
}

TEST_CASE("circulant expansion basics") {
    const parity_check_matrix unit(1, {{0}});
    const auto identity3 = psc::circulant_expand(unit, 3, psc::zero_offset_rule());
    CHECK(identity3.n() == 3);
    CHECK(identity3.r() == 3);
    for (std::uint32_t t = 0; t < 3; ++t) CHECK(identity3.row(t) == std::vector<std::uint32_t>{t});

    // p = 1 keeps the matrix
    const auto base = build_parity_check(gf2_poly::parse("1101"), 6);
    const auto same = psc::circulant_expand(base, 1, psc::paper_c3_rule());
    CHECK(same.rows() == base.rows());
}

TEST_CASE("circulant ordinal convention is 1-based") {
    // single row of seven 1-symbols at p = 7; odd ordinal i puts the first
    // column's 1 at row i, even ordinal at row 2i mod 7; i = 7 wraps to 0
    const parity_check_matrix row7(7, {{0, 1, 2, 3, 4, 5, 6}});
    const auto expanded = psc::circulant_expand(row7, 7, psc::paper_c3_rule());
    const std::vector<std::uint32_t> expected_offsets = {1, 4, 3, 1, 5, 5, 0};
    for (std::uint32_t block = 0; block < 7; ++block) {
        // first column of the block = column 7*block; find the sub-row holding its 1
        const auto& incident = expanded.col(7 * block);
        REQUIRE(incident.size() == 1);
        CHECK(incident[0] == expected_offsets[block]);
    }
}

TEST_CASE("expansion preserves four-cycle freedom and full rank") {
    const auto base = build_parity_check(gf2_poly::parse("1101"), 6);
    REQUIRE_FALSE(psc::has_four_cycle(base));
    for (std::uint32_t p : {3u, 5u}) {
        for (const auto& rule : {psc::paper_c3_rule(), psc::zero_offset_rule()}) {
            const auto big = psc::circulant_expand(base, p, rule);
            CHECK(big.n() == base.n() * p);
            CHECK(big.r() == base.r() * p);
            CHECK_FALSE(psc::has_four_cycle(big));
            CHECK(psc::rank_gf2(big) == base.r() * p);
        }
    }
}

TEST_CASE("expansion with random offsets keeps the row-column constraint") {
    psc::xoshiro256pp rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const auto h = random_seed(rng);
        if (!psc::satisfies_rc_constraint(h)) continue;
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        if (2 * k > (1u << k) - 1) continue;
        const auto base = build_parity_check(h, 2 * k);
        for (std::uint32_t p : {3u, 5u, 7u}) {
            std::uint64_t salt = rng.next();
            auto rule = [salt](std::uint32_t row, std::uint32_t ordinal, std::uint32_t pp) {
                return static_cast<std::uint32_t>(
                    psc::derive_seed(salt, row, ordinal) % pp);
            };
            CHECK_FALSE(psc::has_four_cycle(psc::circulant_expand(base, p, rule)));
        }
    }
}

TEST_CASE("offset rules validate their range") {
    const parity_check_matrix unit(1, {{0}});
    auto broken = [](std::uint32_t, std::uint32_t, std::uint32_t p) { return p; };
    CHECK_THROWS_AS(psc::circulant_expand(unit, 3, broken), std::invalid_argument);
    CHECK_THROWS_AS(psc::named_offset_rule("nope"), std::invalid_argument);
    CHECK_NOTHROW(psc::named_offset_rule("paper-c3"));
    CHECK_NOTHROW(psc::named_offset_rule("zero"));
}

TEST_CASE("alist text format") {
    const parity_check_matrix tiny(2, {{0}});
    CHECK(psc::to_alist(tiny) == "2 1\n1 1\n1 0\n1\n1\n0\n1\n");

    const auto H = build_parity_check(gf2_poly::parse("1101"), 6);
    const auto text = psc::to_alist(H);
    const auto parsed = psc::parse_alist(text);
    CHECK(parsed.n() == 6);
    CHECK(parsed.r() == 3);
    CHECK(parsed.rows() == H.rows());
    // header carries the max weights
    CHECK(text.substr(0, 8) == "6 3\n2 3\n");
}

TEST_CASE("alist round-trips on random punctured simplex matrices") {
    psc::xoshiro256pp rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = random_seed(rng);
        const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
        const std::uint32_t n_max = (1u << k) - 1;
        const std::uint32_t n = k + 1 + static_cast<std::uint32_t>(rng.next() % (n_max - k));
        const auto H = build_parity_check(h, n);
        const auto round = psc::parse_alist(psc::to_alist(H));
        CHECK(round.n() == H.n());
        CHECK(round.rows() == H.rows());
    }
}

TEST_CASE("alist parser rejects malformed input") {
    CHECK_THROWS_AS(psc::parse_alist("2 1\n1 1\n1 0\n1\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(psc::parse_alist("2 1\n1 1\n1 0\n1\n1\n9\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(psc::parse_alist("not numbers"), std::invalid_argument);
    // column list inconsistent with row list
    CHECK_THROWS_AS(psc::parse_alist("2 1\n1 1\n0 1\n1\n1\n0\n1\n"), std::invalid_argument);
}

TEST_CASE("matrix summary JSON") {
    const auto H = build_parity_check(gf2_poly::parse("10010001"), 14);
    const auto j = nlohmann::json::parse(psc::summary_json(H));
    CHECK(j["n"] == 14);
    CHECK(j["r"] == 7);
    CHECK(j["rank"] == 7);
    CHECK(j["four_cycle"] == false);
    CHECK(j["witness"].is_null());
    CHECK(j["profile"]["1"] == 7);
    CHECK(j["profile"]["2"] == 7);
    CHECK(j["mean_column_weight_exact"] == "3/2");
    CHECK(j["seed"] == "10010001");

    const auto bad = nlohmann::json::parse(
        psc::summary_json(build_parity_check(gf2_poly::parse("10111001"), 14)));
    CHECK(bad["four_cycle"] == true);
    CHECK(bad["witness"]["rows"].size() == 2);
}
