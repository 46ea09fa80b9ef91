#include "psc/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "psc/errors.hpp"

namespace psc {

rational::rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

parity_check_matrix::parity_check_matrix(std::uint32_t n, std::vector<std::vector<std::uint32_t>> rows,
                                         matrix_provenance provenance)
    : n_(n), rows_(std::move(rows)), provenance_(std::move(provenance)) {
    cols_.resize(n_);
    for (std::uint32_t i = 0; i < rows_.size(); ++i) {
        auto& row = rows_[i];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw std::invalid_argument("parity_check_matrix: duplicate column index in row");
        if (!row.empty() && row.back() >= n_)
            throw std::invalid_argument("parity_check_matrix: column index out of range");
        for (auto c : row) cols_[c].push_back(i);
        ones_ += row.size();
    }
}

parity_check_matrix build_parity_check(const gf2_poly& h, std::uint32_t n, bool unchecked) {
    const int deg = h.degree();
    if (deg < 1) throw std::invalid_argument("build_parity_check: seed degree must be >= 1");
    const std::uint32_t k = static_cast<std::uint32_t>(deg);
    if (n < k + 1) throw std::invalid_argument("build_parity_check: n must be at least k + 1");
    if (k < 32 && n > (1u << k) - 1)
        throw std::invalid_argument("build_parity_check: n exceeds the cyclic length N = 2^k - 1");
    if (!h.coeff(0)) throw std::invalid_argument("build_parity_check: seed needs h_0 = 1");
    if (!unchecked) {
        try {
            if (!is_primitive(h))
                throw std::invalid_argument(
                    "build_parity_check: seed is not primitive (pass unchecked to force)");
        } catch (const resource_limit_error&) {
            // primitivity not decidable at this degree; accept the seed
        }
    }
    const auto sup = support(h);
    const std::uint32_t r = n - k;
    std::vector<std::vector<std::uint32_t>> rows(r);
    for (std::uint32_t i = 0; i < r; ++i) {
        auto& row = rows[i];
        row.reserve(sup.size());
        for (auto j : sup)
            if (i + j < n) row.push_back(i + j);
    }
    matrix_provenance prov;
    prov.seed = h;
    if (k < 32) prov.puncture = ((1u << k) - 1) - n;
    return parity_check_matrix(n, std::move(rows), std::move(prov));
}

column_weight_profile column_profile(const parity_check_matrix& H) {
    column_weight_profile prof;
    for (std::uint32_t j = 0; j < H.n(); ++j)
        prof.counts[static_cast<std::uint32_t>(H.col(j).size())]++;
    prof.mean = rational(static_cast<std::int64_t>(H.ones()), static_cast<std::int64_t>(H.n()));
    return prof;
}

rational mean_column_weight_formula(std::uint32_t w, rational R) {
    if (w < 1) throw std::invalid_argument("mean_column_weight_formula: w must be >= 1");
    if (R.num <= 0 || R.num > R.den)
        throw std::invalid_argument("mean_column_weight_formula: R must be in (0, 1]");
    return rational(static_cast<std::int64_t>(w) * (R.den - R.num), R.den);
}

std::optional<four_cycle> find_four_cycle(const parity_check_matrix& H) {
    // Two rows sharing two columns form the cycle. Scan columns and remember
    // the first column where each row pair met.
    std::unordered_map<std::uint64_t, std::uint32_t> first_col;
    first_col.reserve(H.ones() * 2);
    for (std::uint32_t j = 0; j < H.n(); ++j) {
        const auto& rows = H.col(j);
        for (std::size_t a = 0; a < rows.size(); ++a) {
            for (std::size_t b = a + 1; b < rows.size(); ++b) {
                const std::uint64_t key = (static_cast<std::uint64_t>(rows[a]) << 32) | rows[b];
                auto [it, inserted] = first_col.try_emplace(key, j);
                if (!inserted) return four_cycle{rows[a], rows[b], it->second, j};
            }
        }
    }
    return std::nullopt;
}

bool satisfies_rc_constraint(const gf2_poly& h) {
    return is_golomb_ruler(support(h));
}

std::uint32_t rank_gf2(const parity_check_matrix& H) {
    const std::uint32_t words = (H.n() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> mat(H.r(), std::vector<std::uint64_t>(words, 0));
    for (std::uint32_t i = 0; i < H.r(); ++i)
        for (auto c : H.row(i)) mat[i][c / 64] |= 1ULL << (c % 64);

    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < H.n() && rank < H.r(); ++col) {
        const std::uint32_t w = col / 64;
        const std::uint64_t mask = 1ULL << (col % 64);
        std::uint32_t pivot = rank;
        while (pivot < H.r() && !(mat[pivot][w] & mask)) ++pivot;
        if (pivot == H.r()) continue;
        std::swap(mat[rank], mat[pivot]);
        for (std::uint32_t i = pivot + 1; i < H.r(); ++i) {
            if (mat[i][w] & mask)
                for (std::uint32_t t = w; t < words; ++t) mat[i][t] ^= mat[rank][t];
        }
        ++rank;
    }
    return rank;
}

offset_rule paper_c3_rule() {
    return [](std::uint32_t, std::uint32_t ordinal, std::uint32_t p) {
        return (ordinal % 2 == 1) ? ordinal % p : (2 * ordinal) % p;
    };
}

offset_rule zero_offset_rule() {
    return [](std::uint32_t, std::uint32_t, std::uint32_t) { return 0u; };
}

offset_rule named_offset_rule(std::string_view name) {
    if (name == "paper-c3") return paper_c3_rule();
    if (name == "zero") return zero_offset_rule();
    throw std::invalid_argument("named_offset_rule: unknown rule '" + std::string(name) + "'");
}

parity_check_matrix circulant_expand(const parity_check_matrix& H, std::uint32_t p,
                                     const offset_rule& rule, std::string rule_name) {
    if (p < 1) throw std::invalid_argument("circulant_expand: p must be >= 1");
    std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(H.r()) * p);
    for (std::uint32_t i = 0; i < H.r(); ++i) {
        const auto& base = H.row(i);
        // offsets per 1-symbol, ordinal is 1-based in ascending column order
        std::vector<std::uint32_t> offsets(base.size());
        for (std::size_t o = 0; o < base.size(); ++o) {
            const std::uint32_t off = rule(i, static_cast<std::uint32_t>(o + 1), p);
            if (off >= p) throw std::invalid_argument("circulant_expand: offset out of range [0, p)");
            offsets[o] = off;
        }
        for (std::uint32_t t = 0; t < p; ++t) {
            auto& row = rows[static_cast<std::size_t>(i) * p + t];
            row.reserve(base.size());
            for (std::size_t o = 0; o < base.size(); ++o) {
                // block is the circulant with first-column support at offsets[o]:
                // entry (t, c) set iff t == c + offset (mod p)
                const std::uint32_t c = (t + p - offsets[o]) % p;
                row.push_back(base[o] * p + c);
            }
        }
    }
    matrix_provenance prov = H.provenance();
    prov.expansion *= p;
    prov.offset_rule = std::move(rule_name);
    return parity_check_matrix(H.n() * p, std::move(rows), std::move(prov));
}

std::string to_alist(const parity_check_matrix& H) {
    std::uint32_t max_col = 0, max_row = 0;
    for (std::uint32_t j = 0; j < H.n(); ++j)
        max_col = std::max(max_col, static_cast<std::uint32_t>(H.col(j).size()));
    for (std::uint32_t i = 0; i < H.r(); ++i)
        max_row = std::max(max_row, static_cast<std::uint32_t>(H.row(i).size()));

    std::ostringstream out;
    out << H.n() << ' ' << H.r() << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (std::uint32_t j = 0; j < H.n(); ++j) out << H.col(j).size() << (j + 1 < H.n() ? ' ' : '\n');
    for (std::uint32_t i = 0; i < H.r(); ++i) out << H.row(i).size() << (i + 1 < H.r() ? ' ' : '\n');
    for (std::uint32_t j = 0; j < H.n(); ++j) {
        for (std::uint32_t e = 0; e < max_col; ++e) {
            if (e) out << ' ';
            out << (e < H.col(j).size() ? H.col(j)[e] + 1 : 0);
        }
        out << '\n';
    }
    for (std::uint32_t i = 0; i < H.r(); ++i) {
        for (std::uint32_t e = 0; e < max_row; ++e) {
            if (e) out << ' ';
            out << (e < H.row(i).size() ? H.row(i)[e] + 1 : 0);
        }
        out << '\n';
    }
    return out.str();
}

parity_check_matrix parse_alist(std::string_view text) {
    std::istringstream in{std::string(text)};
    auto next = [&in]() {
        long long v;
        if (!(in >> v) || v < 0) throw std::invalid_argument("parse_alist: malformed alist text");
        return static_cast<std::uint64_t>(v);
    };
    const std::uint32_t n = static_cast<std::uint32_t>(next());
    const std::uint32_t r = static_cast<std::uint32_t>(next());
    const std::uint32_t max_col = static_cast<std::uint32_t>(next());
    const std::uint32_t max_row = static_cast<std::uint32_t>(next());
    std::vector<std::uint32_t> col_wt(n), row_wt(r);
    for (auto& w : col_wt) w = static_cast<std::uint32_t>(next());
    for (auto& w : row_wt) w = static_cast<std::uint32_t>(next());

    std::vector<std::vector<std::uint32_t>> cols(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        for (std::uint32_t e = 0; e < max_col; ++e) {
            const std::uint64_t v = next();
            if (e < col_wt[j]) {
                if (v == 0 || v > r) throw std::invalid_argument("parse_alist: row index out of range");
                cols[j].push_back(static_cast<std::uint32_t>(v - 1));
            } else if (v != 0) {
                throw std::invalid_argument("parse_alist: nonzero padding entry");
            }
        }
    }
    std::vector<std::vector<std::uint32_t>> rows(r);
    for (std::uint32_t i = 0; i < r; ++i) {
        for (std::uint32_t e = 0; e < max_row; ++e) {
            const std::uint64_t v = next();
            if (e < row_wt[i]) {
                if (v == 0 || v > n) throw std::invalid_argument("parse_alist: column index out of range");
                rows[i].push_back(static_cast<std::uint32_t>(v - 1));
            } else if (v != 0) {
                throw std::invalid_argument("parse_alist: nonzero padding entry");
            }
        }
    }
    parity_check_matrix H(n, std::move(rows));
    // cross-check the column lists against the ones derived from the rows
    for (std::uint32_t j = 0; j < n; ++j) {
        auto sorted = cols[j];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != H.col(j))
            throw std::invalid_argument("parse_alist: row and column lists are inconsistent");
    }
    return H;
}

std::string summary_json(const parity_check_matrix& H) {
    nlohmann::json j;
    j["n"] = H.n();
    j["r"] = H.r();
    j["rank"] = rank_gf2(H);
    const auto prof = column_profile(H);
    nlohmann::json profile = nlohmann::json::object();
    for (const auto& [w, c] : prof.counts) profile[std::to_string(w)] = c;
    j["profile"] = profile;
    j["mean_column_weight"] = prof.mean.to_double();
    j["mean_column_weight_exact"] = prof.mean.str();
    const auto cycle = find_four_cycle(H);
    j["four_cycle"] = cycle.has_value();
    if (cycle) {
        j["witness"] = {{"rows", {cycle->row_a, cycle->row_b}}, {"cols", {cycle->col_a, cycle->col_b}}};
    } else {
        j["witness"] = nullptr;
    }
    if (H.provenance().seed) {
        j["seed"] = H.provenance().seed->to_binary_string();
        if (H.provenance().expansion > 1) {
            j["expansion"] = H.provenance().expansion;
            j["offset_rule"] = H.provenance().offset_rule;
        }
    }
    return j.dump(2);
}

}  // namespace psc
