#include "psc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "psc/errors.hpp"

namespace psc {

namespace {

constexpr std::uint32_t kWordBits = 64;

std::uint32_t word_index(std::uint32_t bit) { return bit / kWordBits; }
std::uint64_t bit_mask(std::uint32_t bit) { return 1ULL << (bit % kWordBits); }

}  // namespace

void gf2_poly::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

void gf2_poly::set(std::uint32_t i) {
    const std::uint32_t w = word_index(i);
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= bit_mask(i);
}

gf2_poly gf2_poly::monomial(std::uint32_t power) {
    gf2_poly p;
    p.set(power);
    return p;
}

gf2_poly gf2_poly::from_binary_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("gf2_poly: empty binary string");
    gf2_poly p;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            p.set(static_cast<std::uint32_t>(i));
        } else if (s[i] != '0') {
            throw std::invalid_argument("gf2_poly: invalid character in binary string");
        }
    }
    return p;
}

gf2_poly gf2_poly::from_hex_string(std::string_view s) {
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        throw std::invalid_argument("gf2_poly: hex form must start with 0x");
    gf2_poly p;
    // most significant nibble first, bit 0 of the value = h_0
    std::uint32_t nbits = static_cast<std::uint32_t>(s.size() - 2) * 4;
    std::uint32_t shift = nbits;
    for (std::size_t i = 2; i < s.size(); ++i) {
        char c = s[i];
        std::uint32_t v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
        else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
        else throw std::invalid_argument("gf2_poly: invalid hex digit");
        shift -= 4;
        for (std::uint32_t b = 0; b < 4; ++b)
            if (v & (1u << b)) p.set(shift + b);
    }
    return p;
}

gf2_poly gf2_poly::parse(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return from_hex_string(s);
    return from_binary_string(s);
}

gf2_poly gf2_poly::from_support(std::span<const std::uint32_t> powers) {
    gf2_poly p;
    for (auto e : powers) {
        if (p.coeff(e)) throw std::invalid_argument("gf2_poly: duplicate power in support");
        p.set(e);
    }
    return p;
}

int gf2_poly::degree() const {
    if (words_.empty()) return -1;
    const std::uint64_t top = words_.back();
    return static_cast<int>(words_.size() * kWordBits) - std::countl_zero(top) - 1;
}

int gf2_poly::weight() const {
    int w = 0;
    for (auto word : words_) w += std::popcount(word);
    return w;
}

bool gf2_poly::coeff(std::uint32_t i) const {
    const std::uint32_t w = word_index(i);
    return w < words_.size() && (words_[w] & bit_mask(i));
}

std::string gf2_poly::to_binary_string() const {
    if (is_zero()) return "0";
    const int k = degree();
    std::string s(static_cast<std::size_t>(k) + 1, '0');
    for (int i = 0; i <= k; ++i)
        if (coeff(static_cast<std::uint32_t>(i))) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::string gf2_poly::to_hex_string() const {
    if (is_zero()) return "0x0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (auto it = words_.rbegin(); it != words_.rend(); ++it) {
        for (int nib = 15; nib >= 0; --nib) {
            const unsigned v = (*it >> (4 * nib)) & 0xF;
            if (s.empty() && v == 0) continue;
            s.push_back(digits[v]);
        }
    }
    return "0x" + s;
}

gf2_poly gf2_poly::reciprocal() const {
    if (!coeff(0))
        throw std::invalid_argument("reciprocal: constant term is 0, reversal would drop the degree");
    const int k = degree();
    gf2_poly r;
    for (int i = 0; i <= k; ++i)
        if (coeff(static_cast<std::uint32_t>(i))) r.set(static_cast<std::uint32_t>(k - i));
    return r;
}

gf2_poly operator+(const gf2_poly& a, const gf2_poly& b) {
    gf2_poly r = a;
    if (b.words_.size() > r.words_.size()) r.words_.resize(b.words_.size(), 0);
    for (std::size_t i = 0; i < b.words_.size(); ++i) r.words_[i] ^= b.words_[i];
    r.trim();
    return r;
}

gf2_poly operator*(const gf2_poly& a, const gf2_poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& small = (a.weight() <= b.weight()) ? a : b;
    const auto& big = (a.weight() <= b.weight()) ? b : a;
    gf2_poly r;
    r.words_.assign(big.words_.size() + small.words_.size() + 1, 0);
    for (std::uint32_t i = 0; i <= static_cast<std::uint32_t>(small.degree()); ++i) {
        if (!small.coeff(i)) continue;
        const std::uint32_t ws = i / kWordBits, bs = i % kWordBits;
        for (std::size_t j = 0; j < big.words_.size(); ++j) {
            r.words_[j + ws] ^= big.words_[j] << bs;
            if (bs) r.words_[j + ws + 1] ^= big.words_[j] >> (kWordBits - bs);
        }
    }
    r.trim();
    return r;
}

std::pair<gf2_poly, gf2_poly> gf2_poly::divmod(const gf2_poly& num, const gf2_poly& den) {
    if (den.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    gf2_poly rem = num;
    gf2_poly quot;
    const int dd = den.degree();
    int dr = rem.degree();
    while (dr >= dd) {
        const std::uint32_t shift = static_cast<std::uint32_t>(dr - dd);
        quot.set(shift);
        // rem ^= den << shift
        const std::uint32_t ws = shift / kWordBits, bs = shift % kWordBits;
        if (rem.words_.size() < den.words_.size() + ws + 1) rem.words_.resize(den.words_.size() + ws + 1, 0);
        for (std::size_t j = 0; j < den.words_.size(); ++j) {
            rem.words_[j + ws] ^= den.words_[j] << bs;
            if (bs) rem.words_[j + ws + 1] ^= den.words_[j] >> (kWordBits - bs);
        }
        rem.trim();
        dr = rem.degree();
    }
    quot.trim();
    return {quot, rem};
}

gf2_poly gcd(gf2_poly a, gf2_poly b) {
    while (!b.is_zero()) {
        gf2_poly r = gf2_poly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::uint32_t> support(const gf2_poly& poly) {
    if (poly.is_zero()) throw std::invalid_argument("support: zero polynomial");
    std::vector<std::uint32_t> p;
    p.reserve(static_cast<std::size_t>(poly.weight()));
    const auto& words = poly.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t word = words[w];
        while (word) {
            const int b = std::countr_zero(word);
            p.push_back(static_cast<std::uint32_t>(w * kWordBits) + static_cast<std::uint32_t>(b));
            word &= word - 1;
        }
    }
    return p;
}

std::vector<std::uint32_t> differences(std::span<const std::uint32_t> support) {
    if (support.size() < 2) throw std::invalid_argument("differences: need at least two marks");
    std::vector<std::uint32_t> s(support.size() - 1);
    for (std::size_t i = 0; i + 1 < support.size(); ++i) {
        if (support[i + 1] <= support[i])
            throw std::invalid_argument("differences: marks must be strictly ascending");
        s[i] = support[i + 1] - support[i];
    }
    return s;
}

bool is_golomb_ruler(std::span<const std::uint32_t> marks) {
    if (marks.empty()) throw std::invalid_argument("is_golomb_ruler: empty mark list");
    for (std::size_t i = 0; i + 1 < marks.size(); ++i)
        if (marks[i + 1] <= marks[i])
            throw std::invalid_argument("is_golomb_ruler: marks must be strictly ascending and distinct");
    const std::uint32_t span_len = marks.back() - marks.front();
    std::vector<bool> seen(static_cast<std::size_t>(span_len) + 1, false);
    for (std::size_t i = 0; i < marks.size(); ++i) {
        for (std::size_t j = i + 1; j < marks.size(); ++j) {
            const std::uint32_t d = marks[j] - marks[i];
            if (seen[d]) return false;
            seen[d] = true;
        }
    }
    return true;
}

namespace {

// t mod m for polynomials, in place of full divmod when only the remainder matters
gf2_poly poly_mod(const gf2_poly& a, const gf2_poly& m) { return gf2_poly::divmod(a, m).second; }

gf2_poly mulmod(const gf2_poly& a, const gf2_poly& b, const gf2_poly& m) {
    return poly_mod(a * b, m);
}

// x^(2^count) mod m via repeated squaring
gf2_poly iterate_frobenius(gf2_poly t, std::uint32_t count, const gf2_poly& m) {
    for (std::uint32_t i = 0; i < count; ++i) t = mulmod(t, t, m);
    return t;
}

gf2_poly powmod_u64(gf2_poly base, std::uint64_t e, const gf2_poly& m) {
    gf2_poly r = poly_mod(gf2_poly::one(), m);
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

namespace nt {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((u128)a * b % m);
}

std::uint64_t powmod_u64i(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t brent_rho(std::uint64_t n, std::uint64_t c) {
    // Brent's cycle-finding variant of Pollard rho with batched gcds.
    std::uint64_t x = 2, y = 2, d = 1, q = 1, xs = 0;
    std::uint64_t r = 1, m = 128;
    auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        while (k < r && d == 1) {
            xs = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            d = std::gcd(q, n);
            k += m;
        }
        r <<= 1;
    }
    if (d == n) {
        // backtrack one step at a time
        do {
            xs = f(xs);
            d = std::gcd(x > xs ? x - xs : xs - x, n);
        } while (d == 1);
    }
    return d;
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = n;
    for (std::uint64_t c = 1; d == n; ++c) d = brent_rho(n, c);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic base set for the full 64-bit range
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64i(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                            37ULL, 41ULL, 43ULL, 47ULL, 53ULL, 59ULL, 61ULL, 67ULL, 71ULL, 73ULL, 79ULL}) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) factor_rec(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace nt

bool is_irreducible(const gf2_poly& poly) {
    const int k = poly.degree();
    if (k < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
    const std::uint32_t ku = static_cast<std::uint32_t>(k);
    const gf2_poly x = gf2_poly::x();
    // Rabin: x^(2^k) == x (mod poly), and for every prime q | k,
    // gcd(x^(2^(k/q)) - x, poly) == 1.
    if (iterate_frobenius(poly_mod(x, poly), ku, poly) != poly_mod(x, poly)) return false;
    for (std::uint64_t q : nt::prime_factors_u64(ku)) {
        gf2_poly t = iterate_frobenius(poly_mod(x, poly), ku / static_cast<std::uint32_t>(q), poly);
        if (gcd(t + x, poly).degree() != 0) return false;
    }
    return true;
}

bool is_primitive(const gf2_poly& poly) {
    const int k = poly.degree();
    if (k < 1) throw std::invalid_argument("is_primitive: degree must be >= 1");
    if (!poly.coeff(0)) return false;  // divisible by x, x is not a unit
    if (k > 64)
        throw resource_limit_error(
            "is_primitive: order test needs the factorization of 2^k - 1, supported for k <= 64");
    if (!is_irreducible(poly)) return false;
    const std::uint64_t order = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
    const gf2_poly x = gf2_poly::x();
    if (powmod_u64(x, order, poly) != gf2_poly::one()) return false;
    for (std::uint64_t q : nt::prime_factors_u64(order)) {
        if (powmod_u64(x, order / q, poly) == gf2_poly::one()) return false;
    }
    return true;
}

gf2_poly cofactor(const gf2_poly& poly, std::uint32_t degree_cap) {
    const int k = poly.degree();
    if (k < 1) throw std::invalid_argument("cofactor: degree must be >= 1");
    if (static_cast<std::uint32_t>(k) > degree_cap)
        throw resource_limit_error("cofactor: result has 2^k - k bits, degree cap is " +
                                   std::to_string(degree_cap));
    if (!is_primitive(poly)) throw std::invalid_argument("cofactor: polynomial is not primitive");
    const std::uint64_t n_period = (1ULL << k) - 1;
    gf2_poly binomial = gf2_poly::monomial(static_cast<std::uint32_t>(n_period)) + gf2_poly::one();
    auto [quot, rem] = gf2_poly::divmod(binomial, poly);
    if (!rem.is_zero()) throw std::logic_error("cofactor: division of x^N + 1 was inexact");
    return quot;
}

}  // namespace psc
