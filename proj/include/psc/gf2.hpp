#ifndef PSC_GF2_HPP
#define PSC_GF2_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace psc {

/// Binary polynomial with bit i = coefficient of x^i, packed into 64-bit
/// words. Arbitrary degree; the seeds used throughout the library keep
/// h_0 = h_k = 1 but that is enforced by the operations that need it, not
/// by the type.
class gf2_poly {
public:
    gf2_poly() = default;  // zero polynomial, degree() == -1

    /// Parse the textual convention used for code seeds: leftmost character
    /// is h_0 (the constant term), rightmost is h_k. "1101" = 1 + x + x^3.
    static gf2_poly from_binary_string(std::string_view s);
    /// Hex form "0x..."; bit 0 of the integer value is h_0.
    static gf2_poly from_hex_string(std::string_view s);
    /// Accepts either of the two textual forms.
    static gf2_poly parse(std::string_view s);
    /// Polynomial with 1-coefficients exactly at the given powers.
    static gf2_poly from_support(std::span<const std::uint32_t> powers);

    static gf2_poly one() { return monomial(0); }
    static gf2_poly x() { return monomial(1); }
    static gf2_poly monomial(std::uint32_t power);

    bool is_zero() const { return words_.empty(); }
    /// Index of the highest set coefficient; -1 for the zero polynomial.
    int degree() const;
    /// Number of set coefficients.
    int weight() const;
    bool coeff(std::uint32_t i) const;

    std::string to_binary_string() const;  // leftmost = h_0
    std::string to_hex_string() const;

    /// Coefficient sequence reversed (x^k h(1/x)). Requires h_0 = 1 so the
    /// degree is preserved; throws std::invalid_argument otherwise.
    gf2_poly reciprocal() const;

    bool operator==(const gf2_poly&) const = default;

    friend gf2_poly operator+(const gf2_poly& a, const gf2_poly& b);  // XOR
    friend gf2_poly operator*(const gf2_poly& a, const gf2_poly& b);
    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<gf2_poly, gf2_poly> divmod(const gf2_poly& num, const gf2_poly& den);

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void trim();
    void set(std::uint32_t i);

    std::vector<std::uint64_t> words_;
};

gf2_poly gcd(gf2_poly a, gf2_poly b);

/// Ascending indices of set coefficients. Errors on the zero polynomial.
std::vector<std::uint32_t> support(const gf2_poly& poly);

/// Consecutive differences s_i = p_{i+1} - p_i of a support vector.
/// Requires length >= 2.
std::vector<std::uint32_t> differences(std::span<const std::uint32_t> support);

/// True iff all pairwise differences of the (strictly ascending) marks are
/// distinct. Throws std::invalid_argument on unsorted or duplicate input.
bool is_golomb_ruler(std::span<const std::uint32_t> marks);

/// Rabin irreducibility test; works for any degree >= 1.
bool is_irreducible(const gf2_poly& poly);

/// True iff poly is irreducible and x has multiplicative order 2^k - 1
/// modulo poly. The order test factors 2^k - 1, which this implementation
/// supports for k <= 64; larger degrees throw resource_limit_error.
bool is_primitive(const gf2_poly& poly);

/// Cofactor g(x) = (x^N + 1) / h(x) with N = 2^k - 1, for primitive h of
/// degree k. The coefficients of g form the maximum-length sequence of h.
/// Degrees above degree_cap throw resource_limit_error (the result has
/// 2^k - k bits).
gf2_poly cofactor(const gf2_poly& poly, std::uint32_t degree_cap = 26);

namespace nt {
/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
/// Prime factorization by trial division + Brent's rho; ascending, distinct.
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);
}  // namespace nt

}  // namespace psc

#endif
