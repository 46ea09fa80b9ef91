#ifndef PSC_MATRIX_HPP
#define PSC_MATRIX_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psc/gf2.hpp"

namespace psc {

/// Exact ratio of two integers, normalized with positive denominator.
struct rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    rational() = default;
    rational(std::int64_t n, std::int64_t d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const rational&) const = default;
};

/// The tern [n, k, d] plus rate.
struct code_spec {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::optional<std::uint32_t> d_min;

    rational rate() const { return rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)); }
};

struct matrix_provenance {
    std::optional<gf2_poly> seed;
    std::uint32_t puncture = 0;    // s = N - n when built from a degree-k seed with N = 2^k - 1
    std::uint32_t expansion = 1;   // circulant side p, 1 = not expanded
    std::string offset_rule;
};

/// Sparse binary matrix stored as per-row ascending column lists. Column
/// adjacency is materialized at construction so all analysis calls are
/// read-only and safe to run concurrently.
class parity_check_matrix {
public:
    parity_check_matrix(std::uint32_t n, std::vector<std::vector<std::uint32_t>> rows,
                        matrix_provenance provenance = {});

    std::uint32_t n() const { return n_; }
    std::uint32_t r() const { return static_cast<std::uint32_t>(rows_.size()); }
    const std::vector<std::uint32_t>& row(std::uint32_t i) const { return rows_[i]; }
    const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }
    /// Rows incident to column j.
    const std::vector<std::uint32_t>& col(std::uint32_t j) const { return cols_[j]; }
    std::uint64_t ones() const { return ones_; }
    const matrix_provenance& provenance() const { return provenance_; }

private:
    std::uint32_t n_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::vector<std::uint32_t>> cols_;
    std::uint64_t ones_ = 0;
    matrix_provenance provenance_;
};

/// Punctured simplex parity-check matrix of a degree-k seed at length n:
/// r = n - k rows, row i has 1s at {i + j : h_j = 1, i + j < n}. Identical
/// to building the full cyclic matrix at N = 2^k - 1 and erasing the last
/// N - n rows and columns. Requires k + 1 <= n <= 2^k - 1.
/// h must be primitive unless unchecked is set; seeds whose primitivity is
/// not decidable here (degree > 64) are accepted as-is.
parity_check_matrix build_parity_check(const gf2_poly& h, std::uint32_t n, bool unchecked = false);

struct column_weight_profile {
    std::map<std::uint32_t, std::uint32_t> counts;  // weight -> number of columns
    rational mean;
};

column_weight_profile column_profile(const parity_check_matrix& H);

/// w(1 - R), the exact average column weight of a punctured simplex matrix
/// with seed weight w at rate R.
rational mean_column_weight_formula(std::uint32_t w, rational R);

/// Two rows and two columns whose four intersections are all 1.
struct four_cycle {
    std::uint32_t row_a, row_b, col_a, col_b;
};

std::optional<four_cycle> find_four_cycle(const parity_check_matrix& H);
inline bool has_four_cycle(const parity_check_matrix& H) { return find_four_cycle(H).has_value(); }

/// Row-column constraint test on the seed alone: equivalent to the support
/// being a Golomb ruler, and to 4-cycle-freedom of every matrix built from h.
bool satisfies_rc_constraint(const gf2_poly& h);

std::uint32_t rank_gf2(const parity_check_matrix& H);

/// Maps (row index, 1-based ordinal of the 1-symbol within its row, p) to a
/// circulant offset in [0, p).
using offset_rule = std::function<std::uint32_t(std::uint32_t, std::uint32_t, std::uint32_t)>;

/// Offset i mod p for odd ordinals i, (2i) mod p for even ordinals.
offset_rule paper_c3_rule();
/// All-identity blocks.
offset_rule zero_offset_rule();
/// Lookup by name: "paper-c3" or "zero". Throws on unknown names.
offset_rule named_offset_rule(std::string_view name);

/// Replace each 1 by the p x p circulant permutation whose first column has
/// its 1 at the rule's offset, and each 0 by a zero block.
parity_check_matrix circulant_expand(const parity_check_matrix& H, std::uint32_t p,
                                     const offset_rule& rule, std::string rule_name = "");

/// alist text: "n r", "max_col_wt max_row_wt", column weights, row weights,
/// then per-column and per-row 1-based index lists padded with 0.
std::string to_alist(const parity_check_matrix& H);
parity_check_matrix parse_alist(std::string_view text);

/// JSON object {n, r, rank, profile, mean_column_weight, four_cycle, witness}.
std::string summary_json(const parity_check_matrix& H);

}  // namespace psc

#endif
