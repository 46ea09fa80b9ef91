#ifndef PSC_DECODER_HPP
#define PSC_DECODER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "psc/matrix.hpp"

namespace psc {

/// Bipartite adjacency in CSR form. Edges are numbered by check, then by
/// ascending column within the check, which fixes the message schedule.
struct tanner_graph {
    std::uint32_t vars = 0;
    std::uint32_t checks = 0;
    std::uint32_t edges = 0;
    std::vector<std::uint32_t> check_ptr;  // checks + 1
    std::vector<std::uint32_t> check_var;  // edges, variable of each edge
    std::vector<std::uint32_t> var_ptr;    // vars + 1
    std::vector<std::uint32_t> var_edge;   // edges, edge ids incident to each variable
};

tanner_graph build_graph(const parity_check_matrix& H);

struct decode_result {
    std::vector<std::uint8_t> hard_bits;
    unsigned iterations_used = 0;
    bool converged = false;  // zero syndrome reached
    std::vector<double> final_llrs;
};

struct spa_options {
    unsigned max_iter = 100;
    double llr_clamp = 25.0;  // applied to messages before tanh
};

/// Reusable message buffers so hot loops don't allocate per frame. The hard
/// decision, posterior LLRs and iteration count of the last decode stay
/// readable until the next call. One workspace per thread.
class spa_workspace {
public:
    explicit spa_workspace(const tanner_graph& graph);

    /// Flooding-schedule sum-product with early exit on zero syndrome.
    /// Positive LLR means bit 0. Returns true on convergence.
    bool decode(std::span<const double> channel_llrs, const spa_options& options = {});

    const std::vector<std::uint8_t>& hard_bits() const { return hard_; }
    const std::vector<double>& posterior_llrs() const { return total_; }
    unsigned iterations_used() const { return iterations_; }

private:
    bool syndrome_ok() const;

    const tanner_graph& graph_;
    std::vector<double> v2c_;
    std::vector<double> c2v_;
    std::vector<double> fwd_;
    std::vector<double> bwd_;
    std::vector<double> total_;
    std::vector<std::uint8_t> hard_;
    unsigned iterations_ = 0;
};

decode_result sum_product(const tanner_graph& graph, std::span<const double> channel_llrs,
                          const spa_options& options = {});

}  // namespace psc

#endif
