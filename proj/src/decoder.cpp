#include "psc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psc {

tanner_graph build_graph(const parity_check_matrix& H) {
    if (H.r() == 0 || H.n() == 0 || H.ones() == 0)
        throw std::invalid_argument("build_graph: empty parity-check matrix");
    tanner_graph g;
    g.vars = H.n();
    g.checks = H.r();
    g.edges = static_cast<std::uint32_t>(H.ones());

    g.check_ptr.assign(g.checks + 1, 0);
    g.check_var.reserve(g.edges);
    for (std::uint32_t i = 0; i < g.checks; ++i) {
        for (auto c : H.row(i)) g.check_var.push_back(c);  // rows are kept ascending
        g.check_ptr[i + 1] = static_cast<std::uint32_t>(g.check_var.size());
    }

    g.var_ptr.assign(g.vars + 1, 0);
    for (auto v : g.check_var) ++g.var_ptr[v + 1];
    for (std::uint32_t v = 0; v < g.vars; ++v) g.var_ptr[v + 1] += g.var_ptr[v];
    g.var_edge.resize(g.edges);
    std::vector<std::uint32_t> cursor(g.var_ptr.begin(), g.var_ptr.end() - 1);
    for (std::uint32_t e = 0; e < g.edges; ++e) g.var_edge[cursor[g.check_var[e]]++] = e;
    return g;
}

spa_workspace::spa_workspace(const tanner_graph& graph)
    : graph_(graph),
      v2c_(graph.edges),
      c2v_(graph.edges),
      total_(graph.vars),
      hard_(graph.vars) {
    std::uint32_t max_deg = 0;
    for (std::uint32_t i = 0; i < graph.checks; ++i)
        max_deg = std::max(max_deg, graph.check_ptr[i + 1] - graph.check_ptr[i]);
    fwd_.resize(max_deg);
    bwd_.resize(max_deg);
}

bool spa_workspace::syndrome_ok() const {
    for (std::uint32_t i = 0; i < graph_.checks; ++i) {
        std::uint8_t parity = 0;
        for (std::uint32_t e = graph_.check_ptr[i]; e < graph_.check_ptr[i + 1]; ++e)
            parity ^= hard_[graph_.check_var[e]];
        if (parity) return false;
    }
    return true;
}

bool spa_workspace::decode(std::span<const double> llrs, const spa_options& options) {
    if (llrs.size() != graph_.vars)
        throw std::invalid_argument("sum_product: LLR length must equal the variable count");
    for (double l : llrs)
        if (!std::isfinite(l)) throw std::invalid_argument("sum_product: non-finite channel LLR");

    const double clamp = options.llr_clamp;
    // atanh argument kept strictly inside (-1, 1)
    constexpr double kTanhLimit = 1.0 - 1e-12;

    // iteration 0: the channel hard decision may already be a codeword
    for (std::uint32_t v = 0; v < graph_.vars; ++v) {
        total_[v] = llrs[v];
        hard_[v] = llrs[v] < 0.0 ? 1 : 0;  // tie at 0 decides bit 0
    }
    iterations_ = 0;
    if (syndrome_ok()) return true;

    for (std::uint32_t e = 0; e < graph_.edges; ++e)
        v2c_[e] = std::clamp(llrs[graph_.check_var[e]], -clamp, clamp);

    for (unsigned iter = 1; iter <= options.max_iter; ++iter) {
        // check-node update via forward/backward partial products
        for (std::uint32_t i = 0; i < graph_.checks; ++i) {
            const std::uint32_t begin = graph_.check_ptr[i];
            const std::uint32_t deg = graph_.check_ptr[i + 1] - begin;
            if (deg == 1) {
                c2v_[begin] = 0.0;  // no extrinsic information on a degree-1 check
                continue;
            }
            fwd_[0] = std::tanh(0.5 * v2c_[begin]);
            for (std::uint32_t d = 1; d < deg; ++d)
                fwd_[d] = fwd_[d - 1] * std::tanh(0.5 * v2c_[begin + d]);
            bwd_[deg - 1] = std::tanh(0.5 * v2c_[begin + deg - 1]);
            for (std::uint32_t d = deg - 1; d-- > 0;)
                bwd_[d] = bwd_[d + 1] * std::tanh(0.5 * v2c_[begin + d]);
            for (std::uint32_t d = 0; d < deg; ++d) {
                double prod = 1.0;
                if (d > 0) prod *= fwd_[d - 1];
                if (d + 1 < deg) prod *= bwd_[d + 1];
                prod = std::clamp(prod, -kTanhLimit, kTanhLimit);
                c2v_[begin + d] = 2.0 * std::atanh(prod);
            }
        }

        // variable-node update and hard decision
        for (std::uint32_t v = 0; v < graph_.vars; ++v) {
            double total = llrs[v];
            for (std::uint32_t t = graph_.var_ptr[v]; t < graph_.var_ptr[v + 1]; ++t)
                total += c2v_[graph_.var_edge[t]];
            total_[v] = total;
            hard_[v] = total < 0.0 ? 1 : 0;
            for (std::uint32_t t = graph_.var_ptr[v]; t < graph_.var_ptr[v + 1]; ++t) {
                const std::uint32_t e = graph_.var_edge[t];
                v2c_[e] = std::clamp(total - c2v_[e], -clamp, clamp);
            }
        }

        iterations_ = iter;
        if (syndrome_ok()) return true;
    }
    return false;
}

decode_result sum_product(const tanner_graph& graph, std::span<const double> channel_llrs,
                          const spa_options& options) {
    spa_workspace ws(graph);
    decode_result res;
    res.converged = ws.decode(channel_llrs, options);
    res.hard_bits = ws.hard_bits();
    res.final_llrs = ws.posterior_llrs();
    res.iterations_used = ws.iterations_used();
    return res;
}

}  // namespace psc
