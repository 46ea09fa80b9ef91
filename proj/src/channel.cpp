#include "psc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "psc/decoder.hpp"

namespace psc {

snr_point make_snr_point(double eb_n0_db, rational rate) {
    if (rate.num <= 0 || rate.num > rate.den)
        throw std::invalid_argument("make_snr_point: rate must be in (0, 1]");
    const double linear = std::pow(10.0, eb_n0_db / 10.0);
    return snr_point{eb_n0_db, 1.0 / (2.0 * rate.to_double() * linear)};
}

std::vector<double> modulate_bpsk(std::span<const std::uint8_t> bits) {
    std::vector<double> symbols(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) symbols[i] = bits[i] ? -1.0 : 1.0;
    return symbols;
}

void add_awgn(std::span<double> symbols, double sigma2, xoshiro256pp& rng) {
    if (sigma2 <= 0.0) throw std::invalid_argument("awgn: sigma2 must be positive");
    const double sigma = std::sqrt(sigma2);
    for (auto& s : symbols) s += sigma * rng.gaussian();
}

std::vector<double> awgn(std::span<const double> symbols, double sigma2, xoshiro256pp& rng) {
    std::vector<double> out(symbols.begin(), symbols.end());
    add_awgn(out, sigma2, rng);
    return out;
}

std::vector<double> channel_llr(std::span<const double> received, double sigma2) {
    if (sigma2 <= 0.0) throw std::invalid_argument("channel_llr: sigma2 must be positive");
    std::vector<double> llr(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) llr[i] = 2.0 * received[i] / sigma2;
    return llr;
}

double uncoded_ber_reference(double eb_n0_db) {
    return 0.5 * std::erfc(std::sqrt(std::pow(10.0, eb_n0_db / 10.0)));
}

namespace {

struct frame_outcome {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_error = 0;
};

// One decoded frame; all randomness comes from the per-frame generator.
template <typename Encoder>
frame_outcome run_coded_frame(xoshiro256pp& rng, const Encoder& encode_random,
                              const tanner_graph& graph, spa_workspace& ws, double sigma2,
                              std::uint32_t counted, bool all_zero, unsigned max_iter,
                              std::vector<std::uint8_t>& cw, std::vector<double>& samples) {
    const std::uint32_t n = graph.vars;
    if (all_zero) {
        std::fill(cw.begin(), cw.end(), 0);
    } else {
        encode_random(rng, cw);
    }
    const double sigma = std::sqrt(sigma2);
    const double scale = 2.0 / sigma2;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double sym = cw[i] ? -1.0 : 1.0;
        samples[i] = scale * (sym + sigma * rng.gaussian());
    }
    ws.decode(samples, spa_options{max_iter, 25.0});
    const auto& hard = ws.hard_bits();
    frame_outcome out;
    for (std::uint32_t i = 0; i < counted; ++i) out.bit_errors += hard[i] != cw[i];
    if (out.bit_errors) {
        out.frame_error = 1;
    } else {
        for (std::uint32_t i = counted; i < n; ++i) {
            if (hard[i] != cw[i]) {
                out.frame_error = 1;
                break;
            }
        }
    }
    return out;
}

// Shared point loop: batches grow geometrically and stop checks happen only
// at batch boundaries, so the frame schedule (and with it every count) is
// the same no matter how many threads execute a batch.
template <typename FrameFn>
sim_point_record run_point(double eb_n0_db, const stop_rule& stop, bool parallel,
                           std::uint64_t points_base_stream, const FrameFn& frame_fn,
                           std::uint64_t denom_per_frame) {
    sim_point_record rec;
    rec.eb_n0_db = eb_n0_db;
    std::uint64_t done = 0;
    std::uint64_t batch = 1 << 12;
    while (done < stop.max_frames && rec.frame_errors < stop.min_frame_errors) {
        const std::uint64_t count = std::min(batch, stop.max_frames - done);
        std::uint64_t bit_errs = 0, frame_errs = 0;
        if (parallel) {
#pragma omp parallel reduction(+ : bit_errs, frame_errs)
            {
                auto ctx = frame_fn.make_context();
#pragma omp for schedule(dynamic, 256) nowait
                for (std::int64_t f = static_cast<std::int64_t>(done);
                     f < static_cast<std::int64_t>(done + count); ++f) {
                    const auto out = frame_fn.run(points_base_stream, static_cast<std::uint64_t>(f), ctx);
                    bit_errs += out.bit_errors;
                    frame_errs += out.frame_error;
                }
            }
        } else {
            auto ctx = frame_fn.make_context();
            for (std::uint64_t f = done; f < done + count; ++f) {
                const auto out = frame_fn.run(points_base_stream, f, ctx);
                bit_errs += out.bit_errors;
                frame_errs += out.frame_error;
            }
        }
        rec.bit_errors += bit_errs;
        rec.frame_errors += frame_errs;
        done += count;
        batch = std::min<std::uint64_t>(batch * 2, 1 << 20);
    }
    rec.frames = done;
    rec.ber = rec.frames ? static_cast<double>(rec.bit_errors) /
                               (static_cast<double>(rec.frames) * static_cast<double>(denom_per_frame))
                         : 0.0;
    rec.cer = rec.frames ? static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames) : 0.0;
    return rec;
}

void check_sim_options(const sim_options& options) {
    if (options.snr_db.empty()) throw std::invalid_argument("run_monte_carlo: empty SNR list");
    if (options.stop.max_frames == 0) throw std::invalid_argument("run_monte_carlo: max_frames must be > 0");
    if (options.stop.min_frame_errors == 0)
        throw std::invalid_argument("run_monte_carlo: min_frame_errors must be >= 1");
}

struct coded_frame_runner {
    const tanner_graph* graph;
    const std::vector<std::uint32_t>* taps;  // LFSR taps below k; empty for matrix-only codes
    std::uint32_t k;
    double sigma2;
    std::uint32_t counted;
    bool all_zero;
    unsigned max_iter;
    std::uint64_t seed;

    struct context {
        spa_workspace ws;
        std::vector<std::uint8_t> cw;
        std::vector<double> samples;
    };

    context make_context() const {
        return context{spa_workspace(*graph), std::vector<std::uint8_t>(graph->vars),
                       std::vector<double>(graph->vars)};
    }

    frame_outcome run(std::uint64_t stream, std::uint64_t frame, context& ctx) const {
        xoshiro256pp rng(derive_seed(seed, stream, frame));
        auto encode_random = [this](xoshiro256pp& r, std::vector<std::uint8_t>& cw) {
            for (std::uint32_t i = 0; i < k; ++i) cw[i] = static_cast<std::uint8_t>(r.next() & 1);
            for (std::uint32_t i = 0; i + k < cw.size(); ++i) {
                std::uint8_t b = 0;
                for (auto t : *taps) b ^= cw[i + t];
                cw[i + k] = b;
            }
        };
        return run_coded_frame(rng, encode_random, *graph, ctx.ws, sigma2, counted, all_zero,
                               max_iter, ctx.cw, ctx.samples);
    }
};

simulation_report run_coded(const tanner_graph& graph, const std::vector<std::uint32_t>& taps,
                            std::uint32_t k, const sim_options& options, std::string label,
                            bool force_all_zero) {
    check_sim_options(options);
    const bool all_zero = options.all_zero || force_all_zero;
    const std::uint32_t n = graph.vars;
    const std::uint32_t counted = options.count_all_positions ? n : k;

    simulation_report report;
    report.code_label = std::move(label);
    report.spec = code_spec{n, k, std::nullopt};
    report.seed = options.seed;
    report.max_iterations = options.max_iterations;
    report.all_zero = all_zero;
    report.count_all_positions = options.count_all_positions;

    for (std::size_t pt = 0; pt < options.snr_db.size(); ++pt) {
        const auto snr = make_snr_point(options.snr_db[pt], rational(k, n));
        coded_frame_runner runner{&graph,    &taps,    k,
                                  snr.sigma2, counted, all_zero,
                                  options.max_iterations, options.seed};
        report.points.push_back(
            run_point(snr.eb_n0_db, options.stop, options.parallel, pt, runner, counted));
    }
    return report;
}

}  // namespace

simulation_report run_monte_carlo(const gf2_poly& h, std::uint32_t n, const sim_options& options) {
    const auto H = build_parity_check(h, n);
    const auto graph = build_graph(H);
    const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
    const auto sup = support(h);
    std::vector<std::uint32_t> taps(sup.begin(), sup.end() - 1);
    std::ostringstream label;
    label << "simplex[" << n << ',' << k << "] h=" << h.to_binary_string();
    return run_coded(graph, taps, k, options, label.str(), false);
}

simulation_report run_monte_carlo(const parity_check_matrix& H, const sim_options& options) {
    const auto graph = build_graph(H);
    const std::uint32_t rank = rank_gf2(H);
    if (rank >= H.n()) throw std::invalid_argument("run_monte_carlo: matrix has no null space");
    const std::uint32_t k = H.n() - rank;
    sim_options adjusted = options;
    adjusted.count_all_positions = true;
    std::ostringstream label;
    label << "matrix[" << H.n() << ',' << k << ']';
    if (H.provenance().seed) {
        label << " h=" << H.provenance().seed->to_binary_string();
        if (H.provenance().expansion > 1) label << " x" << H.provenance().expansion;
    }
    return run_coded(graph, {}, k, adjusted, label.str(), true);
}

namespace {

struct uncoded_frame_runner {
    std::uint32_t k;
    double sigma2;
    std::uint64_t seed;

    struct context {};
    context make_context() const { return {}; }

    frame_outcome run(std::uint64_t stream, std::uint64_t frame, context&) const {
        xoshiro256pp rng(derive_seed(seed, stream, frame));
        const double sigma = std::sqrt(sigma2);
        frame_outcome out;
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint8_t bit = static_cast<std::uint8_t>(rng.next() & 1);
            const double y = (bit ? -1.0 : 1.0) + sigma * rng.gaussian();
            const std::uint8_t hard = y < 0.0 ? 1 : 0;
            out.bit_errors += hard != bit;
        }
        out.frame_error = out.bit_errors > 0;
        return out;
    }
};

}  // namespace

simulation_report run_uncoded(std::uint32_t k, const sim_options& options) {
    check_sim_options(options);
    if (k == 0) throw std::invalid_argument("run_uncoded: k must be >= 1");

    simulation_report report;
    report.code_label = "uncoded";
    report.spec = code_spec{k, k, std::optional<std::uint32_t>(1)};
    report.seed = options.seed;
    report.max_iterations = 0;
    report.all_zero = false;
    report.count_all_positions = true;

    for (std::size_t pt = 0; pt < options.snr_db.size(); ++pt) {
        const auto snr = make_snr_point(options.snr_db[pt], rational(1, 1));
        uncoded_frame_runner runner{k, snr.sigma2, options.seed};
        report.points.push_back(run_point(snr.eb_n0_db, options.stop, options.parallel, pt, runner, k));
    }
    return report;
}

std::string simulation_report::to_csv() const {
    std::ostringstream out;
    out << "EbN0_dB,frames,bit_errors,frame_errors,BER,CER\n";
    out.precision(10);
    for (const auto& p : points)
        out << p.eb_n0_db << ',' << p.frames << ',' << p.bit_errors << ',' << p.frame_errors << ','
            << p.ber << ',' << p.cer << '\n';
    return out.str();
}

std::string simulation_report::to_json() const {
    nlohmann::json j;
    j["code"] = {{"label", code_label}, {"n", spec.n}, {"k", spec.k}, {"rate", spec.rate().str()}};
    j["seed"] = seed;
    j["decoder"] = {{"algorithm", max_iterations ? "sum-product" : "hard-decision"},
                    {"max_iterations", max_iterations}};
    j["transmission"] = {{"all_zero", all_zero},
                         {"error_counting", count_all_positions ? "all-positions" : "info-positions"}};
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        pts.push_back({{"eb_n0_db", p.eb_n0_db},
                       {"frames", p.frames},
                       {"bit_errors", p.bit_errors},
                       {"frame_errors", p.frame_errors},
                       {"ber", p.ber},
                       {"cer", p.cer}});
    }
    j["points"] = pts;
    return j.dump(2);
}

}  // namespace psc
