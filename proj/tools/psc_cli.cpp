// Command-line front end: construction, certification, analysis, bounds and
// Monte Carlo simulation of punctured simplex LDPC codes.
//
// Exit codes: 0 success, 2 usage or invalid input, 3 resource limit,
// 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psc/channel.hpp"
#include "psc/codec.hpp"
#include "psc/decoder.hpp"
#include "psc/errors.hpp"
#include "psc/gf2.hpp"
#include "psc/matrix.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

psc::gf2_poly parse_poly(const std::string& poly_text, const std::string& support_text) {
    if (poly_text.empty() == support_text.empty())
        throw std::invalid_argument("exactly one of --poly and --support is required");
    if (!poly_text.empty()) return psc::gf2_poly::parse(poly_text);
    std::vector<std::uint32_t> powers;
    std::stringstream ss(support_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        powers.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    if (powers.empty()) throw std::invalid_argument("--support needs at least one power");
    return psc::gf2_poly::from_support(powers);
}

// "start:step:stop" (inclusive stop, within rounding) or a comma list
std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> snrs;
    if (text.find(':') != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("--snr range must be start:step:stop with positive step");
        for (double v = start; v <= stop + 1e-9; v += step) snrs.push_back(v);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) snrs.push_back(std::stod(item));
        }
    }
    if (snrs.empty()) throw std::invalid_argument("--snr list is empty");
    return snrs;
}

// exactly one of n / rate / puncture fixes the length
std::uint32_t resolve_length(const psc::gf2_poly& h, std::optional<std::uint32_t> n,
                             const std::string& rate, std::optional<std::uint32_t> puncture) {
    const int given = int(n.has_value()) + int(!rate.empty()) + int(puncture.has_value());
    if (given != 1)
        throw std::invalid_argument("specify exactly one of --n, --rate, --puncture");
    const std::uint32_t k = static_cast<std::uint32_t>(h.degree());
    if (n) return *n;
    if (puncture) {
        if (k >= 32) throw std::invalid_argument("--puncture needs k < 32 (N = 2^k - 1 overflows)");
        const std::uint32_t full = (1u << k) - 1;
        if (*puncture >= full - k) throw std::invalid_argument("--puncture leaves no parity rows");
        return full - *puncture;
    }
    // rate "num/den", n = k * den / num
    const auto slash = rate.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("--rate must be of the form 1/2");
    const long num = std::stol(rate.substr(0, slash));
    const long den = std::stol(rate.substr(slash + 1));
    if (num <= 0 || den <= 0 || (k * den) % num != 0)
        throw std::invalid_argument("--rate must divide k evenly");
    return static_cast<std::uint32_t>(k * den / num);
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

int cmd_certify(const std::string& poly_text, const std::string& support_text) {
    const auto h = parse_poly(poly_text, support_text);
    nlohmann::json j;
    j["polynomial"] = h.to_binary_string();
    j["hex"] = h.to_hex_string();
    j["degree"] = h.degree();
    j["weight"] = h.weight();
    const auto sup = psc::support(h);
    j["support"] = sup;
    j["differences"] = psc::differences(sup);
    const bool golomb = psc::is_golomb_ruler(sup);
    j["golomb"] = golomb;
    j["rc_constraint"] = golomb;
    try {
        j["primitive"] = psc::is_primitive(h);
    } catch (const psc::resource_limit_error&) {
        // order test out of range: report the ruler facts and leave this open
        j["primitive"] = nullptr;
        j["primitive_note"] = "degree > 64, order test not attempted";
    }
    j["irreducible"] = psc::is_irreducible(h);
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_build(const std::string& poly_text, const std::string& support_text,
              std::optional<std::uint32_t> n, const std::string& rate,
              std::optional<std::uint32_t> puncture, std::optional<std::uint32_t> expand,
              const std::string& rule, bool unchecked, const std::string& alist_path) {
    const auto h = parse_poly(poly_text, support_text);
    const std::uint32_t length = resolve_length(h, n, rate, puncture);
    auto H = psc::build_parity_check(h, length, unchecked);
    if (expand) H = psc::circulant_expand(H, *expand, psc::named_offset_rule(rule), rule);
    std::cout << psc::summary_json(H) << '\n';
    if (!alist_path.empty()) write_output(psc::to_alist(H), alist_path);
    return kExitOk;
}

int cmd_weights(const std::string& poly_text, const std::string& support_text,
                std::optional<std::uint32_t> n, const std::string& rate,
                std::optional<std::uint32_t> puncture, std::uint32_t cap,
                std::optional<std::uint32_t> dstar, const std::string& snr_text,
                const std::string& format, const std::string& out_path) {
    const auto h = parse_poly(poly_text, support_text);
    const std::uint32_t length = resolve_length(h, n, rate, puncture);
    const auto dist = psc::weight_distribution_exact(h, length, {cap, true});

    std::optional<psc::tub_curve> curve;
    if (dstar) {
        if (snr_text.empty()) throw std::invalid_argument("--dstar needs --snr");
        const auto snrs = parse_snr_list(snr_text);
        curve = psc::tub(dist, *dstar, snrs);
    }

    if (format == "json") {
        auto j = nlohmann::json::parse(psc::distribution_to_json(dist, h));
        if (curve) {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& [db, ber] : curve->points) pts.push_back({{"eb_n0_db", db}, {"ber", ber}});
            j["tub"] = {{"d_star", curve->d_star}, {"points", pts}};
        }
        write_output(j.dump(2) + "\n", out_path);
    } else {
        std::string text = psc::distribution_to_csv(dist);
        if (curve) text += "\n" + psc::tub_to_csv(*curve);
        write_output(text, out_path);
    }
    return kExitOk;
}

int cmd_simulate(const std::string& poly_text, const std::string& support_text,
                 std::optional<std::uint32_t> n, const std::string& rate,
                 std::optional<std::uint32_t> puncture, std::optional<std::uint32_t> expand,
                 const std::string& rule, bool unchecked, const std::string& snr_text,
                 std::uint64_t min_frame_errors, std::uint64_t max_frames, std::uint64_t seed,
                 bool all_zero, bool count_all, unsigned iterations, bool uncoded, bool serial,
                 const std::string& format, const std::string& out_path) {
    psc::sim_options opts;
    opts.snr_db = parse_snr_list(snr_text);
    opts.stop = {min_frame_errors, max_frames};
    opts.seed = seed;
    opts.all_zero = all_zero;
    opts.count_all_positions = count_all;
    opts.max_iterations = iterations;
    opts.parallel = !serial;

    psc::simulation_report report;
    if (uncoded) {
        std::uint32_t k = n.value_or(1000);
        report = psc::run_uncoded(k, opts);
    } else {
        const auto h = parse_poly(poly_text, support_text);
        const std::uint32_t length = resolve_length(h, n, rate, puncture);
        if (expand) {
            auto H = psc::build_parity_check(h, length, unchecked);
            H = psc::circulant_expand(H, *expand, psc::named_offset_rule(rule), rule);
            report = psc::run_monte_carlo(H, opts);
        } else if (unchecked) {
            const auto H = psc::build_parity_check(h, length, true);
            report = psc::run_monte_carlo(H, opts);
        } else {
            report = psc::run_monte_carlo(h, length, opts);
        }
    }
    write_output(format == "json" ? report.to_json() + "\n" : report.to_csv(), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"punctured binary simplex codes as LDPC codes"};
    app.require_subcommand(1);

    std::string poly_text, support_text, rate, rule = "paper-c3", snr_text, format = "csv", out_path,
                alist_path;
    std::optional<std::uint32_t> n, puncture, expand, dstar;
    std::uint32_t cap = 26;
    std::uint64_t min_frame_errors = 100, max_frames = 10'000'000, seed = 1;
    unsigned iterations = 100;
    bool unchecked = false, all_zero = false, count_all = false, uncoded = false, serial = false;

    auto add_poly_opts = [&](CLI::App* cmd) {
        cmd->add_option("--poly", poly_text, "seed polynomial, binary string (h_0 first) or 0x-hex");
        cmd->add_option("--support", support_text, "seed as comma-separated powers, e.g. 0,3,7");
    };
    auto add_length_opts = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "code length");
        cmd->add_option("--rate", rate, "code rate as a fraction of k, e.g. 1/2");
        cmd->add_option("--puncture", puncture, "number of row-column eliminations s, n = N - s");
    };

    auto* certify = app.add_subcommand("certify", "primitivity, support and Golomb-ruler report");
    add_poly_opts(certify);
    certify->add_option("polynomial", poly_text, "seed polynomial (same as --poly)");

    auto* build = app.add_subcommand("build", "construct a parity-check matrix and summarize it");
    add_poly_opts(build);
    add_length_opts(build);
    build->add_option("--expand", expand, "circulant expansion factor p");
    build->add_option("--rule", rule, "offset rule: paper-c3 or zero")->capture_default_str();
    build->add_flag("--unchecked", unchecked, "skip the primitivity gate");
    build->add_option("--alist", alist_path, "write the matrix in alist format to this path");

    auto* weights = app.add_subcommand("weights", "exact weight distribution, optional union bound");
    add_poly_opts(weights);
    add_length_opts(weights);
    weights->add_option("--cap", cap, "dimension cap for the 2^k enumeration")->capture_default_str();
    weights->add_option("--dstar", dstar, "truncation weight d* of the union bound");
    weights->add_option("--snr", snr_text, "Eb/N0 list in dB: start:step:stop or comma list");
    weights->add_option("--format", format, "csv or json")->capture_default_str();
    weights->add_option("--out", out_path, "output path (stdout when omitted)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo BER/CER over BPSK/AWGN");
    add_poly_opts(simulate);
    add_length_opts(simulate);
    simulate->add_option("--expand", expand, "circulant expansion factor p");
    simulate->add_option("--rule", rule, "offset rule: paper-c3 or zero")->capture_default_str();
    simulate->add_flag("--unchecked", unchecked, "skip the primitivity gate");
    simulate->add_option("--snr", snr_text, "Eb/N0 list in dB: start:step:stop or comma list")
        ->required();
    simulate->add_option("--min-frame-errors", min_frame_errors, "stop after this many frame errors")
        ->capture_default_str();
    simulate->add_option("--max-frames", max_frames, "hard frame budget per point")
        ->capture_default_str();
    simulate->add_option("--seed", seed, "master seed; identical configs replay bit-exactly")
        ->capture_default_str();
    simulate->add_flag("--all-zero", all_zero, "transmit the all-zero codeword");
    simulate->add_flag("--count-all", count_all, "count bit errors over all n positions");
    simulate->add_option("--iterations", iterations, "sum-product iteration limit")
        ->capture_default_str();
    simulate->add_flag("--uncoded", uncoded, "no code: raw BPSK reference (--n sets bits per frame)");
    simulate->add_flag("--serial", serial, "single-threaded frame loop");
    simulate->add_option("--format", format, "csv or json")->capture_default_str();
    simulate->add_option("--out", out_path, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
        if (certify->parsed()) return cmd_certify(poly_text, support_text);
        if (build->parsed())
            return cmd_build(poly_text, support_text, n, rate, puncture, expand, rule, unchecked,
                             alist_path);
        if (weights->parsed())
            return cmd_weights(poly_text, support_text, n, rate, puncture, cap, dstar, snr_text,
                               format, out_path);
        if (simulate->parsed())
            return cmd_simulate(poly_text, support_text, n, rate, puncture, expand, rule, unchecked,
                                snr_text, min_frame_errors, max_frames, seed, all_zero, count_all,
                                iterations, uncoded, serial, format, out_path);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const psc::resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
