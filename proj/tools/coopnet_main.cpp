// coopnet: experiment driver for the two-phase cooperative protocol outage
// engine. Subcommands turn library calls into reproducible figure/table data;
// every command is deterministic given its full flag set, including the seed.
//
// Exit codes: 0 success, 2 invalid arguments, 3 unattainable target, 4 I/O.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopnet/analytics.hpp"
#include "coopnet/exponent.hpp"
#include "coopnet/montecarlo.hpp"
#include "coopnet/protocol.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnattained = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags shared across subcommands. CLI11 stores into the optionals; values
// the command line did not provide fall back to the --config JSON file, so
// CLI flags override file entries.
struct CommonFlags {
    std::optional<double> alpha, g, beta, snr_db, eps;
    std::optional<int> k, workers, max_k, bins;
    std::optional<std::vector<int>> k_list;
    std::optional<std::uint64_t> trials, seed;
    std::optional<std::string> mode, out, format, config;
    std::optional<double> alpha_min, alpha_max, beta_min, beta_max;
    std::optional<int> alpha_steps, beta_steps;
    std::optional<std::string> out_envelope;
    std::optional<std::vector<int>> antennas;
};

void add_param_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--alpha", f.alpha, "phase-1 decoding fraction target, (0,1)");
    cmd->add_option("--g", f.g, "phase-1 gain threshold G = -ln(alpha); alternative to --alpha");
    cmd->add_option("--beta", f.beta, "phase-2 SNR back-off, (0,1)");
    cmd->add_option("--snr-db", f.snr_db, "SNR in dB (default 0)");
}

void add_io_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--out", f.out, "output path ('-' = stdout, default)");
    cmd->add_option("--format", f.format, "output format");
    cmd->add_option("--config", f.config, "JSON config file; CLI flags override its values");
}

class Merged {
public:
    explicit Merged(const std::optional<std::string>& config_path) {
        if (!config_path) return;
        std::ifstream in(*config_path);
        if (!in) throw IoError("cannot open config file: " + *config_path);
        try {
            in >> cfg_;
        } catch (const std::exception& e) {
            throw UsageError(std::string("config parse error: ") + e.what());
        }
        if (!cfg_.is_object()) throw UsageError("config file must hold a JSON object");
    }

    template <typename T>
    std::optional<T> maybe(const std::optional<T>& cli, const char* key) const {
        if (cli) return cli;
        if (cfg_.contains(key)) {
            try {
                return cfg_.at(key).get<T>();
            } catch (const std::exception&) {
                throw UsageError(std::string("config key has wrong type: ") + key);
            }
        }
        return std::nullopt;
    }

    template <typename T>
    T value(const std::optional<T>& cli, const char* key, T fallback) const {
        auto v = maybe(cli, key);
        return v ? *v : fallback;
    }

    template <typename T>
    T require(const std::optional<T>& cli, const char* key) const {
        auto v = maybe(cli, key);
        if (!v) throw UsageError(std::string("missing required option --") + key);
        return *v;
    }

private:
    nlohmann::json cfg_ = nlohmann::json::object();
};

double snr_from_db(double db) { return std::pow(10.0, db / 10.0); }

// Exactly one of --alpha / --g selects the operating point.
double resolve_alpha(const Merged& m, const CommonFlags& f) {
    const auto a = m.maybe(f.alpha, "alpha");
    const auto g = m.maybe(f.g, "g");
    if (a && g) throw UsageError("give exactly one of --alpha and --g");
    if (a) return *a;
    if (g) {
        if (!(*g >= 0.0)) throw UsageError("--g must be >= 0");
        return std::exp(-*g);
    }
    throw UsageError("one of --alpha or --g is required");
}

coopnet::ProtocolParams resolve_params(const Merged& m, const CommonFlags& f) {
    coopnet::ProtocolParams p{};
    p.alpha = resolve_alpha(m, f);
    p.beta = m.require(f.beta, "beta");
    p.snr = snr_from_db(m.value(f.snr_db, "snr_db", 0.0));
    p.validate();
    return p;
}

std::vector<int> resolve_k_list(const Merged& m, const CommonFlags& f,
                                const std::vector<int>& fallback = {}) {
    const auto k = m.maybe(f.k, "k");
    const auto list = m.maybe(f.k_list, "k_list");
    if (k && list) throw UsageError("give exactly one of --k and --k-list");
    if (k) return {*k};
    if (list) return *list;
    if (!fallback.empty()) return fallback;
    throw UsageError("one of --k or --k-list is required");
}

std::optional<coopnet::CastMode> resolve_mode(const Merged& m, const CommonFlags& f) {
    const auto s = m.maybe(f.mode, "mode");
    if (!s) return std::nullopt;
    if (*s == "uc") return coopnet::CastMode::kUnicast;
    if (*s == "mc") return coopnet::CastMode::kMulticast;
    throw UsageError("--mode must be uc or mc");
}

// Output sink: stdout for "-", else a file; open failures exit with code 4.
class Sink {
public:
    explicit Sink(const std::string& path) : path_(path) {
        if (path_ != "-") {
            file_.open(path_);
            if (!file_) throw IoError("cannot open output file: " + path_);
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
    void finish() {
        stream().flush();
        if (path_ != "-" && !file_) throw IoError("write failure: " + path_);
    }

private:
    std::string path_;
    std::ofstream file_;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void emit_single_point(const json& report, const Merged& m, const CommonFlags& f) {
    const std::string format = m.value(f.format, "format", std::string("json"));
    Sink sink(m.value(f.out, "out", std::string("-")));
    if (format == "json") {
        sink.stream() << report.dump(2) << '\n';
    } else if (format == "text") {
        for (const auto& [key, val] : report.items()) {
            sink.stream() << key << " = "
                          << (val.is_number_float() ? fmt(val.get<double>()) : val.dump())
                          << '\n';
        }
    } else {
        throw UsageError("--format must be json or text for this command");
    }
    sink.finish();
}

const char* mode_name(coopnet::CastMode mode) {
    return mode == coopnet::CastMode::kUnicast ? "uc" : "mc";
}

// ---------------------------------------------------------------- rates ----

int cmd_rates(const CommonFlags& f) {
    Merged m(f.config);
    const coopnet::ProtocolParams p = resolve_params(m, f);
    const coopnet::RateProfile rp = coopnet::rate_profile(p);
    json report{
        {"alpha", p.alpha},
        {"g_threshold", coopnet::gain_threshold(p.alpha)},
        {"beta", p.beta},
        {"snr_db", m.value(f.snr_db, "snr_db", 0.0)},
        {"r1_bits", rp.r1},
        {"r2_bits", rp.r2},
        {"r_eff_bits", rp.r_eff},
        {"capacity_bits", rp.capacity},
        {"rate_fraction", rp.rate_fraction},
        {"phase1_fraction", rp.phase1_fraction},
        {"phase2_fraction", rp.phase2_fraction},
    };
    emit_single_point(report, m, f);
    return kExitOk;
}

// ------------------------------------------------------------- capacity ----

int cmd_capacity(const CommonFlags& f) {
    Merged m(f.config);
    const auto mode = resolve_mode(m, f).value_or(coopnet::CastMode::kUnicast);
    const std::vector<int> antennas =
        m.value(f.antennas, "antennas", std::vector<int>{1});
    const double snr_db = m.value(f.snr_db, "snr_db", 0.0);
    const double cap = coopnet::capacity_multiantenna(mode, antennas, snr_from_db(snr_db));
    json report{
        {"mode", mode_name(mode)},
        {"antennas", antennas},
        {"snr_db", snr_db},
        {"capacity_bits", cap},
    };
    emit_single_point(report, m, f);
    return kExitOk;
}

// ------------------------------------------------------------- simulate ----

int cmd_simulate(const CommonFlags& f) {
    Merged m(f.config);
    const coopnet::ProtocolParams p = resolve_params(m, f);
    const std::vector<int> k_list = resolve_k_list(m, f);
    const std::uint64_t trials = m.value(f.trials, "trials", std::uint64_t{100000});
    const std::uint64_t seed = m.value(f.seed, "seed", std::uint64_t{1});
    const int workers = m.value(f.workers, "workers", 1);
    const auto only_mode = resolve_mode(m, f);

    const auto rows = coopnet::sweep_outage_vs_k(p, k_list, trials, seed, workers);

    const std::string format = m.value(f.format, "format", std::string("csv"));
    Sink sink(m.value(f.out, "out", std::string("-")));
    if (format == "csv") {
        sink.stream() << "# coopnet-csv v1 simulate\n" << coopnet::estimate_csv_header() << '\n';
        for (const auto& row : rows) {
            if (!only_mode || *only_mode == coopnet::CastMode::kUnicast)
                sink.stream() << coopnet::estimate_csv_row(row.k_nodes, row.unicast) << '\n';
            if (!only_mode || *only_mode == coopnet::CastMode::kMulticast)
                sink.stream() << coopnet::estimate_csv_row(row.k_nodes, row.multicast) << '\n';
        }
    } else if (format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            for (const auto* est : {&row.unicast, &row.multicast}) {
                if (only_mode && *only_mode != est->mode) continue;
                arr.push_back(json{{"K", row.k_nodes},
                                   {"mode", mode_name(est->mode)},
                                   {"p_hat", est->p_hat},
                                   {"std_err", est->std_err},
                                   {"ci95_low", est->ci95_low},
                                   {"ci95_high", est->ci95_high},
                                   {"trials", est->trials},
                                   {"seed", est->seed}});
            }
        }
        sink.stream() << arr.dump(2) << '\n';
    } else {
        throw UsageError("--format must be csv or json for simulate");
    }
    sink.finish();
    return kExitOk;
}

// ------------------------------------------------------------ exact --------

int cmd_exact(const CommonFlags& f) {
    Merged m(f.config);
    const coopnet::ProtocolParams p = resolve_params(m, f);
    const std::vector<int> k_list = resolve_k_list(m, f);
    const auto only_mode = resolve_mode(m, f);

    const std::string format = m.value(f.format, "format", std::string("csv"));
    Sink sink(m.value(f.out, "out", std::string("-")));
    json arr = json::array();
    if (format == "csv")
        sink.stream() << "# coopnet-csv v1 exact\nK,mode,p,log_p\n";
    for (int k : k_list) {
        for (auto mode : {coopnet::CastMode::kUnicast, coopnet::CastMode::kMulticast}) {
            if (only_mode && *only_mode != mode) continue;
            const double lp = coopnet::log_exact_outage(p, k, mode);
            if (format == "csv") {
                sink.stream() << k << ',' << mode_name(mode) << ',' << fmt(std::exp(lp))
                              << ',' << fmt(lp) << '\n';
            } else if (format == "json") {
                arr.push_back(json{{"K", k},
                                   {"mode", mode_name(mode)},
                                   {"p", std::exp(lp)},
                                   {"log_p", lp}});
            } else {
                throw UsageError("--format must be csv or json for exact");
            }
        }
    }
    if (format == "json") sink.stream() << arr.dump(2) << '\n';
    sink.finish();
    return kExitOk;
}

// ------------------------------------------------------------ bounds -------

int cmd_bounds(const CommonFlags& f) {
    Merged m(f.config);
    const coopnet::ProtocolParams p = resolve_params(m, f);
    const std::vector<int> k_list = resolve_k_list(m, f);

    const std::string format = m.value(f.format, "format", std::string("csv"));
    Sink sink(m.value(f.out, "out", std::string("-")));
    json arr = json::array();
    if (format == "csv")
        sink.stream() << "# coopnet-csv v1 bounds\n" << coopnet::bound_set_csv_header() << '\n';
    for (int k : k_list) {
        const coopnet::BoundSet b = coopnet::compute_bound_set(p, k);
        if (format == "csv") {
            sink.stream() << coopnet::bound_set_csv_row(b) << '\n';
        } else if (format == "json") {
            arr.push_back(json{{"K", b.k_nodes},
                               {"log_exact_uc", b.log_exact_uc},
                               {"log_exact_mc", b.log_exact_mc},
                               {"log_chernoff_uc", b.log_chernoff_uc},
                               {"log_chernoff_mc", b.log_chernoff_mc},
                               {"log_approx_uc", b.log_approx_uc},
                               {"log_approx_mc", b.log_approx_mc},
                               {"chernoff_eps", b.chernoff_eps},
                               {"converse_floor", b.converse_floor}});
        } else {
            throw UsageError("--format must be csv or json for bounds");
        }
    }
    if (format == "json") sink.stream() << arr.dump(2) << '\n';
    sink.finish();
    return kExitOk;
}

// ------------------------------------------------------------ figure2 ------

int cmd_figure2(const CommonFlags& f) {
    Merged m(f.config);
    // Default operating point: G(alpha) = 1/2, beta = 1/2 at 0 dB.
    CommonFlags defaults = f;
    if (!m.maybe(f.alpha, "alpha") && !m.maybe(f.g, "g")) defaults.g = 0.5;
    if (!m.maybe(f.beta, "beta")) defaults.beta = 0.5;
    const coopnet::ProtocolParams p = resolve_params(m, defaults);

    const std::vector<int> k_list =
        resolve_k_list(m, f, std::vector<int>{10, 20, 40, 80, 160, 320});
    const std::uint64_t trials = m.value(f.trials, "trials", std::uint64_t{30000});
    const std::uint64_t seed = m.value(f.seed, "seed", std::uint64_t{1});
    const int workers = m.value(f.workers, "workers", 1);

    const auto rows = coopnet::sweep_outage_vs_k(p, k_list, trials, seed, workers);

    Sink sink(m.value(f.out, "out", std::string("-")));
    sink.stream() << "# coopnet-csv v1 figure2\n"
                     "K,sim_uc,sim_uc_stderr,sim_mc,sim_mc_stderr,"
                     "exact_uc,exact_mc,chernoff_uc,chernoff_mc,"
                     "approx_uc,approx_mc,trials,seed\n";
    for (const auto& row : rows) {
        const coopnet::BoundSet b = coopnet::compute_bound_set(p, row.k_nodes);
        sink.stream() << row.k_nodes << ',' << fmt(row.unicast.p_hat) << ','
                      << fmt(row.unicast.std_err) << ',' << fmt(row.multicast.p_hat)
                      << ',' << fmt(row.multicast.std_err) << ','
                      << fmt(std::exp(b.log_exact_uc)) << ','
                      << fmt(std::exp(b.log_exact_mc)) << ','
                      << fmt(coopnet::LogProb{b.log_chernoff_uc}.linear_clamped()) << ','
                      << fmt(coopnet::LogProb{b.log_chernoff_mc}.linear_clamped()) << ','
                      << fmt(coopnet::LogProb{b.log_approx_uc}.linear_clamped()) << ','
                      << fmt(coopnet::LogProb{b.log_approx_mc}.linear_clamped()) << ','
                      << row.unicast.trials << ',' << row.unicast.seed << '\n';
    }
    sink.finish();
    return kExitOk;
}

// ------------------------------------------------------------ figure3 ------

std::vector<double> log_spaced(double lo, double hi, int steps) {
    if (!(lo > 0.0) || !(hi > lo) || steps < 2)
        throw UsageError("grid requires 0 < min < max and steps >= 2");
    std::vector<double> v(steps);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < steps; ++i)
        v[i] = std::exp(llo + (lhi - llo) * i / (steps - 1));
    return v;
}

int cmd_figure3(const CommonFlags& f) {
    Merged m(f.config);
    const double snr = snr_from_db(m.value(f.snr_db, "snr_db", 0.0));
    const auto alphas = log_spaced(m.value(f.alpha_min, "alpha_min", 1e-6),
                                   m.value(f.alpha_max, "alpha_max", 0.999),
                                   m.value(f.alpha_steps, "alpha_steps", 100));
    const auto betas = log_spaced(m.value(f.beta_min, "beta_min", 1e-6),
                                  m.value(f.beta_max, "beta_max", 0.999),
                                  m.value(f.beta_steps, "beta_steps", 100));
    const int bins = m.value(f.bins, "bins", 100);

    const coopnet::ExponentSweep sweep = coopnet::sweep_exponent(snr, alphas, betas, bins);

    Sink points(m.value(f.out, "out", std::string("coopnet_figure3_points.csv")));
    points.stream() << "# coopnet-csv v1 figure3-points\nalpha,beta,rate_fraction,exponent\n";
    for (const auto& pt : sweep.points) {
        points.stream() << fmt(pt.alpha) << ',' << fmt(pt.beta) << ','
                        << fmt(pt.rate_fraction) << ',' << fmt(pt.exponent) << '\n';
    }
    points.finish();

    Sink env(m.value(f.out_envelope, "out_envelope",
                     std::string("coopnet_figure3_envelope.csv")));
    env.stream() << "# coopnet-csv v1 figure3-envelope\nr_bin,envelope_exponent\n";
    for (int i = 0; i < sweep.bins; ++i) {
        env.stream() << fmt(sweep.bin_low_edge(i)) << ',' << fmt(sweep.envelope[i]) << '\n';
    }
    env.finish();
    return kExitOk;
}

// ---------------------------------------------------------- required-k -----

int cmd_required_k(const CommonFlags& f) {
    Merged m(f.config);
    const coopnet::ProtocolParams p = resolve_params(m, f);
    const double eps = m.require(f.eps, "eps");
    const int max_k = m.value(f.max_k, "max_k", 1000000);

    const auto uc = coopnet::required_network_size(p, coopnet::CastMode::kUnicast, eps, max_k);
    const auto mc = coopnet::required_network_size(p, coopnet::CastMode::kMulticast, eps, max_k);
    const double exponent = coopnet::asymptotic_exponent(p);

    json report{
        {"eps", eps},
        {"k_uc", uc.k_nodes},
        {"k_uc_attained", uc.attained},
        {"k_mc", mc.k_nodes},
        {"k_mc_attained", mc.attained},
        {"exponent_nats_per_node", exponent},
    };
    if (uc.attained && mc.attained) {
        const double measured = mc.k_nodes - uc.k_nodes;
        const double predicted = std::log(static_cast<double>(uc.k_nodes)) / exponent;
        report["measured_gap"] = measured;
        report["predicted_gap"] = predicted;
        report["relative_gap_error"] = (measured - predicted) / predicted;
    }
    emit_single_point(report, m, f);
    return (uc.attained && mc.attained) ? kExitOk : kExitUnattained;
}

// ------------------------------------------------------------ exponent -----

int cmd_exponent(const CommonFlags& f) {
    Merged m(f.config);
    const coopnet::ProtocolParams p = resolve_params(m, f);
    const coopnet::ApproxInternals in = coopnet::solve_gamma_star(p.alpha, p.beta);
    const coopnet::RateProfile rp = coopnet::rate_profile(p);
    const double g = in.gamma_star;
    // Alternate quadratic-root form; fails the gamma^2/(1-gamma) = mu check
    // and is emitted only for comparison.
    const double gamma_alt = (std::sqrt(1.0 + 4.0 * in.mu) - 1.0) / (2.0 * in.mu);
    // Decay rate of the optimized two-term bound: at the balancing epsilon
    // both terms fall like exp(-alpha K eps^2/4).
    const double chernoff_exponent = p.alpha * in.chernoff_eps * in.chernoff_eps / 4.0;
    json report{
        {"alpha", p.alpha},
        {"beta", p.beta},
        {"snr_db", m.value(f.snr_db, "snr_db", 0.0)},
        {"rate_fraction", rp.rate_fraction},
        {"mu", in.mu},
        {"gamma_star", in.gamma_star},
        {"gamma_star_residual", g * g / (1.0 - g) - in.mu},
        {"gamma_alt_form", gamma_alt},
        {"exponent_nats_per_node", in.exponent_per_node},
        {"chernoff_eps", in.chernoff_eps},
        {"chernoff_gamma", in.chernoff_gamma},
        {"chernoff_exponent_nats_per_node", chernoff_exponent},
        {"chernoff_exponent_below_stationary", chernoff_exponent < in.exponent_per_node},
    };
    emit_single_point(report, m, f);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage analysis for the two-phase cooperative protocol in "
                 "large Rayleigh-fading networks"};
    app.require_subcommand(1);

    CommonFlags f;

    CLI::App* rates = app.add_subcommand("rates", "phase rates, effective rate, and time split");
    add_param_flags(rates, f);
    add_io_flags(rates, f);

    CLI::App* capacity = app.add_subcommand("capacity", "(multi-antenna) capacity");
    capacity->add_option("--mode", f.mode, "uc or mc");
    capacity->add_option("--antennas", f.antennas, "antenna count per node; last = destination");
    capacity->add_option("--snr-db", f.snr_db, "SNR in dB (default 0)");
    add_io_flags(capacity, f);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo outage estimates");
    add_param_flags(simulate, f);
    simulate->add_option("--k", f.k, "network size");
    simulate->add_option("--k-list", f.k_list, "network sizes");
    simulate->add_option("--trials", f.trials, "trials per K (default 1e5)");
    simulate->add_option("--seed", f.seed, "RNG seed (default 1)");
    simulate->add_option("--workers", f.workers, "worker threads; <=0 = hardware");
    simulate->add_option("--mode", f.mode, "restrict output to uc or mc");
    add_io_flags(simulate, f);

    CLI::App* exact = app.add_subcommand("exact", "exact semi-analytic outage");
    add_param_flags(exact, f);
    exact->add_option("--k", f.k, "network size");
    exact->add_option("--k-list", f.k_list, "network sizes");
    exact->add_option("--mode", f.mode, "restrict output to uc or mc");
    add_io_flags(exact, f);

    CLI::App* bounds = app.add_subcommand("bounds", "exact values, Chernoff bounds, approximations");
    add_param_flags(bounds, f);
    bounds->add_option("--k", f.k, "network size");
    bounds->add_option("--k-list", f.k_list, "network sizes");
    add_io_flags(bounds, f);

    CLI::App* figure2 = app.add_subcommand(
        "figure2", "outage vs network size: simulation, exact, bounds, approximations");
    add_param_flags(figure2, f);
    figure2->add_option("--k-list", f.k_list, "network sizes (default 10..320)");
    figure2->add_option("--trials", f.trials, "trials per K (default 3e4)");
    figure2->add_option("--seed", f.seed, "RNG seed (default 1)");
    figure2->add_option("--workers", f.workers, "worker threads");
    add_io_flags(figure2, f);

    CLI::App* figure3 = app.add_subcommand(
        "figure3", "scaling-exponent sweep over (alpha, beta) with upper envelope");
    figure3->add_option("--snr-db", f.snr_db, "SNR in dB (default 0)");
    figure3->add_option("--alpha-min", f.alpha_min, "alpha grid minimum (default 1e-6)");
    figure3->add_option("--alpha-max", f.alpha_max, "alpha grid maximum (default 0.999)");
    figure3->add_option("--alpha-steps", f.alpha_steps, "alpha grid size (default 100)");
    figure3->add_option("--beta-min", f.beta_min, "beta grid minimum (default 1e-6)");
    figure3->add_option("--beta-max", f.beta_max, "beta grid maximum (default 0.999)");
    figure3->add_option("--beta-steps", f.beta_steps, "beta grid size (default 100)");
    figure3->add_option("--bins", f.bins, "envelope bins over (0,1) (default 100)");
    figure3->add_option("--out-envelope", f.out_envelope, "envelope CSV path");
    add_io_flags(figure3, f);

    CLI::App* required = app.add_subcommand("required-k", "network size needed for a target outage");
    add_param_flags(required, f);
    required->add_option("--eps", f.eps, "target outage probability");
    required->add_option("--max-k", f.max_k, "search cap (default 1e6)");
    add_io_flags(required, f);

    CLI::App* exponent = app.add_subcommand("exponent", "asymptotic scaling exponent internals");
    add_param_flags(exponent, f);
    add_io_flags(exponent, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rates->parsed()) return cmd_rates(f);
        if (capacity->parsed()) return cmd_capacity(f);
        if (simulate->parsed()) return cmd_simulate(f);
        if (exact->parsed()) return cmd_exact(f);
        if (bounds->parsed()) return cmd_bounds(f);
        if (figure2->parsed()) return cmd_figure2(f);
        if (figure3->parsed()) return cmd_figure3(f);
        if (required->parsed()) return cmd_required_k(f);
        if (exponent->parsed()) return cmd_exponent(f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
