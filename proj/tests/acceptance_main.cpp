// Acceptance suite: runs every exit criterion end to end at its stated
// tolerance and prints one pass/fail line per criterion.
//
//   usage: acceptance [criterion-number ...]     (default: all 12)
//
// Exit status 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coopnet/analytics.hpp"
#include "coopnet/exponent.hpp"
#include "coopnet/montecarlo.hpp"
#include "coopnet/protocol.hpp"
#include "coopnet/rng.hpp"

#include "oracles.hpp"

using namespace coopnet;
namespace fs = std::filesystem;

namespace {

const double kAlphaFig = std::exp(-0.5); // G(alpha) = 1/2
const ProtocolParams kFigPoint{kAlphaFig, 0.5, 1.0};

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += msg;
        }
    }
    void note(const std::string& msg) {
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- criterion 1: Monte Carlo vs exact formula, 3 settings x 5 sizes -------

Check criterion1() {
    Check c;
    const std::vector<ProtocolParams> settings = {
        kFigPoint, {0.35, 0.3, 1.0}, {0.85, 0.15, 1.0}};
    const std::vector<int> ks = {2, 5, 20, 50, 100};
    const std::uint64_t trials = 1000000;
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t seed = 1000;
    double worst_sigma = 0.0;
    for (const auto& p : settings) {
        for (int k : ks) {
            const EstimatePair est = estimate_outage(p, k, trials, ++seed, 0);
            for (auto mode : {CastMode::kUnicast, CastMode::kMulticast}) {
                const double exact = exact_outage(p, k, mode);
                const double phat =
                    (mode == CastMode::kUnicast ? est.unicast : est.multicast).p_hat;
                const double se = std::sqrt(exact * (1.0 - exact) / trials);
                const double dev = std::abs(phat - exact);
                if (se > 0.0) worst_sigma = std::max(worst_sigma, dev / se);
                c.require(dev <= 3.0 * se,
                          "K=" + std::to_string(k) + " alpha=" + num(p.alpha) +
                              (mode == CastMode::kUnicast ? " uc" : " mc") +
                              " dev=" + num(dev) + " > 3se=" + num(3.0 * se));
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 120.0, "runtime " + num(secs) + "s exceeds 120s");
    c.note("worst |dev|/se = " + num(worst_sigma) + ", runtime " + num(secs) + "s");
    return c;
}

// --- criterion 2: K=2 closed forms to 1e-9 ---------------------------------

Check criterion2() {
    Check c;
    const std::vector<ProtocolParams> settings = {
        kFigPoint, {0.35, 0.3, 1.0}, {0.85, 0.15, 1.0}};
    for (const auto& p : settings) {
        const double uc = exact_outage(p, 2, CastMode::kUnicast);
        const double mc = exact_outage(p, 2, CastMode::kMulticast);
        c.require(std::abs(uc - oracles::k2_unicast_closed(p.alpha, p.beta)) <= 1e-9,
                  "uc closed-form mismatch at alpha=" + num(p.alpha));
        c.require(std::abs(mc - oracles::k2_multicast_closed(p.alpha, p.beta)) <= 1e-9,
                  "mc closed-form mismatch at alpha=" + num(p.alpha));
    }
    const double uc_fig = exact_outage(kFigPoint, 2, CastMode::kUnicast);
    const double mc_fig = exact_outage(kFigPoint, 2, CastMode::kMulticast);
    c.require(std::abs(uc_fig - 0.263347338) <= 1e-6, "uc anchor");
    c.require(std::abs(mc_fig - 0.371876554) <= 1e-6, "mc anchor");
    c.note("uc=" + num(uc_fig) + " mc=" + num(mc_fig));
    return c;
}

// --- criterion 3: bound validity on a 10x10x5 grid --------------------------

Check criterion3() {
    Check c;
    int bound_cells = 0, cond_cells = 0;
    for (int i = 0; i < 10 && c.ok; ++i) {
        for (int j = 0; j < 10 && c.ok; ++j) {
            const double a = 0.05 + 0.1 * i, b = 0.05 + 0.1 * j;
            const ProtocolParams p{a, b, 1.0};
            for (int k : {2, 10, 50, 200, 1000}) {
                const double luc = log_exact_outage(p, k, CastMode::kUnicast);
                const double lmc = log_exact_outage(p, k, CastMode::kMulticast);
                const double buc = chernoff_unicast_bound_best(p, k).value;
                const double bmc = buc + std::log(static_cast<double>(k));
                if (buc <= 0.0) {
                    ++bound_cells;
                    c.require(buc >= luc - 1e-12,
                              "uc bound below exact at a=" + num(a) + " b=" + num(b) +
                                  " K=" + std::to_string(k));
                }
                if (bmc <= 0.0) {
                    c.require(bmc >= lmc - 1e-12,
                              "mc bound below exact at a=" + num(a) + " b=" + num(b) +
                                  " K=" + std::to_string(k));
                }
                // conditional bound vs Erlang CDF on the lemma's domain
                const double x = a * k * (1.0 - b);
                const int k_lo = std::max(1, static_cast<int>(std::ceil(x)));
                for (int k1 = k_lo; k1 <= k_lo + 10; ++k1) {
                    ++cond_cells;
                    const double bound = chernoff_conditional_bound(a * k, b, k1).value;
                    const double exact = erlang_log_cdf(k1, x).log_cdf;
                    c.require(bound >= exact - 1e-12,
                              "conditional bound below Erlang CDF at k1=" +
                                  std::to_string(k1));
                }
            }
        }
    }
    c.note(std::to_string(bound_cells) + " meaningful bound cells, " +
           std::to_string(cond_cells) + " conditional points");
    return c;
}

// --- criterion 4: multicast/unicast ratio ~ K at K=500 ----------------------

Check criterion4() {
    Check c;
    const int k = 500;
    const double ratio = std::exp(log_exact_outage(kFigPoint, k, CastMode::kMulticast) -
                                  log_exact_outage(kFigPoint, k, CastMode::kUnicast));
    c.require(ratio >= k / 2.0 && ratio <= 2.0 * k,
              "ratio " + num(ratio) + " outside [250, 1000]");
    c.note("exact_mc/exact_uc = " + num(ratio) + " at K=500");
    return c;
}

// --- criterion 5: approximation within a factor of 5 for K >= 200 -----------

Check criterion5() {
    Check c;
    for (int k : {200, 350, 500, 1000}) {
        const double ratio =
            std::exp(approx_outage(kFigPoint, k, CastMode::kUnicast).value -
                      log_exact_outage(kFigPoint, k, CastMode::kUnicast));
        c.require(ratio >= 0.2 && ratio <= 5.0,
                  "approx/exact = " + num(ratio) + " at K=" + std::to_string(k));
        if (k == 500) c.note("approx_uc/exact_uc = " + num(ratio) + " at K=500");
    }
    return c;
}

// --- criterion 6: asymptotic slopes of the log-outage curves ----------------

Check criterion6() {
    Check c;
    const double e_analytic = asymptotic_exponent(kFigPoint);
    const double s_uc = -(log_exact_outage(kFigPoint, 4000, CastMode::kUnicast) -
                          log_exact_outage(kFigPoint, 2000, CastMode::kUnicast)) /
                        2000.0;
    const double s_mc = -(log_exact_outage(kFigPoint, 4000, CastMode::kMulticast) -
                          log_exact_outage(kFigPoint, 2000, CastMode::kMulticast)) /
                        2000.0;
    c.require(std::abs(s_uc - s_mc) / s_uc <= 0.05, "uc/mc slope gap > 5%");
    c.require(std::abs(s_uc - e_analytic) / e_analytic <= 0.10, "uc slope vs exponent > 10%");
    c.require(std::abs(s_mc - e_analytic) / e_analytic <= 0.10, "mc slope vs exponent > 10%");
    c.note("slope_uc=" + num(s_uc) + " slope_mc=" + num(s_mc) +
           " exponent=" + num(e_analytic));
    return c;
}

// --- criterion 7: stationarity of gamma_star --------------------------------

Check criterion7() {
    Check c;
    for (int i = 1; i <= 50; ++i) {
        for (int j = 1; j <= 50; ++j) {
            const double a = i / 51.0, b = j / 51.0;
            const ApproxInternals in = solve_gamma_star(a, b);
            const double g = in.gamma_star;
            c.require(std::abs(g * g / (1.0 - g) - in.mu) < 1e-10,
                      "residual at a=" + num(a) + " b=" + num(b));
            c.require(g > a * (1.0 - b) && g < 1.0,
                      "gamma outside (alpha(1-beta), 1) at a=" + num(a) + " b=" + num(b));
            if (!c.ok) return c;
        }
    }
    for (const auto& p : {kFigPoint, ProtocolParams{0.3, 0.6, 1.0},
                          ProtocolParams{0.7, 0.25, 1.0}}) {
        const ApproxInternals in = solve_gamma_star(p.alpha, p.beta);
        const auto grid = oracles::exponent_grid_search(p.alpha, p.beta, 10000);
        c.require(std::abs(grid.gamma - in.gamma_star) <= grid.step,
                  "grid maximizer disagrees at alpha=" + num(p.alpha));
    }
    c.note("50x50 grid residuals < 1e-10; 1e4-point grid search agrees");
    return c;
}

// --- criterion 8: achievability trend under alpha=1/lnK, beta=1/K -----------

Check criterion8() {
    Check c;
    std::string trace;
    double prev_mc = 2.0, prev_r = 0.0, last_mc = 1.0;
    for (double kd : {1e2, 1e3, 1e4, 1e5}) {
        const int k = static_cast<int>(kd);
        const ProtocolParams p{1.0 / std::log(kd), 1.0 / kd, 1.0};
        const double mc = exact_outage(p, k, CastMode::kMulticast);
        const double r = rate_profile(p).rate_fraction;
        c.require(r > prev_r, "rate_fraction not strictly increasing at K=" + std::to_string(k));
        c.require(mc < prev_mc, "exact_mc not strictly decreasing at K=" + std::to_string(k));
        trace += " K=" + std::to_string(k) + ": mc=" + num(mc) + " r=" + num(r);
        prev_mc = mc;
        prev_r = r;
        last_mc = mc;
    }
    c.require(last_mc < 1e-2, "exact_mc(1e5) = " + num(last_mc) + " >= 1e-2");
    c.note(trace);
    return c;
}

// --- criterion 9: converse floor and K-free cooperation-free outage ---------

Check criterion9() {
    Check c;
    const double floor = converse_outage_floor(1.25, 1.0);
    c.require(std::abs(floor - 0.2) <= 1e-15, "floor = " + num(floor) + " != 0.2");

    const double rate = 1.25, snr = 1.0;
    const double p_true = -std::expm1(-(std::exp2(rate) - 1.0) / snr);
    const OutageEstimate at_k10 =
        estimate_direct_outage(rate, snr, 400000, derive_seed(9, 10));
    const OutageEstimate at_k1000 =
        estimate_direct_outage(rate, snr, 400000, derive_seed(9, 1000));
    const double mutual_se = std::sqrt(at_k10.std_err * at_k10.std_err +
                                       at_k1000.std_err * at_k1000.std_err);
    c.require(std::abs(at_k10.p_hat - at_k1000.p_hat) <= 3.0 * mutual_se,
              "estimates differ across K labels");
    for (const auto& est : {at_k10, at_k1000}) {
        c.require(std::abs(est.p_hat - p_true) <= 3.0 * est.std_err,
                  "estimate off the closed form");
        c.require(est.p_hat >= floor, "estimate below the converse floor");
    }
    c.note("floor=0.2, direct-link outage " + num(at_k10.p_hat) + " / " +
           num(at_k1000.p_hat) + " (closed form " + num(p_true) + ")");
    return c;
}

// --- criterion 10: network-size gap prediction -------------------------------

Check criterion10() {
    Check c;
    const double e = asymptotic_exponent(kFigPoint);
    const auto uc = required_network_size(kFigPoint, CastMode::kUnicast, 1e-3);
    const auto mc = required_network_size(kFigPoint, CastMode::kMulticast, 1e-3);
    c.require(uc.attained && mc.attained, "targets not attained");
    const double measured = mc.k_nodes - uc.k_nodes;
    const double predicted = std::log(static_cast<double>(uc.k_nodes)) / e;
    const double rel = std::abs(measured - predicted) / predicted;
    c.require(rel <= 0.25, "relative gap error " + num(rel) + " > 25%");
    c.note("K_uc=" + std::to_string(uc.k_nodes) + " K_mc=" + std::to_string(mc.k_nodes) +
           " measured gap=" + num(measured) + " predicted=" + num(predicted) +
           " rel err=" + num(rel));
    return c;
}

// --- criterion 11: byte-identical CLI output across workers -----------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(COOPNET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

Check criterion11() {
    Check c;
    const fs::path dir = fs::current_path() / "acceptance_scratch";
    fs::create_directories(dir);

    auto bytes_for_workers = [&](const std::string& base, const std::string& tag,
                                 int workers) -> std::string {
        const fs::path out = dir / (tag + "_w" + std::to_string(workers) + ".out");
        const int rc =
            run_cli(base + " --workers " + std::to_string(workers) + " --out " + out.string());
        if (rc != 0) {
            c.require(false, tag + " exited nonzero");
            return "";
        }
        return slurp(out);
    };

    const std::string sim =
        "simulate --g 0.5 --beta 0.5 --snr-db 0 --k-list 10 20 --trials 3000 --seed 7";
    const std::string s1 = bytes_for_workers(sim, "sim", 1);
    c.require(!s1.empty() && s1 == bytes_for_workers(sim, "sim", 2) &&
                  s1 == bytes_for_workers(sim, "sim", 8),
              "simulate bytes differ across workers");

    const std::string fig2 = "figure2 --k-list 10 20 --trials 2000 --seed 3";
    const std::string f1 = bytes_for_workers(fig2, "fig2", 1);
    c.require(!f1.empty() && f1 == bytes_for_workers(fig2, "fig2", 2) &&
                  f1 == bytes_for_workers(fig2, "fig2", 8),
              "figure2 bytes differ across workers");

    // commands without Monte Carlo content must be rerun-identical too
    const std::vector<std::pair<std::string, std::string>> pure = {
        {"rates", "rates --g 0.5 --beta 0.5 --snr-db 0"},
        {"exact", "exact --g 0.5 --beta 0.5 --k-list 10 20"},
        {"bounds", "bounds --g 0.5 --beta 0.5 --k-list 10 20"},
        {"exponent", "exponent --g 0.5 --beta 0.5"},
        {"required_k", "required-k --g 0.5 --beta 0.5 --eps 1e-2"},
    };
    for (const auto& [tag, cmd] : pure) {
        const fs::path o1 = dir / (tag + "_r1.out"), o2 = dir / (tag + "_r2.out");
        c.require(run_cli(cmd + " --out " + o1.string()) == 0, tag + " run 1 failed");
        c.require(run_cli(cmd + " --out " + o2.string()) == 0, tag + " run 2 failed");
        c.require(slurp(o1) == slurp(o2), tag + " reruns differ");
    }

    const std::string f3 =
        "figure3 --alpha-min 1e-4 --alpha-max 0.99 --alpha-steps 12 "
        "--beta-min 1e-4 --beta-max 0.99 --beta-steps 12 --bins 40";
    const fs::path p1 = dir / "f3p1.csv", p2 = dir / "f3p2.csv";
    const fs::path e1 = dir / "f3e1.csv", e2 = dir / "f3e2.csv";
    c.require(run_cli(f3 + " --out " + p1.string() + " --out-envelope " + e1.string()) == 0,
              "figure3 run 1 failed");
    c.require(run_cli(f3 + " --out " + p2.string() + " --out-envelope " + e2.string()) == 0,
              "figure3 run 2 failed");
    c.require(slurp(p1) == slurp(p2) && slurp(e1) == slurp(e2), "figure3 reruns differ");

    if (c.ok) c.note("simulate/figure2 identical across workers {1,2,8}; reruns identical");
    return c;
}

// --- criterion 12: phase-2 power accounting ----------------------------------

Check criterion12() {
    Check c;
    const int k = 100;
    const std::uint64_t trials = 100000;
    const EstimatePair est = estimate_outage(kFigPoint, k, trials, 2027, 0);
    // power = k1/(alpha K) per trial; Var = (1-alpha)/(alpha K) over trials
    const double sigma =
        std::sqrt((1.0 - kAlphaFig) / (kAlphaFig * k * static_cast<double>(trials)));
    const double dev = std::abs(est.mean_phase2_power - 1.0);
    c.require(dev <= 3.0 * sigma,
              "mean power deviates " + num(dev) + " > 3 sigma = " + num(3.0 * sigma));
    c.note("mean phase-2 sum power = " + num(est.mean_phase2_power) + " of budget, 3sigma=" +
           num(3.0 * sigma));
    return c;
}

struct Criterion {
    int id;
    const char* title;
    Check (*fn)();
};

const Criterion kCriteria[] = {
    {1, "Monte Carlo agrees with exact formula (3 settings x K in {2,5,20,50,100}, 1e6 trials, 3se)", criterion1},
    {2, "exact outage at K=2 matches hand-expanded closed forms to 1e-9", criterion2},
    {3, "Chernoff bounds dominate exact values; conditional bound dominates Erlang CDF", criterion3},
    {4, "multicast/unicast outage ratio within [K/2, 2K] at K=500", criterion4},
    {5, "approximation within a factor of 5 of exact for K >= 200", criterion5},
    {6, "log-outage slopes: uc vs mc within 5%, both within 10% of the exponent", criterion6},
    {7, "gamma_star stationarity residual < 1e-10 and grid-search agreement", criterion7},
    {8, "achievability schedule alpha=1/lnK, beta=1/K: exact_mc decreasing to < 1e-2", criterion8},
    {9, "converse floor = 0.2 at R=1.25, 0 dB; cooperation-free outage K-independent", criterion9},
    {10, "required-size gap K_mc - K_uc within 25% of (1/E) ln K_uc at eps=1e-3", criterion10},
    {11, "CLI outputs byte-identical across workers {1,2,8} and across reruns", criterion11},
    {12, "mean simulated phase-2 sum power within 3 sigma of the budget at K=100", criterion12},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0, ran = 0;
    for (const Criterion& cr : kCriteria) {
        if (!selected.empty() && !selected.count(cr.id)) continue;
        ++ran;
        Check result;
        try {
            result = cr.fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        failures += result.ok ? 0 : 1;
        std::printf("%s criterion %2d: %s%s%s\n", result.ok ? "PASS" : "FAIL", cr.id,
                    cr.title, result.detail.empty() ? "" : " | ",
                    result.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
