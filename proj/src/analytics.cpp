#include "coopnet/analytics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace coopnet {

namespace {

// Threshold on the raw phase-2 gain sum: listener fails iff sum <= x.
double gain_sum_threshold(const ProtocolParams& params, int k_nodes) {
    return params.alpha * k_nodes * (1.0 - params.beta);
}

} // namespace

double chernoff_gamma_exponent(double beta, double eps) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("chernoff_gamma_exponent: beta must be in (0,1)");
    if (!(eps > 0.0) || !(eps < beta))
        throw std::domain_error("chernoff_gamma_exponent: eps must be in (0,beta)");
    return beta - eps + (1.0 - eps) * std::log((1.0 - beta) / (1.0 - eps));
}

ApproxInternals solve_gamma_star(double alpha, double beta) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("solve_gamma_star: alpha must be in (0,1)");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("solve_gamma_star: beta must be in (0,1)");

    ApproxInternals out{};
    out.mu = alpha * alpha * (1.0 - beta) / (1.0 - alpha);
    // Positive root of gamma^2 + mu*gamma - mu = 0, in all-additions form.
    out.gamma_star = 2.0 * out.mu / (out.mu + std::sqrt(out.mu * (out.mu + 4.0)));

    const double g = clamp_unit_open(out.gamma_star);
    const double a = clamp_unit_open(alpha);
    const double x1 = alpha * (1.0 - beta); // per-node threshold rate
    out.exponent_per_node =
        x1 + binary_relative_entropy(g, a) - g * (std::log(x1 / g) + 1.0);

    // Balance the two bound terms: eps^2/4 = -gamma(beta, eps). The left side
    // increases and gamma increases to 0 at eps = beta, so the root is unique.
    double lo = 0.0, hi = beta;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || mid >= beta) break;
        const double f = mid * mid / 4.0 + chernoff_gamma_exponent(beta, mid);
        (f < 0.0 ? lo : hi) = mid;
    }
    out.chernoff_eps = 0.5 * (lo + hi);
    out.chernoff_gamma = chernoff_gamma_exponent(beta, out.chernoff_eps);
    return out;
}

double log_exact_outage(const ProtocolParams& params, int k_nodes, CastMode mode) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("exact_outage: K must be >= 1");
    if (params.alpha == 1.0) return kNegInf; // every node decodes in phase 1
    if (k_nodes == 1) return std::log1p(-params.alpha); // sole node, no relays

    const double x = gain_sum_threshold(params, k_nodes);
    std::vector<double> terms;

    if (mode == CastMode::kUnicast) {
        // (1-alpha) * sum_k1 Binom(K-1, alpha; k1) * ErlangCdf(k1, x)
        terms.reserve(k_nodes);
        for (int k1 = 0; k1 < k_nodes; ++k1) {
            const double lpmf = log_binomial_pmf(k_nodes - 1, k1, params.alpha).value;
            const double lcdf = erlang_log_cdf(k1, x).log_cdf;
            terms.push_back(lpmf + lcdf);
        }
        return std::log1p(-params.alpha) + logsumexp(terms);
    }

    // sum_k1 Binom(K, alpha; k1) * [1 - (1 - ErlangCdf(k1, x))^(K-k1)]
    terms.reserve(k_nodes + 1);
    for (int k1 = 0; k1 <= k_nodes; ++k1) {
        const int listeners = k_nodes - k1;
        if (listeners == 0) continue; // all decoded: no outage contribution
        const double lpmf = log_binomial_pmf(k_nodes, k1, params.alpha).value;
        const double lsf = erlang_log_cdf(k1, x).log_sf;
        const double lbracket =
            (lsf == kNegInf) ? 0.0 : log1mexp(listeners * lsf);
        terms.push_back(lpmf + lbracket);
    }
    return logsumexp(terms);
}

double exact_outage(const ProtocolParams& params, int k_nodes, CastMode mode) {
    return std::exp(log_exact_outage(params, k_nodes, mode));
}

LogProb chernoff_conditional_bound(double alpha_k, double beta, int k1) {
    if (!(alpha_k > 0.0))
        throw std::domain_error("chernoff_conditional_bound: alpha*K must be > 0");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("chernoff_conditional_bound: beta must be in (0,1)");
    const double x = alpha_k * (1.0 - beta);
    if (k1 < x)
        throw std::domain_error("chernoff_conditional_bound: requires k1 >= alpha*K*(1-beta)");
    const double kk = k1;
    return LogProb{kk * (std::log(x) + 1.0 - std::log(kk)) - x};
}

LogProb chernoff_unicast_bound(const ProtocolParams& params, int k_nodes, double eps) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("chernoff_unicast_bound: K must be >= 1");
    const double ak = params.alpha * k_nodes;
    const double gamma = chernoff_gamma_exponent(params.beta, eps); // validates eps
    return LogProb{logaddexp(-ak * eps * eps / 4.0, ak * gamma)};
}

LogProb chernoff_multicast_bound(const ProtocolParams& params, int k_nodes, double eps) {
    const LogProb uc = chernoff_unicast_bound(params, k_nodes, eps);
    return LogProb{uc.value + std::log(static_cast<double>(k_nodes))};
}

LogProb chernoff_unicast_bound_best(const ProtocolParams& params, int k_nodes,
                                    double* eps_out) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("chernoff_unicast_bound_best: K must be >= 1");
    const double ak = params.alpha * k_nodes;
    const double beta = params.beta;
    auto objective = [&](double eps) {
        return logaddexp(-ak * eps * eps / 4.0,
                         ak * chernoff_gamma_exponent(beta, eps));
    };
    // Golden-section search on (0, beta); the objective is decreasing in the
    // first term and increasing in the second, hence unimodal.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = beta * 1e-12, hi = beta * (1.0 - 1e-12);
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = objective(c), fd = objective(d);
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * beta; ++i) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = objective(d);
        }
    }
    const double eps = 0.5 * (lo + hi);
    if (eps_out) *eps_out = eps;
    return LogProb{objective(eps)};
}

LogProb chernoff_multicast_bound_best(const ProtocolParams& params, int k_nodes,
                                      double* eps_out) {
    const LogProb uc = chernoff_unicast_bound_best(params, k_nodes, eps_out);
    return LogProb{uc.value + std::log(static_cast<double>(k_nodes))};
}

LogProb approx_outage(const ProtocolParams& params, int k_nodes, CastMode mode) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("approx_outage: K must be >= 1");
    const ApproxInternals in = solve_gamma_star(params.alpha, params.beta);
    const double lnk = std::log(static_cast<double>(k_nodes));
    double v = -0.5 * lnk - k_nodes * in.exponent_per_node;
    if (mode == CastMode::kMulticast) v += lnk;
    return LogProb{v};
}

BoundSet compute_bound_set(const ProtocolParams& params, int k_nodes) {
    BoundSet b;
    b.k_nodes = k_nodes;
    b.log_exact_uc = log_exact_outage(params, k_nodes, CastMode::kUnicast);
    b.log_exact_mc = log_exact_outage(params, k_nodes, CastMode::kMulticast);
    b.log_chernoff_uc = chernoff_unicast_bound_best(params, k_nodes, &b.chernoff_eps).value;
    b.log_chernoff_mc = b.log_chernoff_uc + std::log(static_cast<double>(k_nodes));
    b.log_approx_uc = approx_outage(params, k_nodes, CastMode::kUnicast).value;
    b.log_approx_mc = approx_outage(params, k_nodes, CastMode::kMulticast).value;
    const RateProfile rp = rate_profile(params);
    b.converse_floor = converse_outage_floor(rp.r_eff, params.snr);
    return b;
}

std::string bound_set_csv_header() {
    return "K,exact_uc,exact_mc,chernoff_uc,chernoff_mc,approx_uc,approx_mc";
}

std::string bound_set_csv_row(const BoundSet& b) {
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g",
                  b.k_nodes, std::exp(b.log_exact_uc), std::exp(b.log_exact_mc),
                  LogProb{b.log_chernoff_uc}.linear_clamped(),
                  LogProb{b.log_chernoff_mc}.linear_clamped(),
                  LogProb{b.log_approx_uc}.linear_clamped(),
                  LogProb{b.log_approx_mc}.linear_clamped());
    return std::string(buf);
}

} // namespace coopnet
