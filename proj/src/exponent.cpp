#include "coopnet/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coopnet/analytics.hpp"

namespace coopnet {

double asymptotic_exponent(const ProtocolParams& params) {
    params.validate();
    if (params.alpha == 1.0)
        throw std::domain_error("asymptotic_exponent: alpha must be < 1");
    const ApproxInternals in = solve_gamma_star(params.alpha, params.beta);
    return std::max(0.0, in.exponent_per_node);
}

double ExponentSweep::envelope_at(double rate_fraction) const {
    if (envelope.empty()) return 0.0;
    const int i = std::clamp(static_cast<int>(rate_fraction * bins), 0, bins - 1);
    return envelope[i];
}

ExponentSweep sweep_exponent(double snr, std::span<const double> alphas,
                             std::span<const double> betas, int bins) {
    if (alphas.empty() || betas.empty())
        throw std::domain_error("sweep_exponent: empty parameter grid");
    if (bins < 1) throw std::domain_error("sweep_exponent: bins must be >= 1");

    ExponentSweep sweep;
    sweep.bins = bins;
    sweep.points.reserve(alphas.size() * betas.size());
    for (double a : alphas) {
        for (double b : betas) {
            const ProtocolParams p{a, b, snr};
            p.validate();
            if (a == 1.0)
                throw std::domain_error("sweep_exponent: alpha grid must stay below 1");
            const RateProfile rp = rate_profile(p);
            sweep.points.push_back(SweepPoint{a, b, rp.rate_fraction,
                                              asymptotic_exponent(p)});
        }
    }

    std::vector<double> bin_max(bins, 0.0);
    for (const SweepPoint& pt : sweep.points) {
        const int i = std::clamp(static_cast<int>(pt.rate_fraction * bins), 0, bins - 1);
        bin_max[i] = std::max(bin_max[i], pt.exponent);
    }
    // Suffix maximum: the envelope at r is the best exponent among points
    // achieving rate fraction >= r.
    sweep.envelope.assign(bins, 0.0);
    double running = 0.0;
    for (int i = bins - 1; i >= 0; --i) {
        running = std::max(running, bin_max[i]);
        sweep.envelope[i] = running;
    }
    return sweep;
}

RequiredSize required_network_size(const ProtocolParams& params, CastMode mode,
                                   double target_eps, int k_cap) {
    params.validate();
    if (!(target_eps > 0.0) || !(target_eps <= 1.0))
        throw std::domain_error("required_network_size: target must be in (0,1]");
    if (k_cap < 1) throw std::domain_error("required_network_size: k_cap must be >= 1");

    const double log_target = std::log(target_eps);
    auto meets = [&](int k) { return log_exact_outage(params, k, mode) <= log_target; };

    if (meets(1)) return {1, true};
    int hi = 1;
    while (true) {
        if (hi >= k_cap) return {k_cap, false};
        hi = std::min(hi * 2, k_cap);
        if (meets(hi)) break;
    }
    int lo = hi / 2; // fails; hi meets
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (meets(mid) ? hi : lo) = mid;
    }
    return {hi, true};
}

} // namespace coopnet
