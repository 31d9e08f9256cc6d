#include "coopnet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coopnet {

void ProtocolParams::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::domain_error("ProtocolParams: alpha must be in (0,1]");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("ProtocolParams: beta must be in (0,1)");
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw std::domain_error("ProtocolParams: snr must be finite and > 0");
}

double gain_threshold(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::domain_error("gain_threshold: alpha must be in (0,1]");
    return -std::log(alpha);
}

RateProfile rate_profile(const ProtocolParams& params) {
    params.validate();
    if (params.alpha == 1.0)
        throw std::domain_error("rate_profile: alpha = 1 gives a zero-rate phase 1");
    RateProfile p{};
    const double g = gain_threshold(params.alpha);
    p.r1 = std::log2(1.0 + g * params.snr);
    p.r2 = std::log2(1.0 + params.snr * (1.0 - params.beta));
    p.r_eff = p.r1 * p.r2 / (p.r1 + p.r2); // 1/r = 1/r1 + 1/r2
    // n1 R1 = n2 R2 with n1 + n2 = n
    p.phase1_fraction = p.r2 / (p.r1 + p.r2);
    p.phase2_fraction = p.r1 / (p.r1 + p.r2);
    p.capacity = std::log2(1.0 + params.snr);
    p.rate_fraction = p.r_eff / p.capacity;
    return p;
}

double phase2_power_per_node(const ProtocolParams& params, int k_nodes,
                             double total_power) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("phase2_power_per_node: K must be >= 1");
    return total_power / (params.alpha * k_nodes);
}

double converse_outage_floor(double rate_bits, double snr) {
    if (!(rate_bits > 0.0))
        throw std::domain_error("converse_outage_floor: rate must be > 0");
    if (!(snr > 0.0))
        throw std::domain_error("converse_outage_floor: snr must be > 0");
    return std::max(0.0, 1.0 - std::log2(1.0 + snr) / rate_bits);
}

double capacity_multiantenna(CastMode mode, std::span<const int> antennas,
                             double snr) {
    if (antennas.empty())
        throw std::domain_error("capacity_multiantenna: empty antenna list");
    for (int t : antennas)
        if (t < 1) throw std::domain_error("capacity_multiantenna: antenna counts must be >= 1");
    const double base = std::log2(1.0 + snr);
    if (mode == CastMode::kUnicast) return antennas.back() * base;
    return *std::min_element(antennas.begin(), antennas.end()) * base;
}

} // namespace coopnet
