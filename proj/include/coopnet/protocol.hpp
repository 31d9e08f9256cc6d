#ifndef COOPNET_PROTOCOL_HPP
#define COOPNET_PROTOCOL_HPP

#include <span>

// Closed-form quantities of the two-phase cooperative protocol: gain
// threshold, phase rates, effective rate and time split, per-node phase-2
// power, capacities, and the cooperation-free converse floor.
//
// Units: communication rates are in bits per channel use (log base 2);
// SNR is the linear power ratio P/N0.

namespace coopnet {

enum class CastMode { kUnicast, kMulticast };

/// The design pair (alpha, beta) plus SNR; source of all rate/threshold
/// quantities. alpha is the target fraction of phase-1 decoders, beta the
/// phase-2 SNR back-off.
struct ProtocolParams {
    double alpha; // (0, 1]
    double beta;  // (0, 1)
    double snr;   // P/N0 > 0, linear

    /// Throws std::domain_error when any field is outside its range.
    void validate() const;
};

/// Rates and time split implied by one ProtocolParams.
/// Invariants: 1/r_eff = 1/r1 + 1/r2; phase fractions sum to 1 and satisfy
/// phase1_fraction * r1 = phase2_fraction * r2 (equal per-phase payload).
struct RateProfile {
    double r1;              // phase-1 broadcast rate, bits/use
    double r2;              // phase-2 relay-array rate, bits/use
    double r_eff;           // overall effective rate, bits/use
    double phase1_fraction; // n1/n
    double phase2_fraction; // n2/n
    double capacity;        // log2(1+snr), bits/use
    double rate_fraction;   // r_eff / capacity, in (0,1)
};

/// Phase-1 gain threshold G(alpha) = -ln(alpha): the (1-alpha)-quantile of
/// the unit-mean exponential |h|^2 distribution. Requires 0 < alpha <= 1.
double gain_threshold(double alpha);

/// Full rate profile; rejects alpha == 1 (zero-rate phase 1 makes the
/// harmonic combination degenerate).
RateProfile rate_profile(const ProtocolParams& params);

/// Per-relay phase-2 power P/(alpha*K). With E[K1] = alpha*K relays
/// transmitting this meets the expected sum-power budget.
double phase2_power_per_node(const ProtocolParams& params, int k_nodes,
                             double total_power);

/// K-independent lower bound on MISO (hence unicast and multicast) outage:
/// max(0, 1 - log2(1+snr)/rate). Zero at and below capacity, positive above.
double converse_outage_floor(double rate_bits, double snr);

/// Multi-antenna capacity: unicast is limited by the destination's antenna
/// count (last list entry), multicast by the node with the fewest antennas.
double capacity_multiantenna(CastMode mode, std::span<const int> antennas,
                             double snr);

} // namespace coopnet

#endif
