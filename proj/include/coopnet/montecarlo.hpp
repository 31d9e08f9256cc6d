#ifndef COOPNET_MONTECARLO_HPP
#define COOPNET_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coopnet/protocol.hpp"

// Monte Carlo outage estimation. Each trial index owns a counter-based
// stream derived from (seed, index), and aggregation reduces integer counts,
// so results are bit-identical for any worker count and partition order.

namespace coopnet {

struct OutageEstimate {
    double p_hat = 0.0;
    std::uint64_t trials = 0;
    double std_err = 0.0;     // sqrt(p(1-p)/n)
    double ci95_low = 0.0;    // normal approximation, Clopper-Pearson when
    double ci95_high = 0.0;   // the outage count is below 30
    std::uint64_t seed = 0;
    CastMode mode = CastMode::kUnicast;
};

/// Unicast and multicast estimates from one shared trial stream, plus the
/// realized phase-2 power statistics for budget accounting.
struct EstimatePair {
    OutageEstimate unicast;
    OutageEstimate multicast;
    double mean_k1 = 0.0;
    double mean_phase2_power = 0.0; // in units of the sum-power budget P
};

/// Runs `trials` protocol trials; both outage modes are evaluated on the
/// same realizations (so p_uc <= p_mc holds trial-wise). `workers` <= 0
/// selects the hardware thread count.
EstimatePair estimate_outage(const ProtocolParams& params, int k_nodes,
                             std::uint64_t trials, std::uint64_t seed,
                             int workers = 1);

struct SweepRow {
    int k_nodes;
    OutageEstimate unicast;
    OutageEstimate multicast;
};

/// One estimate pair per K, with an independent per-K seed derived from
/// `seed`; rows are suitable for outage-vs-network-size plots.
std::vector<SweepRow> sweep_outage_vs_k(const ProtocolParams& params,
                                        std::span<const int> k_list,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int workers = 1);

/// Cooperation-free baseline: the destination decodes directly from the
/// source at `rate_bits`, so outage = Pr{ log2(1 + |h|^2 snr) < rate }.
/// Network size is irrelevant to this event.
OutageEstimate estimate_direct_outage(double rate_bits, double snr,
                                      std::uint64_t trials, std::uint64_t seed);

/// CSV emission (schema: K, mode, p_hat, std_err, ci95_low, ci95_high,
/// trials, seed).
std::string estimate_csv_header();
std::string estimate_csv_row(int k_nodes, const OutageEstimate& est);

} // namespace coopnet

#endif
