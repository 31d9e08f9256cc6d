#ifndef COOPNET_EXPONENT_HPP
#define COOPNET_EXPONENT_HPP

#include <span>
#include <vector>

#include "coopnet/protocol.hpp"

// Network scaling exponent: the asymptotic decay rate of outage probability
// per node, swept over the (alpha, beta) design space and summarized as an
// upper envelope against the achieved fraction of capacity.

namespace coopnet {

/// -lim ln Pr{outage}/K in nats/node for fixed (alpha, beta). The ln K gap
/// between the unicast and multicast curves vanishes in the limit, so one
/// exponent serves both modes.
double asymptotic_exponent(const ProtocolParams& params);

/// One (alpha, beta) grid cell: the capacity fraction it achieves and its
/// exponent.
struct SweepPoint {
    double alpha;
    double beta;
    double rate_fraction; // in (0,1)
    double exponent;      // nats/node, >= 0
};

/// Sweep results plus the per-bin upper envelope. envelope[i] is the best
/// exponent among points whose rate fraction reaches bin i's lower edge,
/// i.e. a suffix maximum over binned points; it is nonincreasing by
/// construction and 0 where no grid point reaches the bin.
struct ExponentSweep {
    std::vector<SweepPoint> points;
    int bins = 0;
    std::vector<double> envelope;

    double envelope_at(double rate_fraction) const;
    double bin_low_edge(int i) const { return static_cast<double>(i) / bins; }
};

ExponentSweep sweep_exponent(double snr, std::span<const double> alphas,
                             std::span<const double> betas, int bins = 100);

/// Smallest K whose exact outage is at or below target_eps, by doubling then
/// bisection on the (eventually) decreasing exact curve. attained = false
/// when no K up to k_cap qualifies.
struct RequiredSize {
    int k_nodes = 0;
    bool attained = false;
};

RequiredSize required_network_size(const ProtocolParams& params, CastMode mode,
                                   double target_eps, int k_cap = 1000000);

} // namespace coopnet

#endif
