#ifndef COOPNET_SIMCORE_HPP
#define COOPNET_SIMCORE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "coopnet/protocol.hpp"
#include "coopnet/rng.hpp"

// Channel sampling and single-trial outage evaluation under the two-phase
// protocol. A node decodes phase 1 iff its gain exceeds G(alpha); each node
// that missed phase 1 then fails iff its effective MISO gain from the k1
// relays is <= 1-beta, i.e. iff the raw gain sum is <= alpha*K*(1-beta).
// Relays never revert to receive (half-duplex), so phase-1 decoders are
// excluded from the phase-2 checks.

namespace coopnet {

struct TrialOutcome {
    int k1;                   // number of phase-1 decoders
    bool unicast_outage;      // destination (node K, the last index) failed
    bool multicast_outage;    // some node failed
    double phase2_power_used; // k1 * P2, in units of the sum-power budget P
};

/// Deterministic gain tables for tests (the gain-injection hook).
/// phase2 is dense K x K, indexed [relay * K + listener].
class ExplicitGains {
public:
    ExplicitGains(int k_nodes, std::vector<double> phase1, std::vector<double> phase2);

    double phase1_gain(int node) const { return phase1_[node]; }
    double phase2_gain(int relay, int listener) const {
        return phase2_[static_cast<std::size_t>(relay) * k_ + listener];
    }
    int k_nodes() const { return k_; }

private:
    int k_;
    std::vector<double> phase1_;
    std::vector<double> phase2_;
};

/// One sampled channel realization. Phase-1 gains are drawn eagerly; the
/// phase-2 gain of a (relay, listener) pair is drawn on first use and
/// memoized, so the full K x K matrix is never materialized.
class NetworkInstance {
public:
    NetworkInstance(int k_nodes, StreamRng rng);

    int k_nodes() const { return k_; }
    const std::vector<double>& phase1_gains() const { return phase1_; }

    /// Memoized unit-mean exponential draw for the pair.
    double phase2_gain(int relay, int listener);

    /// Outage evaluation on this realization; repeated calls (e.g. over a
    /// beta grid) see consistent gains.
    TrialOutcome evaluate(const ProtocolParams& params);

private:
    int k_;
    std::vector<double> phase1_;
    std::unordered_map<std::uint64_t, double> pair_gains_;
    StreamRng rng_;
};

NetworkInstance sample_instance(int k_nodes, StreamRng rng);

/// One protocol trial on freshly drawn gains. Consumes from rng: K phase-1
/// draws, then per surviving listener the relay gains in index order
/// (stopping once the partial sum clears the threshold). The destination is
/// checked first and the multicast scan stops at the first failure.
TrialOutcome run_trial(const ProtocolParams& params, int k_nodes, StreamRng& rng);

/// Same trial on injected gains.
TrialOutcome run_trial(const ProtocolParams& params, int k_nodes,
                       const ExplicitGains& gains);

} // namespace coopnet

#endif
