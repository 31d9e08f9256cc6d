#include "coopnet/simcore.hpp"

#include <stdexcept>

namespace coopnet {

namespace {

// Shared trial logic, templated on the gain source so the Monte Carlo hot
// path (fresh draws, no relay bookkeeping cost) and the injected/memoized
// paths produce identical outcomes for identical gain sequences.
template <class Gains>
TrialOutcome trial_core(const ProtocolParams& params, int k_nodes, Gains&& gains) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("run_trial: K must be >= 1");

    const double g = gain_threshold(params.alpha);
    thread_local std::vector<int> relays;
    thread_local std::vector<std::uint8_t> decoded;
    relays.clear();
    decoded.assign(k_nodes, 0);

    for (int i = 0; i < k_nodes; ++i) {
        if (gains.phase1_gain(i) > g) {
            relays.push_back(i);
            decoded[i] = 1;
        }
    }
    const int k1 = static_cast<int>(relays.size());
    const double power_used = k1 / (params.alpha * k_nodes);

    TrialOutcome out{k1, false, false, power_used};
    if (k1 == k_nodes) return out;          // no listeners remain
    const double x = params.alpha * k_nodes * (1.0 - params.beta);
    if (k1 == 0) {                          // empty relay set: G_k = 0 <= 1-beta
        out.unicast_outage = true;
        out.multicast_outage = true;
        return out;
    }

    // Sum of relay gains, stopping once the threshold is cleared.
    auto listener_fails = [&](int listener) {
        double sum = 0.0;
        for (int j : relays) {
            sum += gains.phase2_gain(j, listener);
            if (sum > x) return false;
        }
        return true;
    };

    const int dest = k_nodes - 1;
    if (!decoded[dest]) {
        const bool fails = listener_fails(dest);
        out.unicast_outage = fails;
        out.multicast_outage = fails;
    }
    for (int i = 0; i < dest && !out.multicast_outage; ++i) {
        if (!decoded[i]) out.multicast_outage = listener_fails(i);
    }
    return out;
}

// Adapter presenting a StreamRng as a gain source: every access is a fresh
// i.i.d. draw, indices ignored.
struct RandomGains {
    StreamRng& rng;
    double phase1_gain(int) { return rng.next_exp(); }
    double phase2_gain(int, int) { return rng.next_exp(); }
};

} // namespace

ExplicitGains::ExplicitGains(int k_nodes, std::vector<double> phase1,
                             std::vector<double> phase2)
    : k_(k_nodes), phase1_(std::move(phase1)), phase2_(std::move(phase2)) {
    if (k_ < 1) throw std::domain_error("ExplicitGains: K must be >= 1");
    if (phase1_.size() != static_cast<std::size_t>(k_) ||
        phase2_.size() != static_cast<std::size_t>(k_) * k_)
        throw std::invalid_argument("ExplicitGains: gain table sizes must be K and K*K");
    for (double v : phase1_)
        if (v < 0.0) throw std::domain_error("ExplicitGains: negative gain");
    for (double v : phase2_)
        if (v < 0.0) throw std::domain_error("ExplicitGains: negative gain");
}

NetworkInstance::NetworkInstance(int k_nodes, StreamRng rng)
    : k_(k_nodes), rng_(rng) {
    if (k_ < 1) throw std::domain_error("NetworkInstance: K must be >= 1");
    phase1_.reserve(k_);
    for (int i = 0; i < k_; ++i) phase1_.push_back(rng_.next_exp());
}

double NetworkInstance::phase2_gain(int relay, int listener) {
    const std::uint64_t key =
        static_cast<std::uint64_t>(relay) * static_cast<std::uint64_t>(k_) + listener;
    auto it = pair_gains_.find(key);
    if (it != pair_gains_.end()) return it->second;
    const double v = rng_.next_exp();
    pair_gains_.emplace(key, v);
    return v;
}

namespace {

struct InstanceGains {
    NetworkInstance& inst;
    double phase1_gain(int node) const { return inst.phase1_gains()[node]; }
    double phase2_gain(int relay, int listener) { return inst.phase2_gain(relay, listener); }
};

} // namespace

TrialOutcome NetworkInstance::evaluate(const ProtocolParams& params) {
    return trial_core(params, k_, InstanceGains{*this});
}

NetworkInstance sample_instance(int k_nodes, StreamRng rng) {
    return NetworkInstance(k_nodes, rng);
}

TrialOutcome run_trial(const ProtocolParams& params, int k_nodes, StreamRng& rng) {
    return trial_core(params, k_nodes, RandomGains{rng});
}

TrialOutcome run_trial(const ProtocolParams& params, int k_nodes,
                       const ExplicitGains& gains) {
    if (gains.k_nodes() != k_nodes)
        throw std::invalid_argument("run_trial: gain table K mismatch");
    return trial_core(params, k_nodes, gains);
}

} // namespace coopnet
