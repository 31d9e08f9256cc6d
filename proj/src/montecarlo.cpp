#include "coopnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/beta.hpp>

#include "coopnet/rng.hpp"
#include "coopnet/simcore.hpp"

namespace coopnet {

namespace {

struct Tally {
    std::uint64_t uc = 0;
    std::uint64_t mc = 0;
    std::uint64_t k1_sum = 0;

    void merge(const Tally& other) {
        uc += other.uc;
        mc += other.mc;
        k1_sum += other.k1_sum;
    }
};

void clopper_pearson(std::uint64_t count, std::uint64_t n, double& lo, double& hi) {
    using boost::math::beta_distribution;
    lo = (count == 0) ? 0.0
                      : quantile(beta_distribution<>(static_cast<double>(count),
                                                     static_cast<double>(n - count + 1)),
                                 0.025);
    hi = (count == n) ? 1.0
                      : quantile(beta_distribution<>(static_cast<double>(count + 1),
                                                     static_cast<double>(n - count)),
                                 0.975);
}

OutageEstimate make_estimate(std::uint64_t count, std::uint64_t n,
                             std::uint64_t seed, CastMode mode) {
    OutageEstimate e;
    e.trials = n;
    e.seed = seed;
    e.mode = mode;
    e.p_hat = static_cast<double>(count) / static_cast<double>(n);
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
    if (count < 30) {
        // Deep-tail estimates are count-starved; use the exact interval.
        clopper_pearson(count, n, e.ci95_low, e.ci95_high);
    } else {
        e.ci95_low = std::max(0.0, e.p_hat - 1.959963984540054 * e.std_err);
        e.ci95_high = std::min(1.0, e.p_hat + 1.959963984540054 * e.std_err);
    }
    return e;
}

int resolve_workers(int workers, std::uint64_t trials) {
    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return static_cast<int>(std::min<std::uint64_t>(workers, trials));
}

} // namespace

EstimatePair estimate_outage(const ProtocolParams& params, int k_nodes,
                             std::uint64_t trials, std::uint64_t seed,
                             int workers) {
    params.validate();
    if (k_nodes < 1) throw std::domain_error("estimate_outage: K must be >= 1");
    if (trials == 0) throw std::domain_error("estimate_outage: trials must be >= 1");

    const int nw = resolve_workers(workers, trials);
    std::vector<Tally> tallies(nw);

    auto run_block = [&](std::uint64_t begin, std::uint64_t end, Tally& t) {
        for (std::uint64_t i = begin; i < end; ++i) {
            StreamRng rng(seed, i);
            const TrialOutcome o = run_trial(params, k_nodes, rng);
            t.uc += o.unicast_outage;
            t.mc += o.multicast_outage;
            t.k1_sum += static_cast<std::uint64_t>(o.k1);
        }
    };

    if (nw == 1) {
        run_block(0, trials, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) {
            const std::uint64_t begin = trials * w / nw;
            const std::uint64_t end = trials * (w + 1) / nw;
            pool.emplace_back(run_block, begin, end, std::ref(tallies[w]));
        }
        for (auto& th : pool) th.join();
    }

    Tally total;
    for (const Tally& t : tallies) total.merge(t); // integer counts: order-free

    EstimatePair pair;
    pair.unicast = make_estimate(total.uc, trials, seed, CastMode::kUnicast);
    pair.multicast = make_estimate(total.mc, trials, seed, CastMode::kMulticast);
    pair.mean_k1 = static_cast<double>(total.k1_sum) / static_cast<double>(trials);
    pair.mean_phase2_power = pair.mean_k1 / (params.alpha * k_nodes);
    return pair;
}

std::vector<SweepRow> sweep_outage_vs_k(const ProtocolParams& params,
                                        std::span<const int> k_list,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int workers) {
    if (k_list.empty())
        throw std::domain_error("sweep_outage_vs_k: empty K list");
    std::vector<SweepRow> rows;
    rows.reserve(k_list.size());
    for (int k : k_list) {
        const std::uint64_t row_seed = derive_seed(seed, static_cast<std::uint64_t>(k));
        const EstimatePair p = estimate_outage(params, k, trials, row_seed, workers);
        rows.push_back(SweepRow{k, p.unicast, p.multicast});
    }
    return rows;
}

OutageEstimate estimate_direct_outage(double rate_bits, double snr,
                                      std::uint64_t trials, std::uint64_t seed) {
    if (!(rate_bits > 0.0)) throw std::domain_error("estimate_direct_outage: rate must be > 0");
    if (!(snr > 0.0)) throw std::domain_error("estimate_direct_outage: snr must be > 0");
    if (trials == 0) throw std::domain_error("estimate_direct_outage: trials must be >= 1");
    const double gain_needed = (std::exp2(rate_bits) - 1.0) / snr;
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        StreamRng rng(seed, i);
        count += rng.next_exp() < gain_needed;
    }
    return make_estimate(count, trials, seed, CastMode::kUnicast);
}

std::string estimate_csv_header() {
    return "K,mode,p_hat,std_err,ci95_low,ci95_high,trials,seed";
}

std::string estimate_csv_row(int k_nodes, const OutageEstimate& est) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%s,%.12g,%.12g,%.12g,%.12g,%llu,%llu",
                  k_nodes, est.mode == CastMode::kUnicast ? "uc" : "mc",
                  est.p_hat, est.std_err, est.ci95_low, est.ci95_high,
                  static_cast<unsigned long long>(est.trials),
                  static_cast<unsigned long long>(est.seed));
    return std::string(buf);
}

} // namespace coopnet
