#ifndef COOPNET_NUMERICS_HPP
#define COOPNET_NUMERICS_HPP

#include <limits>
#include <span>

// Log-domain special functions shared by the analytic and exponent code.
// Probabilities of interest decay like exp(-c*K) with K up to 1e6, so every
// internal computation stays in natural-log domain; conversion to linear
// happens only at the output boundary.
//
// Units: relative entropies and all log-probabilities are in nats.

namespace coopnet {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Natural log of a probability: value <= 0, with -inf encoding probability 0.
/// Upper bounds (Chernoff) may carry value > 0; clamp only at presentation.
struct LogProb {
    double value = kNegInf;

    static LogProb from_linear(double p);
    double linear() const;
    /// min(1, exp(value)) for display of bounds that exceed 1.
    double linear_clamped() const;
    bool is_zero() const { return value == kNegInf; }
};

/// log(1 - e^y) for y <= 0, accurate for both tiny and large |y|.
double log1mexp(double y);

/// log(e^a + e^b) without overflow.
double logaddexp(double a, double b);

/// log(sum exp(v)) with compensated summation.
double logsumexp(std::span<const double> v);

/// Clamp a probability to the open unit interval [1e-15, 1-1e-15];
/// callers of binary_relative_entropy use this at grid boundaries.
double clamp_unit_open(double p);

/// stirlerr(n) = log(n!) - [ (n+1/2) log n - n + log(2 pi)/2 ], n >= 1.
/// Tabulated for n <= 30, asymptotic series above; keeps log-pmf evaluation
/// free of the large-argument lgamma cancellation.
double stirling_error(double n);

/// bd0(x, m) = x log(x/m) + m - x, evaluated stably when x ~ m.
double bd0(double x, double m);

/// Exact log of C(K,k1) alpha^k1 (1-alpha)^(K-k1).
/// Requires 0 <= k1 <= K and 0 < alpha < 1; sums to 1 over k1 within 1e-12.
LogProb log_binomial_pmf(int k_total, int k1, double alpha);

/// CDF and survival function of a sum of k unit-mean exponentials at x,
/// both in log domain so the small side keeps full relative accuracy.
struct ErlangLogCdf {
    double log_cdf;
    double log_sf;
};
ErlangLogCdf erlang_log_cdf(int k, double x);

/// Pr{ sum of k i.i.d. unit-mean exponentials <= x }.
/// k = 0 returns 1: with no relays transmitting, outage is certain.
/// Series for x < k+1, continued fraction otherwise; relative error ~1e-12.
double regularized_lower_gamma(int k, double x);

/// Binary relative entropy p ln(p/q) + (1-p) ln((1-p)/(1-q)), in nats.
/// Requires p, q strictly inside (0,1); >= 0 with equality iff p == q.
double binary_relative_entropy(double p, double q);

} // namespace coopnet

#endif
