#ifndef COOPNET_ANALYTICS_HPP
#define COOPNET_ANALYTICS_HPP

#include <string>

#include "coopnet/numerics.hpp"
#include "coopnet/protocol.hpp"

// Exact semi-analytic outage, Chernoff bounds, and the large-deviation
// approximation for the two-phase protocol.
//
// Conditioned on k1 phase-1 decoders, a listener fails iff the sum of its k1
// relay gains is <= x = alpha*K*(1-beta), which is the Erlang(k1) CDF at x.
// Averaging over the binomial law of k1 makes the expressions exact.
// All results are carried as natural logs; probabilities at rates of
// exp(-Theta(K)) with K up to 1e6 would underflow linear doubles.

namespace coopnet {

/// Internals of the outage approximation at one (alpha, beta):
/// mu and the stationary point gamma_star of the per-node exponent, the
/// exponent itself, and the rate-balancing epsilon of the Chernoff bound.
struct ApproxInternals {
    double mu;                // alpha^2 (1-beta) / (1-alpha)
    double gamma_star;        // root of gamma^2/(1-gamma) = mu in (alpha(1-beta), 1)
    double exponent_per_node; // nats/node; see asymptotic_exponent
    double chernoff_eps;      // epsilon in (0,beta) balancing the two bound terms
    double chernoff_gamma;    // gamma(beta, eps) at that epsilon; always < 0
};

/// gamma(beta, eps) = beta - eps + (1-eps) ln((1-beta)/(1-eps)); < 0 for
/// 0 < eps < beta.
double chernoff_gamma_exponent(double beta, double eps);

/// Solves the stationarity condition gamma^2/(1-gamma) = mu exactly
/// (gamma = 2mu / (mu + sqrt(mu^2+4mu))) and derives the per-node exponent
/// and the balanced Chernoff epsilon. Requires 0 < alpha < 1, 0 < beta < 1.
ApproxInternals solve_gamma_star(double alpha, double beta);

/// Exact outage probability (natural log). Unicast conditions on the
/// destination missing phase 1; multicast requires every listener to clear
/// the threshold. O(K) with stable log-domain accumulation.
double log_exact_outage(const ProtocolParams& params, int k_nodes, CastMode mode);

/// Linear wrapper; underflows to 0 once K * exponent exceeds ~700 nats.
double exact_outage(const ProtocolParams& params, int k_nodes, CastMode mode);

/// Conditional outage bound (alpha*K*(1-beta)*e/k1)^k1 * exp(-alpha*K*(1-beta))
/// given k1 phase-1 decoders; requires k1 >= alpha*K*(1-beta). Dominates the
/// Erlang CDF at the same point.
LogProb chernoff_conditional_bound(double alpha_k, double beta, int k1);

/// exp(-alpha*K*eps^2/4) + exp(alpha*K*gamma(beta,eps)), combined in log
/// domain. Requires 0 < eps < beta. May exceed 1; clamp at presentation.
LogProb chernoff_unicast_bound(const ProtocolParams& params, int k_nodes, double eps);

/// K times the unicast bound (union over listeners).
LogProb chernoff_multicast_bound(const ProtocolParams& params, int k_nodes, double eps);

/// Golden-section minimization of the bound over eps in (0, beta); the
/// reported bound uses the minimizing eps (written to eps_out if non-null).
LogProb chernoff_unicast_bound_best(const ProtocolParams& params, int k_nodes,
                                    double* eps_out = nullptr);
LogProb chernoff_multicast_bound_best(const ProtocolParams& params, int k_nodes,
                                      double* eps_out = nullptr);

/// Large-deviation approximation:
///   uc: (1/sqrt(K)) exp{-K [ alpha(1-beta) + D(g*||alpha)
///                            - g* ln(alpha(1-beta) e / g*) ]}
///   mc: K times uc.
LogProb approx_outage(const ProtocolParams& params, int k_nodes, CastMode mode);

/// Exact values, optimized Chernoff bounds, approximations, and the converse
/// floor for one configuration, all in log domain.
struct BoundSet {
    int k_nodes = 0;
    double log_exact_uc = kNegInf;
    double log_exact_mc = kNegInf;
    double log_chernoff_uc = kNegInf;
    double log_chernoff_mc = kNegInf;
    double log_approx_uc = kNegInf;
    double log_approx_mc = kNegInf;
    double chernoff_eps = 0.0; // minimizing eps behind the bound columns
    double converse_floor = 0.0; // linear; 0 whenever r_eff <= capacity
};

BoundSet compute_bound_set(const ProtocolParams& params, int k_nodes);

/// CSV emission (schema: K, exact_uc, exact_mc, chernoff_uc, chernoff_mc,
/// approx_uc, approx_mc; bound columns clamped to 1 at this boundary).
std::string bound_set_csv_header();
std::string bound_set_csv_row(const BoundSet& b);

} // namespace coopnet

#endif
