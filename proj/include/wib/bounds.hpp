#pragma once

#include <vector>

#include "wib/core.hpp"

namespace wib {

// Expected instantaneous regret of a profile: sum_k gap_k * p_k.
double regret_step(const BanditInstance& instance, const PowerProfile& profile);

struct RegretTrace {
    std::vector<double> per_round;
    std::vector<double> cumulative;

    void push(double regret) {
        per_round.push_back(regret);
        cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + regret);
    }
};

/*
 * Asymptotic regret constants; each multiplies log T.
 *
 *                     known variance     unknown variance
 *   non-spreading     sum s2/gap         sum gap / log(1 + gap^2/s2)
 *   spreading         sum s2/gap         sum s2/gap
 */
struct BoundConstants {
    double spreading_known = 0.0;
    double spreading_unknown = 0.0;
    double ns_known = 0.0;
    double ns_unknown = 0.0;
};

BoundConstants lower_bound_constants(const BanditInstance& instance);

// Per-arm cumulative-power constants sigma_k^2 / gap_k^2 (0 at the optimal arm).
std::vector<double> power_constants(const BanditInstance& instance);

// x - log(1 + x), x > 0.
double h(double x);

// P(|xbar - mu| >= eps | powers) = exp(-z eps^2 / sigma2), exact.
double mean_exceedance(double z, double sigma2, double eps);

// exp(-t h(eps / sigma2)), upper bound on P(S(t) >= t (sigma2 + eps)).
double variance_tail_bound(int t, double sigma2, double eps);

// Chi-squared CDF for an even number of degrees of freedom.
double chi2_cdf_even(int dof, double x);

// Linear-bandit reward of one round: sum over arms with p_k > 0 of
// p_k |X_k|^2 - sigma_k^2, whose expectation is sum_k p_k |mu_k|^2.
double linear_reward(const BanditInstance& instance, const PowerProfile& profile, const Outcome& outcome);

}  // namespace wib
