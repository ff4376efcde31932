#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wib/core.hpp"
#include "wib/parallel.hpp"
#include "wib/posterior.hpp"
#include "wib/rng.hpp"

namespace wib {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string observed;
    std::string expected;
};

struct VerifyOptions {
    std::uint64_t seed = 20211;
    double scale = 1.0;  // multiplies every sample size (minimum 1)
    int workers = 0;
    Execution exec = Execution::Parallel;
    // Test hook: the chi-squared check divides by this factor times the true
    // variance. Anything but 1 must make that check fail.
    double variance_misspecification = 1.0;
};

// ---- Monte-Carlo helpers -------------------------------------------------

// Replicated sufficient statistics of one arm under a fixed power trajectory.
struct StatsSample {
    double z = 0.0;
    std::vector<Vec2> xbar;
    std::vector<double> S;
};

StatsSample sample_sufficient_stats(std::span<const double> powers, Vec2 mean, double sigma2, std::size_t replications,
                                    const Stream& base, Execution exec = Execution::Parallel, int workers = 0);

// sup_x |F_n(x) - F(x)|
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

double correlation(std::span<const double> a, std::span<const double> b);

// ---- Individual properties -------------------------------------------------

// Incremental West update versus the batch formulas; worst relative error.
CheckResult check_incremental_batch(std::size_t trajectories, std::size_t max_length, double tolerance,
                                    const Stream& base);

// xbar coordinates: mean within 3 standard errors, variance within 5%.
CheckResult check_mean_law(const StatsSample& sample, Vec2 mean, double sigma2);

// KS distance of 2S / (c sigma2) against chi2 with 2(t-1) dof below 1.63/sqrt(n).
CheckResult check_chi2_law(const StatsSample& sample, double sigma2, std::size_t t, double misspecification = 1.0);

// |corr(xbar coordinate, S)| below the threshold for both coordinates.
CheckResult check_independence(const StatsSample& sample, double threshold);

// Empirical P(|xbar - mu| >= eps) against exp(-z eps^2 / sigma2); the
// tolerance is an absolute band, or 3 binomial standard errors when <= 0.
CheckResult check_exceedance(std::span<const double> powers, double sigma2, double eps, std::size_t replications,
                             double tolerance, const Stream& base, Execution exec = Execution::Parallel,
                             int workers = 0);

// Sampler exceedance against the closed radial tail, 3 binomial SE per point.
CheckResult check_tail_identity(const PosteriorParams& params, std::span<const double> deltas, std::size_t draws,
                                const Stream& base);

// Quadrature of the density over a disc against 1 - tail(R).
CheckResult check_density_normalization(const PosteriorParams& params, double radius);

CheckResult check_tail_monotonicity();

// |rho(M) - rho(10 M)| < 5 / sqrt(M) over repeated trials.
CheckResult check_rho_consistency(std::size_t samples, std::size_t trials, const Stream& base);

CheckResult check_chi2_cdf_quadrature();

// Empirical P(S(t) >= t (sigma2 + eps)) <= bound + 3 SE.
CheckResult check_variance_tail(std::size_t t, double sigma2, double eps, std::size_t replications,
                                const Stream& base, Execution exec = Execution::Parallel, int workers = 0);

CheckResult check_bound_ordering(std::size_t instances, const Stream& base);
CheckResult check_rotation_invariance(std::size_t instances, const Stream& base);

CheckResult check_wts_warmup(std::size_t seeds, const Stream& base);
CheckResult check_non_spreading(std::int64_t rounds, const Stream& base);
CheckResult check_determinism(const Stream& base);

// WTS on a 3-arm instance (gap/sigma 0.71 and 0.5): min_k z_k(T) >= 3 and z_k(T) > z_k(T/10) for all seeds.
CheckResult check_power_divergence(std::int64_t horizon, std::size_t seeds, std::uint64_t seed, Execution exec,
                                   int workers);

// WTS on a 2-arm instance with gap/sigma = 5: rho of the optimal arm at
// round t exceeds 0.99 in at least 95% of runs.
CheckResult check_belief_concentration(std::int64_t round, std::size_t runs, std::uint64_t seed, Execution exec,
                                       int workers);

// ---- Suite -----------------------------------------------------------------

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results) noexcept;

void print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace wib
