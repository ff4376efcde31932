#include "wib/bounds.hpp"

#include <cmath>
#include <string>

#include "wib/error.hpp"

namespace wib {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw Error(Errc::NonPositiveArgument, std::string(name) + " must be > 0");
}

}  // namespace

double regret_step(const BanditInstance& instance, const PowerProfile& profile) {
    if (profile.size() != instance.arms()) {
        throw Error(Errc::DimensionMismatch, "profile length does not match the instance");
    }
    double regret = 0.0;
    for (std::size_t k = 0; k < instance.arms(); ++k) regret += instance.gaps()[k] * profile[k];
    return regret;
}

BoundConstants lower_bound_constants(const BanditInstance& instance) {
    BoundConstants c;
    for (std::size_t k = 0; k < instance.arms(); ++k) {
        if (k == instance.optimal_arm()) continue;
        const double gap = instance.gaps()[k];
        const double s2 = instance.variances()[k];
        c.spreading_known += s2 / gap;
        c.ns_unknown += gap / std::log1p(gap * gap / s2);
    }
    c.spreading_unknown = c.spreading_known;
    c.ns_known = c.spreading_known;
    return c;
}

std::vector<double> power_constants(const BanditInstance& instance) {
    std::vector<double> out(instance.arms(), 0.0);
    for (std::size_t k = 0; k < instance.arms(); ++k) {
        if (k == instance.optimal_arm()) continue;
        out[k] = instance.variances()[k] / (instance.gaps()[k] * instance.gaps()[k]);
    }
    return out;
}

double h(double x) {
    require_positive(x, "x");
    // Below 1e-3 the subtraction cancels; the series converges fast there.
    if (x < 1e-3) {
        double term = x * x / 2.0;
        double sum = 0.0;
        for (int n = 2; n < 12; ++n) {
            sum += (n % 2 == 0 ? term : -term);
            term *= x * static_cast<double>(n) / static_cast<double>(n + 1);
        }
        return sum;
    }
    return x - std::log1p(x);
}

double mean_exceedance(double z, double sigma2, double eps) {
    require_positive(z, "z");
    require_positive(sigma2, "sigma2");
    require_positive(eps, "eps");
    return std::exp(-z * eps * eps / sigma2);
}

double variance_tail_bound(int t, double sigma2, double eps) {
    if (t < 2) throw Error(Errc::NonPositiveArgument, "t must be >= 2");
    require_positive(sigma2, "sigma2");
    require_positive(eps, "eps");
    return std::exp(-static_cast<double>(t) * h(eps / sigma2));
}

double chi2_cdf_even(int dof, double x) {
    if (dof < 2 || dof % 2 != 0) throw Error(Errc::OddDof, "dof must be even and >= 2, got " + std::to_string(dof));
    if (!(x >= 0.0)) throw Error(Errc::NegativeX, "x must be >= 0");
    if (x == 0.0) return 0.0;
    const int m = dof / 2;
    const double y = x / 2.0;
    const double log_y = std::log(y);
    // Poisson(y) probabilities e^{-y} y^i / i!, each formed in log space.
    auto poisson = [&](int i) { return std::exp(-y + i * log_y - std::lgamma(i + 1.0)); };

    if (y < m) {
        // Lower tail directly: P(Poisson(y) >= m), terms decay past the mode.
        double sum = 0.0;
        for (int i = m;; ++i) {
            const double term = poisson(i);
            sum += term;
            if (term < 1e-17 * sum || i > m + 10000) break;
        }
        return sum;
    }
    double upper = 0.0;
    for (int i = m - 1; i >= 0; --i) upper += poisson(i);
    return upper >= 1.0 ? 0.0 : 1.0 - upper;
}

double linear_reward(const BanditInstance& instance, const PowerProfile& profile, const Outcome& outcome) {
    if (profile.size() != instance.arms() || outcome.values.size() != instance.arms()) {
        throw Error(Errc::DimensionMismatch, "profile/outcome length does not match the instance");
    }
    double reward = 0.0;
    for (std::size_t k = 0; k < instance.arms(); ++k) {
        if (profile[k] == 0.0) continue;
        if (!outcome.values[k]) throw Error(Errc::MissingObservation, "arm " + std::to_string(k));
        reward += profile[k] * norm2(*outcome.values[k]) - instance.variances()[k];
    }
    return reward;
}

}  // namespace wib
