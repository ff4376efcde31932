#include "wib/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wib/error.hpp"

namespace wib {

BanditInstance BanditInstance::create(std::vector<Vec2> means, std::vector<double> variances) {
    if (means.size() < 2) {
        throw Error(Errc::TooFewArms, "need at least 2 arms, got " + std::to_string(means.size()));
    }
    if (means.size() != variances.size()) {
        throw Error(Errc::DimensionMismatch, std::to_string(means.size()) + " means but " +
                                                 std::to_string(variances.size()) + " variances");
    }
    for (std::size_t k = 0; k < means.size(); ++k) {
        if (!std::isfinite(means[k].x) || !std::isfinite(means[k].y)) {
            throw Error(Errc::DimensionMismatch, "mean of arm " + std::to_string(k) + " is not finite");
        }
        if (!(variances[k] > 0.0) || !std::isfinite(variances[k])) {
            throw Error(Errc::NonPositiveVariance, "variance of arm " + std::to_string(k) + " must be > 0");
        }
    }

    BanditInstance inst;
    inst.means_ = std::move(means);
    inst.variances_ = std::move(variances);

    std::vector<double> norms(inst.means_.size());
    std::transform(inst.means_.begin(), inst.means_.end(), norms.begin(), [](Vec2 m) { return norm(m); });
    const auto best = std::max_element(norms.begin(), norms.end());
    inst.optimal_ = static_cast<std::size_t>(best - norms.begin());
    inst.optimal_norm_ = *best;
    for (std::size_t k = 0; k < norms.size(); ++k) {
        if (k != inst.optimal_ && inst.optimal_norm_ - norms[k] <= kNormTieTolerance) {
            throw Error(Errc::TiedOptimum, "arms " + std::to_string(inst.optimal_) + " and " + std::to_string(k) +
                                               " share the largest mean norm");
        }
    }
    inst.gaps_.resize(norms.size());
    for (std::size_t k = 0; k < norms.size(); ++k) {
        inst.gaps_[k] = k == inst.optimal_ ? 0.0 : inst.optimal_norm_ - norms[k];
    }
    return inst;
}

double BanditInstance::max_gap() const noexcept { return *std::max_element(gaps_.begin(), gaps_.end()); }

PowerProfile PowerProfile::create(std::vector<double> powers) {
    if (powers.empty()) {
        throw Error(Errc::InvalidProfile, "empty power profile");
    }
    for (double p : powers) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(Errc::InvalidProfile, "power " + std::to_string(p) + " outside [0, 1]");
        }
    }
    const double sum = std::accumulate(powers.begin(), powers.end(), 0.0);
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
        throw Error(Errc::InvalidProfile, "powers sum to " + std::to_string(sum) + ", not 1");
    }
    return PowerProfile(std::move(powers));
}

PowerProfile PowerProfile::uniform(std::size_t arms) {
    return PowerProfile(std::vector<double>(arms, 1.0 / static_cast<double>(arms)));
}

PowerProfile PowerProfile::one_hot(std::size_t arms, std::size_t arm) {
    std::vector<double> p(arms, 0.0);
    p.at(arm) = 1.0;
    return PowerProfile(std::move(p));
}

bool PowerProfile::is_one_hot() const noexcept {
    return std::count(p_.begin(), p_.end(), 1.0) == 1 &&
           std::count(p_.begin(), p_.end(), 0.0) == static_cast<std::ptrdiff_t>(p_.size()) - 1;
}

Outcome sample_outcome(const BanditInstance& instance, const PowerProfile& profile, Stream& rng) {
    if (profile.size() != instance.arms()) {
        throw Error(Errc::InvalidProfile, "profile has " + std::to_string(profile.size()) + " entries for " +
                                              std::to_string(instance.arms()) + " arms");
    }
    Outcome out;
    out.values.resize(instance.arms());
    for (std::size_t k = 0; k < instance.arms(); ++k) {
        const double p = profile[k];
        if (p <= 0.0) continue;
        const double sd = std::sqrt(instance.variances()[k] / (2.0 * p));
        const auto [n1, n2] = rng.normal_pair();
        out.values[k] = instance.means()[k] + sd * Vec2{n1, n2};
    }
    return out;
}

ArmStats update_stats(const ArmStats& stats, double power, const std::optional<Vec2>& x) {
    if (!(power >= 0.0)) {
        throw Error(Errc::NegativePower, "power " + std::to_string(power));
    }
    ArmStats next = stats;
    ++next.rounds;
    if (power == 0.0) return next;
    if (!x) {
        throw Error(Errc::MissingObservation, "positive power without an observation");
    }
    next.z = stats.z + power;
    const Vec2 delta = *x - stats.xbar;
    next.xbar = stats.xbar + (power / next.z) * delta;
    next.S = stats.S + power * dot(delta, *x - next.xbar);
    ++next.observations;
    return next;
}

ArmStats batch_stats(std::span<const double> powers, std::span<const Vec2> xs) {
    if (powers.size() != xs.size()) {
        throw Error(Errc::DimensionMismatch, "powers and observations differ in length");
    }
    ArmStats out;
    Vec2 weighted{};
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!(powers[i] >= 0.0)) throw Error(Errc::NegativePower, "power " + std::to_string(powers[i]));
        out.z += powers[i];
        weighted = weighted + powers[i] * xs[i];
        if (powers[i] > 0.0) ++out.observations;
    }
    if (!(out.z > 0.0)) {
        throw Error(Errc::AllZeroPower, "no positive power in batch");
    }
    out.xbar = (1.0 / out.z) * weighted;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        out.S += powers[i] * norm2(xs[i] - out.xbar);
    }
    out.rounds = static_cast<std::int64_t>(powers.size());
    return out;
}

}  // namespace wib
