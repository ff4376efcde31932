#include "wib/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "wib/error.hpp"

namespace wib {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 5> kNames{{
    {PolicyKind::Wts, "wts"},
    {PolicyKind::TsKnown, "ts_known"},
    {PolicyKind::TsUnknown, "ts_unknown"},
    {PolicyKind::Oracle, "oracle"},
    {PolicyKind::Uniform, "uniform"},
}};

void require_kind(const PolicyState& state, std::initializer_list<PolicyKind> kinds, std::string_view step) {
    if (std::find(kinds.begin(), kinds.end(), state.kind()) == kinds.end()) {
        throw Error(Errc::WrongKind, std::string(step) + " called on a " + std::string(to_string(state.kind())) +
                                         " policy");
    }
}

std::size_t argmax_norm(const std::vector<Vec2>& draws) {
    std::size_t best = 0;
    double best_norm2 = -1.0;
    for (std::size_t k = 0; k < draws.size(); ++k) {
        const double n2 = norm2(draws[k]);
        if (n2 > best_norm2) {
            best_norm2 = n2;
            best = k;
        }
    }
    return best;
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

double wts_power_floor(std::size_t arms) noexcept { return 1e-6 / static_cast<double>(arms); }

PolicyState::PolicyState(PolicyConfig config, std::size_t arms) : config_(std::move(config)), per_arm_(arms) {
    if (arms < 2) throw Error(Errc::TooFewArms, "policy needs at least 2 arms");
    if (config_.kind == PolicyKind::TsKnown) {
        if (config_.known_variances.size() != arms) {
            throw Error(Errc::DimensionMismatch, "known-variance TS needs one variance per arm");
        }
        for (double v : config_.known_variances) {
            if (!(v > 0.0)) throw Error(Errc::NonPositiveVariance, "known variance must be > 0");
        }
    }
    if (config_.kind == PolicyKind::Oracle && config_.optimal_arm >= arms) {
        throw Error(Errc::DimensionMismatch, "oracle arm out of range");
    }
    if (config_.kind == PolicyKind::Wts && config_.mc_samples == 0) {
        throw Error(Errc::ZeroSamples, "WTS needs at least one Monte-Carlo sample");
    }
}

PowerProfile PolicyState::next_profile(Stream& rng) const {
    switch (config_.kind) {
        case PolicyKind::Wts: return wts_step(*this, rng);
        case PolicyKind::TsKnown:
        case PolicyKind::TsUnknown: return ts_step(*this, rng);
        case PolicyKind::Oracle: return oracle_step(*this);
        case PolicyKind::Uniform: return uniform_step(*this);
    }
    throw Error(Errc::WrongKind, "unhandled policy kind");
}

void PolicyState::observe(const PowerProfile& profile, const Outcome& outcome) {
    if (profile.size() != per_arm_.size() || outcome.values.size() != per_arm_.size()) {
        throw Error(Errc::ProfileMismatch, "profile/outcome length does not match " +
                                               std::to_string(per_arm_.size()) + " arms");
    }
    for (std::size_t k = 0; k < per_arm_.size(); ++k) {
        per_arm_[k] = update_stats(per_arm_[k], profile[k], outcome.values[k]);
    }
    ++round_;
}

OptimalityBelief wts_belief(const PolicyState& state, const Stream& rng) {
    require_kind(state, {PolicyKind::Wts}, "wts_belief");
    std::vector<PosteriorParams> params;
    params.reserve(state.arms());
    for (std::size_t k = 0; k < state.arms(); ++k) {
        const ArmStats& s = state.per_arm()[k];
        if (!(s.z > 0.0) || !(s.S > 0.0)) {
            throw Error(Errc::InsufficientData, "arm " + std::to_string(k) + " has no scatter yet");
        }
        params.push_back(posterior_params(s));
    }
    return estimate_rho(params, state.config().mc_samples, rng);
}

PowerProfile wts_step(const PolicyState& state, Stream& rng) {
    require_kind(state, {PolicyKind::Wts}, "wts_step");
    const std::size_t arms = state.arms();
    if (state.round() <= 3) return PowerProfile::uniform(arms);

    std::vector<double> p = wts_belief(state, rng).rho;
    const double floor = wts_power_floor(arms);
    for (double& v : p) v = std::max(v, floor);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= sum;
    return PowerProfile::create(std::move(p));
}

PowerProfile ts_step(const PolicyState& state, Stream& rng) {
    require_kind(state, {PolicyKind::TsKnown, PolicyKind::TsUnknown}, "ts_step");
    const std::size_t arms = state.arms();
    const bool known = state.kind() == PolicyKind::TsKnown;
    const std::int64_t warmup = static_cast<std::int64_t>(arms) * (known ? 1 : 3);
    if (state.round() <= warmup) {
        return PowerProfile::one_hot(arms, static_cast<std::size_t>((state.round() - 1) % static_cast<std::int64_t>(arms)));
    }

    std::vector<Vec2> draws(arms);
    for (std::size_t k = 0; k < arms; ++k) {
        const ArmStats& s = state.per_arm()[k];
        if (known) {
            if (!(s.z > 0.0)) throw Error(Errc::InsufficientData, "arm " + std::to_string(k) + " never sampled");
            const double sd = std::sqrt(state.config().known_variances[k] / (2.0 * s.z));
            const auto [n1, n2] = rng.normal_pair();
            draws[k] = s.xbar + sd * Vec2{n1, n2};
        } else {
            if (s.observations < 3 || !(s.S > 0.0)) {
                throw Error(Errc::InsufficientData, "arm " + std::to_string(k) + " has fewer than 3 samples");
            }
            draws[k] = sample_posterior(posterior_params(s), rng);
        }
    }
    return PowerProfile::one_hot(arms, argmax_norm(draws));
}

PowerProfile oracle_step(const PolicyState& state) {
    require_kind(state, {PolicyKind::Oracle}, "oracle_step");
    return PowerProfile::one_hot(state.arms(), state.config().optimal_arm);
}

PowerProfile uniform_step(const PolicyState& state) {
    require_kind(state, {PolicyKind::Uniform}, "uniform_step");
    return PowerProfile::uniform(state.arms());
}

}  // namespace wib
