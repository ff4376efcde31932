#include "wib/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wib/error.hpp"

namespace wib {

namespace {

void validate_for_sampling(const PosteriorParams& params) {
    if (params.t < 4) {
        throw Error(Errc::InvalidParams, "posterior needs t >= 4, got t = " + std::to_string(params.t));
    }
    if (!(params.z > 0.0)) throw Error(Errc::InvalidParams, "posterior needs z > 0");
    if (!(params.S >= 0.0)) throw Error(Errc::InvalidParams, "posterior needs S >= 0");
}

double radius_from_uniform(const PosteriorParams& params, double u) noexcept {
    const double t = static_cast<double>(params.t);
    return std::sqrt((params.S / params.z) * std::expm1(-std::log(u) / (t - 3.0)));
}

// Exceedance probability of the radial tail; S == 0 means a point mass.
double radial_tail(const PosteriorParams& params, double delta) noexcept {
    if (params.S == 0.0) return 0.0;
    const double t = static_cast<double>(params.t);
    return std::pow(1.0 + params.z * delta * delta / params.S, -(t - 3.0));
}

// Radius uniform of the leading arm above which its draw is at least `level`.
constexpr double kLeaderQuantile = 0.02;
// Relative slack that keeps pruning decisions clear of rounding.
constexpr double kSlack = 1e-10;

/*
 * Pruning plan for one call. On a draw whose leader radius uniform exceeds
 * kLeaderQuantile, the leader's norm is at least `level`; an arm k whose
 * radius uniform exceeds skip_above[k] has norm strictly below `level`, so it
 * cannot be the argmax and need not be evaluated.
 */
struct Plan {
    std::size_t leader = 0;
    std::vector<double> skip_above;
};

Plan make_plan(std::span<const PosteriorParams> params) {
    Plan plan;
    double best = -1.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double n = norm(params[k].xbar);
        if (n > best) {
            best = n;
            plan.leader = k;
        }
    }
    const auto& lead = params[plan.leader];
    const double reach = lead.S == 0.0 ? 0.0 : radius_from_uniform(lead, kLeaderQuantile);
    const double level = best - reach * (1.0 + kSlack);
    const double guarded = level - kSlack * (1.0 + std::abs(level));
    plan.skip_above.assign(params.size(), 2.0);  // 2 = never skip
    for (std::size_t k = 0; k < params.size(); ++k) {
        if (k == plan.leader) continue;
        const double gap = guarded - norm(params[k].xbar);
        if (gap > 0.0) plan.skip_above[k] = radial_tail(params[k], gap) * (1.0 + kSlack);
    }
    return plan;
}

std::size_t full_argmax(std::span<const PosteriorParams> params, const Stream& draw) noexcept {
    std::size_t best = 0;
    double best_norm2 = -1.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double n2 = posterior_draw_norm2(params[k], draw.uniform_at(2 * k), draw.uniform_at(2 * k + 1));
        if (n2 > best_norm2) {
            best_norm2 = n2;
            best = k;
        }
    }
    return best;
}

bool survives(const Plan& plan, std::size_t k, const Stream& draw) noexcept {
    return k == plan.leader || !(draw.uniform_at(2 * k) > plan.skip_above[k]);
}

std::size_t pruned_argmax(std::span<const PosteriorParams> params, const Plan& plan, const Stream& draw) noexcept {
    if (!(draw.uniform_at(2 * plan.leader) > kLeaderQuantile)) return full_argmax(params, draw);
    bool contested = false;
    for (std::size_t k = 0; k < params.size() && !contested; ++k) {
        contested = k != plan.leader && survives(plan, k, draw);
    }
    if (!contested) return plan.leader;
    std::size_t best = 0;
    double best_norm2 = -1.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        if (!survives(plan, k, draw)) continue;
        const double n2 = posterior_draw_norm2(params[k], draw.uniform_at(2 * k), draw.uniform_at(2 * k + 1));
        if (n2 > best_norm2) {
            best_norm2 = n2;
            best = k;
        }
    }
    return best;
}

// Draw counts for samples [begin, end).
void count_winners(std::span<const PosteriorParams> params, const Plan* plan, std::size_t begin, std::size_t end,
                   const Stream& rng, std::vector<std::uint64_t>& wins) {
    for (std::size_t j = begin; j < end; ++j) {
        const Stream draw = rng.split(j);
        ++wins[plan ? pruned_argmax(params, *plan, draw) : full_argmax(params, draw)];
    }
}

OptimalityBelief to_belief(const std::vector<std::uint64_t>& wins, std::size_t samples) {
    OptimalityBelief out;
    out.samples_used = samples;
    out.rho.resize(wins.size());
    for (std::size_t k = 0; k < wins.size(); ++k) {
        out.rho[k] = static_cast<double>(wins[k]) / static_cast<double>(samples);
    }
    return out;
}

void check_inputs(std::span<const PosteriorParams> params, std::size_t samples) {
    if (samples == 0) throw Error(Errc::ZeroSamples, "estimate_rho needs at least one sample");
    if (params.empty()) throw Error(Errc::InvalidParams, "no arms");
    for (const auto& p : params) validate_for_sampling(p);
}

}  // namespace

PosteriorParams posterior_params(const ArmStats& stats) noexcept {
    return {stats.z, stats.xbar, stats.S, stats.observations + 1};
}

void validate(const PosteriorParams& params) {
    validate_for_sampling(params);
    if (!(params.S > 0.0)) throw Error(Errc::InvalidParams, "posterior needs S > 0");
}

double posterior_density(const PosteriorParams& params, Vec2 point) {
    validate(params);
    const double t = static_cast<double>(params.t);
    const double scale = params.z * (t - 3.0) / (std::numbers::pi * params.S);
    return scale * std::pow(1.0 + params.z * norm2(point - params.xbar) / params.S, -(t - 2.0));
}

double posterior_radial_tail(const PosteriorParams& params, double delta) {
    validate(params);
    if (!(delta >= 0.0)) throw Error(Errc::InvalidParams, "delta must be >= 0");
    const double t = static_cast<double>(params.t);
    return std::pow(1.0 + params.z * delta * delta / params.S, -(t - 3.0));
}

double posterior_radius(const PosteriorParams& params, double u) {
    validate_for_sampling(params);
    if (!(u > 0.0 && u <= 1.0)) throw Error(Errc::InvalidParams, "u must lie in (0, 1]");
    return radius_from_uniform(params, u);
}

Vec2 posterior_draw(const PosteriorParams& params, double u_radius, double u_angle) noexcept {
    if (params.S == 0.0) return params.xbar;
    const double radius = radius_from_uniform(params, u_radius);
    const double angle = 2.0 * std::numbers::pi * u_angle;
    const double a = norm(params.xbar);
    const Vec2 e = a > 0.0 ? Vec2{params.xbar.x / a, params.xbar.y / a} : Vec2{1.0, 0.0};
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return params.xbar + radius * Vec2{c * e.x - s * e.y, c * e.y + s * e.x};
}

double posterior_draw_norm2(const PosteriorParams& params, double u_radius, double u_angle) noexcept {
    const double a2 = norm2(params.xbar);
    if (params.S == 0.0) return a2;
    const double radius = radius_from_uniform(params, u_radius);
    const double cross = 2.0 * radius * std::sqrt(a2) * std::cos(2.0 * std::numbers::pi * u_angle);
    return std::max(0.0, a2 + radius * radius + cross);
}

Vec2 sample_posterior(const PosteriorParams& params, Stream& rng) {
    validate_for_sampling(params);
    const double u_radius = rng.uniform();
    const double u_angle = rng.uniform();
    return posterior_draw(params, u_radius, u_angle);
}

OptimalityBelief estimate_rho(std::span<const PosteriorParams> params, std::size_t samples, const Stream& rng) {
    check_inputs(params, samples);
    const Plan plan = make_plan(params);
    std::vector<std::uint64_t> wins(params.size(), 0);
    count_winners(params, &plan, 0, samples, rng, wins);
    return to_belief(wins, samples);
}

namespace reference {

OptimalityBelief estimate_rho(std::span<const PosteriorParams> params, std::size_t samples, const Stream& rng) {
    check_inputs(params, samples);
    std::vector<std::uint64_t> wins(params.size(), 0);
    count_winners(params, nullptr, 0, samples, rng, wins);
    return to_belief(wins, samples);
}

}  // namespace reference

namespace parallel {

OptimalityBelief estimate_rho(std::span<const PosteriorParams> params, std::size_t samples, const Stream& rng,
                              int workers) {
    check_inputs(params, samples);
    const std::size_t arms = params.size();
    const Plan plan = make_plan(params);
    std::vector<std::uint64_t> wins(arms, 0);
    const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(resolve_workers(workers))
    {
        std::vector<std::uint64_t> local(arms, 0);
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < count; ++j) {
            const auto idx = static_cast<std::size_t>(j);
            count_winners(params, &plan, idx, idx + 1, rng, local);
        }
#pragma omp critical
        for (std::size_t k = 0; k < arms; ++k) wins[k] += local[k];
    }
    return to_belief(wins, samples);
}

}  // namespace parallel

}  // namespace wib
