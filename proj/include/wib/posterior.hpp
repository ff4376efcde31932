#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wib/core.hpp"
#include "wib/parallel.hpp"
#include "wib/rng.hpp"

namespace wib {

/*
 * Parameters of the bivariate-t posterior of one arm's mean under the
 * improper uniform prior, built from the statistics of rounds 1..t-1:
 *
 *   f(m) = z (t - 3) / (pi S) * (1 + z |m - xbar|^2 / S)^(-(t - 2)),   t >= 4.
 */
struct PosteriorParams {
    double z = 0.0;
    Vec2 xbar{};
    double S = 0.0;
    std::int64_t t = 0;
};

// Posterior of an arm after the observations summarized in `stats`; t - 1 is
// the number of positive-power observations.
PosteriorParams posterior_params(const ArmStats& stats) noexcept;

// Throws InvalidParams unless t >= 4, z > 0 and S > 0.
void validate(const PosteriorParams& params);

double posterior_density(const PosteriorParams& params, Vec2 point);

// P(|mu~ - xbar| >= delta) = (1 + z delta^2 / S)^(-(t - 3)).
double posterior_radial_tail(const PosteriorParams& params, double delta);

// Radius whose exceedance probability is u, i.e. the inverse of the radial tail.
double posterior_radius(const PosteriorParams& params, double u);

// Exact draw: inverse-CDF radius and an angle uniform around xbar. A
// degenerate posterior (S == 0) returns xbar.
Vec2 sample_posterior(const PosteriorParams& params, Stream& rng);

// Same draw from explicit uniforms; u_radius in (0, 1], u_angle in [0, 1).
// The angle is measured from the direction of xbar, so
// |draw|^2 = |xbar|^2 + r^2 + 2 r |xbar| cos(2 pi u_angle).
Vec2 posterior_draw(const PosteriorParams& params, double u_radius, double u_angle) noexcept;

// |posterior_draw(params, u_radius, u_angle)|^2 without forming the vector.
double posterior_draw_norm2(const PosteriorParams& params, double u_radius, double u_angle) noexcept;

struct OptimalityBelief {
    std::vector<double> rho;
    std::size_t samples_used = 0;
};

/*
 * Monte-Carlo estimate of the probability that each arm has the largest
 * posterior mean norm (ties to the lowest index).
 *
 * Draw j uses the child stream d = rng.split(j); arm k takes its radius from
 * d.uniform_at(2k) and its angle from d.uniform_at(2k + 1). Because those
 * uniforms are addressable, arms whose radius alone keeps them below a level
 * the leading arm is guaranteed to reach are never evaluated. The counts are
 * identical to reference::estimate_rho, which evaluates every arm.
 *
 * Throws InvalidParams, ZeroSamples.
 */
OptimalityBelief estimate_rho(std::span<const PosteriorParams> params, std::size_t samples, const Stream& rng);

namespace parallel {
// OpenMP over draws; identical counts to the serial kernel.
OptimalityBelief estimate_rho(std::span<const PosteriorParams> params, std::size_t samples, const Stream& rng,
                              int workers = 0);
}  // namespace parallel

namespace reference {
// Every arm fully sampled on every draw.
OptimalityBelief estimate_rho(std::span<const PosteriorParams> params, std::size_t samples, const Stream& rng);
}  // namespace reference

}  // namespace wib
