#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wib/rng.hpp"

namespace wib {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) noexcept = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double norm2(Vec2 a) noexcept { return dot(a, a); }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }

// Norms closer than this are treated as a tie for the optimal arm.
inline constexpr double kNormTieTolerance = 1e-12;
// Simplex tolerance on the sum of a power profile.
inline constexpr double kSimplexTolerance = 1e-12;

/*
 * Ground truth of a weighted-information Gaussian bandit: K arms with 2-D
 * means and per-arm noise variances. The optimal arm is the unique maximizer
 * of the mean norm; gaps are measured against it.
 */
class BanditInstance {
  public:
    // Throws TooFewArms, DimensionMismatch, NonPositiveVariance, TiedOptimum.
    static BanditInstance create(std::vector<Vec2> means, std::vector<double> variances);

    std::size_t arms() const noexcept { return means_.size(); }
    std::span<const Vec2> means() const noexcept { return means_; }
    std::span<const double> variances() const noexcept { return variances_; }
    std::span<const double> gaps() const noexcept { return gaps_; }
    std::size_t optimal_arm() const noexcept { return optimal_; }
    double optimal_norm() const noexcept { return optimal_norm_; }
    double max_gap() const noexcept;

  private:
    BanditInstance() = default;

    std::vector<Vec2> means_;
    std::vector<double> variances_;
    std::vector<double> gaps_;
    std::size_t optimal_ = 0;
    double optimal_norm_ = 0.0;
};

inline BanditInstance new_instance(std::vector<Vec2> means, std::vector<double> variances) {
    return BanditInstance::create(std::move(means), std::move(variances));
}

// A point on the K-simplex: the per-round allocation of unit power.
class PowerProfile {
  public:
    // Throws InvalidProfile unless every entry is in [0, 1] and they sum to 1.
    static PowerProfile create(std::vector<double> powers);
    static PowerProfile uniform(std::size_t arms);
    static PowerProfile one_hot(std::size_t arms, std::size_t arm);

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t k) const noexcept { return p_[k]; }
    std::span<const double> values() const noexcept { return p_; }
    bool is_one_hot() const noexcept;

  private:
    explicit PowerProfile(std::vector<double> p) : p_(std::move(p)) {}
    std::vector<double> p_;
};

// One round of outcomes; arms that received zero power carry no observation.
struct Outcome {
    std::vector<std::optional<Vec2>> values;
};

// Draws X_k ~ N(mu_k, sigma_k^2 / (2 p_k) I_2) for every arm with p_k > 0.
Outcome sample_outcome(const BanditInstance& instance, const PowerProfile& profile, Stream& rng);

// Running weighted sufficient statistics of one arm.
struct ArmStats {
    double z = 0.0;            // cumulative power
    Vec2 xbar{};               // power-weighted sample mean
    double S = 0.0;            // power-weighted scatter around xbar
    std::int64_t rounds = 0;   // all rounds elapsed, zero-power ones included
    std::int64_t observations = 0;  // rounds with positive power
};

// Weighted West update. Throws NegativePower, MissingObservation.
ArmStats update_stats(const ArmStats& stats, double power, const std::optional<Vec2>& x);

// Direct two-pass evaluation of the weighted mean and scatter. Throws
// DimensionMismatch, NegativePower, AllZeroPower.
ArmStats batch_stats(std::span<const double> powers, std::span<const Vec2> xs);

}  // namespace wib
