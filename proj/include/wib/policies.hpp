#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wib/core.hpp"
#include "wib/posterior.hpp"
#include "wib/rng.hpp"

namespace wib {

enum class PolicyKind { Wts, TsKnown, TsUnknown, Oracle, Uniform };

std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept;

inline constexpr std::size_t kDefaultMcSamples = 1024;

struct PolicyConfig {
    PolicyKind kind = PolicyKind::Wts;
    std::size_t mc_samples = kDefaultMcSamples;  // WTS
    std::vector<double> known_variances{};       // TS with known variance
    std::size_t optimal_arm = 0;                 // Oracle
};

// Per-coordinate floor applied to WTS profiles: 1e-6 / K.
double wts_power_floor(std::size_t arms) noexcept;

/*
 * Memory of one policy over one run: the per-arm sufficient statistics and
 * the index of the round about to be played (starts at 1).
 */
class PolicyState {
  public:
    PolicyState(PolicyConfig config, std::size_t arms);

    PolicyKind kind() const noexcept { return config_.kind; }
    const PolicyConfig& config() const noexcept { return config_; }
    std::size_t arms() const noexcept { return per_arm_.size(); }
    std::int64_t round() const noexcept { return round_; }
    const std::vector<ArmStats>& per_arm() const noexcept { return per_arm_; }

    // Dispatches to the step function of this kind.
    PowerProfile next_profile(Stream& rng) const;

    // Folds one round of outcomes into the statistics. Throws ProfileMismatch
    // (length), MissingObservation.
    void observe(const PowerProfile& profile, const Outcome& outcome);

  private:
    PolicyConfig config_;
    std::vector<ArmStats> per_arm_;
    std::int64_t round_ = 1;
};

// Weighted Thompson Sampling: uniform for rounds 1-3, then the floored
// Monte-Carlo optimality belief. Throws WrongKind, InsufficientData.
PowerProfile wts_step(const PolicyState& state, Stream& rng);

// Belief behind wts_step for t >= 4, before flooring.
OptimalityBelief wts_belief(const PolicyState& state, const Stream& rng);

// Non-spreading Thompson Sampling with known or unknown variance; round-robin
// warm-up of K (known) or 3K (unknown) rounds. Throws WrongKind, InsufficientData.
PowerProfile ts_step(const PolicyState& state, Stream& rng);

PowerProfile oracle_step(const PolicyState& state);
PowerProfile uniform_step(const PolicyState& state);

inline PolicyState observe(PolicyState state, const PowerProfile& profile, const Outcome& outcome) {
    state.observe(profile, outcome);
    return state;
}

}  // namespace wib
