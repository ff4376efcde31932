#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wib/core.hpp"
#include "wib/policies.hpp"

namespace wib {

enum class Mode { Simulate, Gain, Verify };

std::string_view to_string(Mode mode) noexcept;

struct InstanceSpec {
    std::vector<Vec2> means;
    std::vector<double> variances;
};

struct GainSpec {
    std::vector<double> g_coeffs;
    std::vector<double> h_coeffs;
    std::size_t K = 0;
};

struct RunConfig {
    Mode mode = Mode::Simulate;
    std::optional<InstanceSpec> instance;
    std::optional<GainSpec> gain;
    std::vector<PolicyKind> policies{PolicyKind::Wts};
    std::int64_t horizon = 0;
    std::int64_t replications = 1;
    std::uint64_t seed = 0;
    std::size_t mc_samples = kDefaultMcSamples;
    std::int64_t thin = 1;
    std::string out = "trace.csv";
    int workers = 0;  // 0: all available threads
    double verify_scale = 1.0;  // sample-size multiplier for the verify suite
};

/*
 * Parses a flat document of bracketed sections and `key = value` lines:
 *
 *   [instance]  means = [[2,0],[1,0]]   variances = [1,1]
 *   [run]       mode, T, replications, seed, policies, mc_samples, thin, out, workers
 *   [gain]      g_coeffs, h_coeffs, K
 *   [verify]    scale
 *
 * Values are numbers, bare words, quoted strings or bracketed lists of
 * values. `#` and `;` start comments. Unknown keys are rejected.
 *
 * Throws ParseError (with line number) and ValidationError (naming the field).
 */
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

// Default verify-mode configuration (no file needed).
RunConfig default_verify_config();

// Checks the cross-field invariants; called by parse_config.
void validate(const RunConfig& config);

}  // namespace wib
