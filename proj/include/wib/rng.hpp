#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace wib {

/*
 * Counter-based random stream.
 *
 * The i-th output of a stream is a pure function of (key, i): the SplitMix64
 * finalizer applied to key + i * golden_gamma. Child streams are derived by
 * hashing a tag into the key, so a stream for (seed, policy, replication,
 * round, purpose) is reproducible no matter which thread computes it or in
 * what order replications execute.
 */
class Stream {
  public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ull;

    explicit constexpr Stream(std::uint64_t key) noexcept : key_(mix(key)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    // Derive an independent child stream. The parent is not advanced.
    constexpr Stream split(std::uint64_t tag) const noexcept {
        // The outer mix keeps split(a).split(b) distinct from split(b).split(a).
        return Stream(mix(key_ ^ mix(tag + 0x632be59bd9b4e019ull)) + golden_gamma, raw_key{});
    }

    constexpr result_type operator()() noexcept { return mix(key_ + golden_gamma * ++counter_); }

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept { return to_unit((*this)()); }

    // The uniform that the (index + 1)-th call to uniform() on a fresh copy
    // of this stream would return. Does not advance the stream.
    constexpr double uniform_at(std::uint64_t index) const noexcept {
        return to_unit(mix(key_ + golden_gamma * (index + 1)));
    }

    // Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() noexcept {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr std::uint64_t counter() const noexcept { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    static constexpr double to_unit(std::uint64_t bits) noexcept {
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    struct raw_key {};
    constexpr Stream(std::uint64_t key, raw_key) noexcept : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Purpose tags for child streams.
namespace purpose {
inline constexpr std::uint64_t policy = 0x706f6c6963790000ull;
inline constexpr std::uint64_t outcome = 0x6f7574636f6d6500ull;
inline constexpr std::uint64_t verify = 0x7665726966790000ull;
}  // namespace purpose

}  // namespace wib
