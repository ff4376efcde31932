#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wib/core.hpp"
#include "wib/rng.hpp"

namespace wib {

// K equispaced excitation frequencies 2 pi k / N, k = 1..K, with N = 2K + 1.
struct FrequencyGrid {
    std::size_t K = 0;
    std::size_t N = 0;
    std::vector<double> omegas;

    static FrequencyGrid make(std::size_t K);
};

/*
 * Gain estimation as a bandit: arm k is frequency w_k with mean
 * [Re G(e^{jw_k}), Im G(e^{jw_k})] and noise variance |H(e^{jw_k})|^2.
 */
class GainProblem {
  public:
    // Throws DimensionMismatch, ZeroNoiseBin, TiedPeak, TooFewArms.
    static GainProblem create(FrequencyGrid grid, std::vector<std::complex<double>> g_response,
                              std::vector<std::complex<double>> h_response);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const std::complex<double>> g_response() const noexcept { return g_; }
    std::span<const std::complex<double>> h_response() const noexcept { return h_; }
    const BanditInstance& instance() const noexcept { return instance_; }
    // max_k |G(e^{jw_k})|
    double peak_gain() const noexcept { return instance_.optimal_norm(); }

  private:
    GainProblem(FrequencyGrid grid, std::vector<std::complex<double>> g, std::vector<std::complex<double>> h,
                BanditInstance instance)
        : grid_(std::move(grid)), g_(std::move(g)), h_(std::move(h)), instance_(std::move(instance)) {}

    FrequencyGrid grid_;
    std::vector<std::complex<double>> g_;
    std::vector<std::complex<double>> h_;
    BanditInstance instance_;
};

// Frequency response sum_tau c_tau e^{-j w tau} of an FIR filter.
std::complex<double> fir_response(std::span<const double> coeffs, double omega) noexcept;

GainProblem grid_from_fir(std::span<const double> g_coeffs, std::span<const double> h_coeffs, std::size_t K);

// One experiment in the frequency domain; the same law as sample_outcome on
// the induced instance.
Outcome run_experiment(const GainProblem& problem, const PowerProfile& profile, Stream& rng);

// u_tau = sum_k sqrt(p_k) sin(w_k tau), tau = 0..N-1.
std::vector<double> synth_multisine(const PowerProfile& profile, const FrequencyGrid& grid);

// Unnormalized DFT U_m = sum_tau x_tau e^{-j 2 pi m tau / N}, direct O(N^2).
std::vector<std::complex<double>> dft(std::span<const double> x);
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x);
// x_tau = (1/N) sum_m U_m e^{+j 2 pi m tau / N}
std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum);

struct GainEstimate {
    double beta_hat = 0.0;
    std::size_t k_hat = 0;
    std::int64_t t = 0;
};

// beta_hat = |xbar_k| at the arm with the most cumulative power. Throws NoData.
GainEstimate gain_estimate(std::span<const ArmStats> per_arm, std::int64_t t);

}  // namespace wib
