#include "wib/sysid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wib/error.hpp"

namespace wib {

namespace {

using cplx = std::complex<double>;

constexpr double kZeroNoiseTolerance = 1e-12;

template <class T>
std::vector<cplx> naive_dft(std::span<const T> x, double sign) {
    if (x.empty()) throw Error(Errc::EmptyInput, "DFT of an empty sequence");
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc{};
        for (std::size_t tau = 0; tau < n; ++tau) {
            // Reduce m*tau mod n first so the angle stays in [0, 2 pi).
            const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>((m * tau) % n) /
                                 static_cast<double>(n);
            acc += cplx(x[tau]) * cplx(std::cos(angle), std::sin(angle));
        }
        out[m] = acc;
    }
    return out;
}

}  // namespace

FrequencyGrid FrequencyGrid::make(std::size_t K) {
    if (K < 2) throw Error(Errc::TooFewArms, "frequency grid needs K >= 2");
    FrequencyGrid grid;
    grid.K = K;
    grid.N = 2 * K + 1;
    grid.omegas.resize(K);
    for (std::size_t k = 1; k <= K; ++k) {
        grid.omegas[k - 1] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid.N);
    }
    return grid;
}

GainProblem GainProblem::create(FrequencyGrid grid, std::vector<cplx> g_response, std::vector<cplx> h_response) {
    if (grid.K < 2) throw Error(Errc::TooFewArms, "gain problem needs K >= 2");
    if (g_response.size() != grid.K || h_response.size() != grid.K) {
        throw Error(Errc::DimensionMismatch, "responses must have one value per frequency");
    }
    std::vector<Vec2> means(grid.K);
    std::vector<double> variances(grid.K);
    for (std::size_t k = 0; k < grid.K; ++k) {
        if (std::abs(h_response[k]) <= kZeroNoiseTolerance) {
            throw Error(Errc::ZeroNoiseBin, "|H| vanishes at bin " + std::to_string(k + 1));
        }
        means[k] = {g_response[k].real(), g_response[k].imag()};
        variances[k] = std::norm(h_response[k]);
    }
    try {
        auto instance = BanditInstance::create(std::move(means), std::move(variances));
        return GainProblem(std::move(grid), std::move(g_response), std::move(h_response), std::move(instance));
    } catch (const Error& e) {
        if (e.code() == Errc::TiedOptimum) throw Error(Errc::TiedPeak, "|G| has no unique peak on the grid");
        throw;
    }
}

cplx fir_response(std::span<const double> coeffs, double omega) noexcept {
    cplx acc{};
    for (std::size_t tau = 0; tau < coeffs.size(); ++tau) {
        const double angle = -omega * static_cast<double>(tau);
        acc += coeffs[tau] * cplx(std::cos(angle), std::sin(angle));
    }
    return acc;
}

GainProblem grid_from_fir(std::span<const double> g_coeffs, std::span<const double> h_coeffs, std::size_t K) {
    if (g_coeffs.empty() || h_coeffs.empty()) throw Error(Errc::EmptyInput, "FIR coefficient list is empty");
    FrequencyGrid grid = FrequencyGrid::make(K);
    std::vector<cplx> g(K), h(K);
    for (std::size_t k = 0; k < K; ++k) {
        g[k] = fir_response(g_coeffs, grid.omegas[k]);
        h[k] = fir_response(h_coeffs, grid.omegas[k]);
    }
    return GainProblem::create(std::move(grid), std::move(g), std::move(h));
}

Outcome run_experiment(const GainProblem& problem, const PowerProfile& profile, Stream& rng) {
    return sample_outcome(problem.instance(), profile, rng);
}

std::vector<double> synth_multisine(const PowerProfile& profile, const FrequencyGrid& grid) {
    if (profile.size() != grid.K) {
        throw Error(Errc::InvalidProfile, "profile length does not match the frequency grid");
    }
    std::vector<double> u(grid.N, 0.0);
    for (std::size_t k = 0; k < grid.K; ++k) {
        const double amplitude = std::sqrt(profile[k]);
        if (amplitude == 0.0) continue;
        for (std::size_t tau = 0; tau < grid.N; ++tau) {
            // sin(w_k tau) with the phase reduced modulo N.
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(((k + 1) * tau) % grid.N) /
                                 static_cast<double>(grid.N);
            u[tau] += amplitude * std::sin(angle);
        }
    }
    return u;
}

std::vector<cplx> dft(std::span<const double> x) { return naive_dft(x, -1.0); }

std::vector<cplx> dft(std::span<const cplx> x) { return naive_dft(x, -1.0); }

std::vector<cplx> idft(std::span<const cplx> spectrum) {
    auto out = naive_dft(spectrum, 1.0);
    const double scale = 1.0 / static_cast<double>(spectrum.size());
    for (auto& v : out) v *= scale;
    return out;
}

GainEstimate gain_estimate(std::span<const ArmStats> per_arm, std::int64_t t) {
    std::size_t best = per_arm.size();
    double best_z = 0.0;
    for (std::size_t k = 0; k < per_arm.size(); ++k) {
        if (per_arm[k].z > best_z) {
            best_z = per_arm[k].z;
            best = k;
        }
    }
    if (best == per_arm.size()) throw Error(Errc::NoData, "no arm has received power");
    return {norm(per_arm[best].xbar), best, t};
}

}  // namespace wib
