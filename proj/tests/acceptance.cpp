// Acceptance suite: one PASS/FAIL line per criterion; nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wib/bounds.hpp"
#include "wib/runner.hpp"
#include "wib/sysid.hpp"
#include "wib/verify.hpp"

using namespace wib;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20211;

struct Verdict {
    bool passed = false;
    std::string detail;
};

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

int failures = 0;
std::vector<int> selected;  // empty: run everything

void criterion(int id, const std::string& title, double time_limit_s, const std::function<Verdict()>& body) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) return;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = elapsed < time_limit_s;
    const bool ok = v.passed && in_time;
    if (!ok) ++failures;
    std::printf("[%s] C%-2d %s: %s; %.1f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
                v.detail.c_str(), elapsed, time_limit_s, in_time ? "" : " TOO SLOW");
    std::fflush(stdout);
}

Verdict from(const CheckResult& r) { return {r.passed, r.observed + " (want " + r.expected + ")"}; }

// ---- criterion 5/6 instance ------------------------------------------------
// Five arms, optimal norm 3; gap/sigma = 1, 1.1, 1.2, 1.3 with heterogeneous
// variances.
InstanceSpec regret_instance() {
    return {{{1.8, 2.4}, {2.0, 0.0}, {0.0, -1.625}, {-1.26, 1.68}, {-0.63, -0.84}}, {1.0, 1.0, 1.5625, 0.5625, 2.25}};
}

struct RegretRuns {
    Experiment ex;
    std::vector<ReplicationResult> results;
};

const RegretRuns& regret_runs() {
    static const RegretRuns runs = [] {
        RunConfig cfg;
        cfg.mode = Mode::Simulate;
        cfg.instance = regret_instance();
        cfg.policies = {PolicyKind::Wts, PolicyKind::TsUnknown};
        cfg.horizon = 20000;
        cfg.replications = 100;
        cfg.thin = 1000;
        cfg.seed = kSeed;
        RegretRuns r{Experiment::from_config(cfg), {}};
        r.results = run_replications(r.ex);
        return r;
    }();
    return runs;
}

double regret_at(const ReplicationResult& r, std::int64_t t) {
    for (const auto& row : r.rows) {
        if (row.t == t) return row.regret_cum;
    }
    throw std::runtime_error("round " + std::to_string(t) + " not recorded");
}

}  // namespace

int main(int argc, char** argv) {
    // Optional arguments select criteria by number, e.g. `acceptance 2 8`.
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    std::printf("acceptance suite, seed %llu, %d worker(s)\n", static_cast<unsigned long long>(kSeed),
                resolve_workers(0));
    const Stream root = Stream(kSeed).split(purpose::verify);

    criterion(1, "concentration equality P(|xbar-mu|>=0.5), z=10", 10, [&] {
        const std::vector<double> powers(10, 1.0);
        const auto r = check_exceedance(powers, 1.0, 0.5, 200000, 0.003, root.split(1));
        const bool oracle = std::abs(mean_exceedance(10.0, 1.0, 0.5) - 0.0820849986238988) < 1e-15;
        return Verdict{r.passed && oracle, r.observed + " vs e^-2.5 = 0.0820849986238988 +- 0.003"};
    });

    criterion(2, "chi2 law of 2S/sigma^2 at t=8 and xbar-S independence", 10, [&] {
        const std::size_t t = 8;
        Stream g = root.split(2);
        std::vector<double> powers(t);  // S(t) is built from rounds 1..t
        for (auto& p : powers) p = 0.05 + 0.95 * g.uniform();
        const auto sample = sample_sufficient_stats(powers, {1.5, -0.5}, 2.0, 10000, root.split(3));
        const auto law = check_chi2_law(sample, 2.0, t);
        const auto ind = check_independence(sample, 0.03);
        return Verdict{law.passed && ind.passed, law.observed + " (want " + law.expected + "), " + ind.observed};
    });

    criterion(3, "posterior tail identity, 3 parameter sets x 4 radii", 30, [&] {
        const std::vector<double> deltas{0.25, 0.5, 1.0, 2.0};
        const std::vector<PosteriorParams> sets{{1, {0, 0}, 1, 4}, {4, {0, 0}, 1, 5}, {10, {0, 0}, 3, 20}};
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto r = check_tail_identity(sets[i], deltas, 100000, root.split(4).split(i));
            ok = ok && r.passed;
            detail += (i ? "; " : "") + r.observed;
        }
        return Verdict{ok, detail};
    });

    criterion(4, "incremental vs batch sufficient statistics", 5, [&] {
        return from(check_incremental_batch(1000, 1000, 1e-9, root.split(5)));
    });

    criterion(5, "regret ordering and growth, K=5, T=2e4, R=100", 300, [&] {
        const auto& runs = regret_runs();
        const auto& ex = runs.ex;
        const auto R = static_cast<double>(ex.replications);
        double mean[2] = {0, 0}, var[2] = {0, 0}, half = 0;
        for (const auto& r : runs.results) mean[r.policy_index] += r.final_regret / R;
        for (const auto& r : runs.results) {
            var[r.policy_index] += (r.final_regret - mean[r.policy_index]) * (r.final_regret - mean[r.policy_index]) / (R - 1);
            if (r.policy_index == 0) half += regret_at(r, 10000) / R;
        }
        const double pooled_se = std::sqrt(var[0] / R + var[1] / R);
        const double sep = (mean[1] - mean[0]) / pooled_se;
        const double cap = 5.0 * lower_bound_constants(ex.instance).spreading_unknown * std::log(20000.0);
        const double ratio = mean[0] / half;
        const bool a = mean[0] < mean[1] && sep >= 2.0;
        const bool b = mean[0] <= cap;
        const bool c = ratio < 1.4;
        return Verdict{a && b && c, std::string("(a) wts ") + num(mean[0]) + " vs ts_unknown " + num(mean[1]) + ", " +
                                        num(sep, 3) + " pooled SE " + (a ? "ok" : "FAILED") + "; (b) " + num(mean[0]) +
                                        " <= " + num(cap) + (b ? " ok" : " FAILED") + "; (c) R(2e4)/R(1e4) = " +
                                        num(ratio, 4) + (c ? " ok" : " FAILED")};
    });

    criterion(6, "power divergence in the criterion-5 WTS runs", 300, [&] {
        const auto& runs = regret_runs();
        double min_final = std::numeric_limits<double>::infinity();
        std::size_t stalled = 0;
        std::vector<double> per_arm_min(runs.ex.instance.arms(), std::numeric_limits<double>::infinity());
        for (const auto& r : runs.results) {
            if (r.policy_index != 0) continue;
            for (std::size_t k = 0; k < r.final_stats.size(); ++k) {
                min_final = std::min(min_final, r.final_stats[k].z);
                per_arm_min[k] = std::min(per_arm_min[k], r.final_stats[k].z);
                if (!(r.final_stats[k].z > r.power_at_tenth[k])) ++stalled;
            }
        }
        std::string arms;
        for (double v : per_arm_min) arms += (arms.empty() ? "" : ", ") + num(v, 3);
        return Verdict{min_final >= 3.0 && stalled == 0, "min z_k(T) " + num(min_final, 4) + " (want >= 3; per arm " +
                                                             arms + "), " + std::to_string(stalled) +
                                                             " arms with z(T) <= z(T/10)"};
    });

    criterion(7, "gain estimation, K=16, T=5000, 20 replications", 120, [&] {
        const double c = 0.5 / 0.998867339183008;
        RunConfig cfg;
        cfg.mode = Mode::Gain;
        cfg.gain = GainSpec{{c, 0.0, -c}, {0.5}, 16};
        cfg.policies = {PolicyKind::Wts};
        cfg.horizon = 5000;
        cfg.replications = 20;
        cfg.thin = 5000;
        cfg.seed = kSeed;
        const auto ex = Experiment::from_config(cfg);
        const double peak = ex.gain->peak_gain();
        const std::size_t k_star = ex.instance.optimal_arm();
        const bool interior = k_star > 0 && k_star + 1 < ex.instance.arms();
        double flat = 0.0;
        for (double v : ex.instance.variances()) flat = std::max(flat, std::abs(std::sqrt(v) - 0.5));
        const auto results = run_replications(ex);
        int hits = 0;
        double worst = 0.0;
        for (const auto& r : results) {
            const double err = std::abs(*r.rows.back().beta_hat - peak);
            worst = std::max(worst, err);
            if (err <= 0.05) ++hits;
        }
        const bool setup = std::abs(peak - 1.0) < 1e-12 && interior && flat < 1e-15;
        return Verdict{setup && hits >= 18, std::to_string(hits) + "/20 within 0.05 of peak " + num(peak, 12) +
                                                " at bin " + std::to_string(k_star + 1) + " (worst error " +
                                                num(worst, 3) + ")"};
    });

    criterion(8, "DFT round trip, Parseval, multisine bin magnitudes", 10, [&] {
        double round_trip = 0, parseval = 0, bins = 0;
        Stream g = root.split(8);
        for (std::size_t K : {4u, 16u, 200u}) {
            const auto grid = FrequencyGrid::make(K);
            const double n = static_cast<double>(grid.N);
            std::vector<double> x(grid.N);
            for (auto& v : x) v = 2 * g.uniform() - 1;
            const auto X = dft(x);
            const auto back = idft(X);
            double e = 0, s = 0;
            for (std::size_t i = 0; i < grid.N; ++i) {
                round_trip = std::max(round_trip, std::abs(back[i] - std::complex<double>(x[i], 0)));
                e += x[i] * x[i];
                s += std::norm(X[i]);
            }
            parseval = std::max(parseval, std::abs(e - s / n));
            for (std::size_t k : {std::size_t{0}, K / 2, K - 1}) {
                const auto U = dft(synth_multisine(PowerProfile::one_hot(K, k), grid));
                for (std::size_t m = 1; m <= K; ++m) {
                    bins = std::max(bins, std::abs(std::abs(U[m]) - (m == k + 1 ? n / 2 : 0.0)));
                }
            }
            std::vector<double> p(K, 1.0 / static_cast<double>(K));
            const auto U = dft(synth_multisine(PowerProfile::create(p), grid));
            for (std::size_t m = 1; m <= K; ++m) bins = std::max(bins, std::abs(std::abs(U[m]) - n / 2 * std::sqrt(p[m - 1])));
        }
        const bool ok = round_trip < 1e-9 && parseval < 1e-9 && bins < 1e-9;
        return Verdict{ok, "round trip " + num(round_trip, 3) + ", Parseval " + num(parseval, 3) + ", bin magnitude " +
                               num(bins, 3) + " (all < 1e-9)"};
    });

    criterion(9, "determinism: byte-identical CSV, replication-prefix stability", 60, [&] {
        const auto dir = fs::temp_directory_path() / "wib_acceptance_c9";
        fs::remove_all(dir);
        fs::create_directories(dir);
        RunConfig cfg;
        cfg.mode = Mode::Simulate;
        cfg.instance = regret_instance();
        cfg.policies = {PolicyKind::Wts, PolicyKind::TsUnknown, PolicyKind::TsKnown, PolicyKind::Oracle,
                        PolicyKind::Uniform};
        cfg.horizon = 300;
        cfg.replications = 10;
        cfg.seed = kSeed;
        std::ostringstream log;
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            return std::string(std::istreambuf_iterator<char>(in), {});
        };
        cfg.out = (dir / "first.csv").string();
        run(cfg, log);
        cfg.out = (dir / "second.csv").string();
        run(cfg, log);
        const bool identical = slurp(dir / "first.csv") == slurp(dir / "second.csv");

        cfg.replications = 20;
        cfg.out = (dir / "twenty.csv").string();
        run(cfg, log);
        // Rows of replications 0..9 in the R = 20 file, in order, must equal the R = 10 file.
        std::istringstream ten(slurp(dir / "first.csv")), twenty(slurp(dir / "twenty.csv"));
        std::string line, prefix_ten, prefix_twenty;
        while (std::getline(ten, line)) prefix_ten += line + '\n';
        while (std::getline(twenty, line)) {
            const auto a = line.find(',');
            const auto b = line.find(',', a + 1);
            if (a == std::string::npos || line.rfind("policy,", 0) == 0) {
                prefix_twenty += line + '\n';
                continue;
            }
            if (std::stoi(line.substr(a + 1, b - a - 1)) < 10) prefix_twenty += line + '\n';
        }
        const bool prefix = prefix_ten == prefix_twenty;
        fs::remove_all(dir);
        return Verdict{identical && prefix, std::string("repeat run ") + (identical ? "byte-identical" : "DIFFERS") +
                                                ", first 10 replications " + (prefix ? "unchanged" : "CHANGED") +
                                                " when R goes 10 -> 20"};
    });

    criterion(10, "bound constants", 10, [&] {
        const auto c = lower_bound_constants(new_instance({{2, 0}, {1, 0}}, {1, 1}));
        const double e1 = std::abs(c.spreading_unknown - 1.0);
        const double e2 = std::abs(c.ns_unknown - 1.4426950408889634);
        const auto order = check_bound_ordering(1000, root.split(10));
        return Verdict{e1 < 1e-12 && e2 < 1e-12 && order.passed, "spreading_unknown err " + num(e1, 3) +
                                                                      ", ns_unknown err " + num(e2, 3) +
                                                                      ", ordering: " + order.observed};
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
