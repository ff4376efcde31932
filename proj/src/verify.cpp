#include "wib/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wib/bounds.hpp"
#include "wib/error.hpp"
#include "wib/policies.hpp"
#include "wib/runner.hpp"

namespace wib {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::size_t scaled(std::size_t n, double scale) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale)));
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

double relative_error(double a, double b) {
    if (b == 0.0) return std::abs(a);
    return std::abs(a - b) / std::abs(b);
}

// Fixed power trajectory in [0.05, 1), reproducible from the stream.
std::vector<double> power_trajectory(std::size_t length, Stream rng) {
    std::vector<double> p(length);
    for (auto& v : p) v = 0.05 + 0.95 * rng.uniform();
    return p;
}

BanditInstance three_arm_instance() {
    return BanditInstance::create({{2.0, 0.0}, {0.0, 1.5}, {-1.2, 0.9}}, {1.0, 0.5, 1.0});
}

}  // namespace

StatsSample sample_sufficient_stats(std::span<const double> powers, Vec2 mean, double sigma2,
                                    std::size_t replications, const Stream& base, Execution exec, int workers) {
    // A second, strictly dominated arm makes a valid instance; only arm 0 is observed.
    const auto instance = BanditInstance::create({mean, {norm(mean) + 1.0, 0.0}}, {sigma2, 1.0});
    StatsSample out;
    out.xbar.resize(replications);
    out.S.resize(replications);
    for (double p : powers) out.z += p;
    std::vector<PowerProfile> profiles;
    for (double p : powers) profiles.push_back(PowerProfile::create({p, 1.0 - p}));

    for_each_index(replications, exec, workers, [&](std::size_t i) {
        Stream rng = base.split(i);
        ArmStats stats;
        for (const auto& profile : profiles) {
            const Outcome o = sample_outcome(instance, profile, rng);
            stats = update_stats(stats, profile[0], o.values[0]);
        }
        out.xbar[i] = stats.xbar;
        out.S[i] = stats.S;
    });
    return out;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double correlation(std::span<const double> a, std::span<const double> b) {
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

CheckResult check_incremental_batch(std::size_t trajectories, std::size_t max_length, double tolerance,
                                    const Stream& base) {
    double worst = 0.0;
    for (std::size_t i = 0; i < trajectories; ++i) {
        Stream rng = base.split(i);
        const std::size_t length = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_length));
        const Vec2 offset{8.0 * rng.uniform() - 4.0, 8.0 * rng.uniform() - 4.0};
        const double spread = 0.1 + 3.0 * rng.uniform();
        std::vector<double> powers(length);
        std::vector<Vec2> xs(length);
        ArmStats inc;
        for (std::size_t l = 0; l < length; ++l) {
            // About one power in five is zero; the first is always positive.
            const double u = rng.uniform();
            powers[l] = (l > 0 && u < 0.2) ? 0.0 : rng.uniform();
            const auto [n1, n2] = rng.normal_pair();
            xs[l] = offset + spread * Vec2{n1, n2};
            inc = update_stats(inc, powers[l], powers[l] > 0.0 ? std::optional<Vec2>(xs[l]) : std::nullopt);
        }
        const ArmStats batch = batch_stats(powers, xs);
        worst = std::max({worst, relative_error(inc.z, batch.z), norm(inc.xbar - batch.xbar) / norm(batch.xbar),
                          relative_error(inc.S, batch.S)});
    }
    return {"core: incremental/batch sufficient statistics", worst < tolerance,
            "max relative error " + fmt(worst), "< " + fmt(tolerance)};
}

CheckResult check_mean_law(const StatsSample& sample, Vec2 mean, double sigma2) {
    const double n = static_cast<double>(sample.xbar.size());
    const double var = sigma2 / (2.0 * sample.z);
    const double se = std::sqrt(var / n);
    bool ok = true;
    std::ostringstream obs;
    for (int c = 0; c < 2; ++c) {
        std::vector<double> coord(sample.xbar.size());
        for (std::size_t i = 0; i < coord.size(); ++i) coord[i] = c == 0 ? sample.xbar[i].x : sample.xbar[i].y;
        const double mu = c == 0 ? mean.x : mean.y;
        const double m = mean_of(coord);
        const double v = variance_of(coord);
        ok = ok && std::abs(m - mu) < 3.0 * se && std::abs(v / var - 1.0) < 0.05;
        obs << (c == 0 ? "x" : " y") << ": mean err " << fmt((m - mu) / se) << " SE, var ratio " << fmt(v / var);
    }
    return {"core: xbar ~ N(mu, sigma^2/(2z) I)", ok, obs.str(), "|err| < 3 SE, |ratio - 1| < 0.05"};
}

CheckResult check_chi2_law(const StatsSample& sample, double sigma2, std::size_t t, double misspecification) {
    const int dof = static_cast<int>(2 * (t - 1));
    std::vector<double> y(sample.S.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 2.0 * sample.S[i] / (misspecification * sigma2);
    const double d = ks_distance(std::move(y), [dof](double x) { return chi2_cdf_even(dof, std::max(x, 0.0)); });
    const double crit = 1.63 / std::sqrt(static_cast<double>(sample.S.size()));
    return {"core: 2S/sigma^2 ~ chi2(" + std::to_string(dof) + ")", d < crit, "KS " + fmt(d), "< " + fmt(crit)};
}

CheckResult check_independence(const StatsSample& sample, double threshold) {
    std::vector<double> xs(sample.xbar.size()), ys(sample.xbar.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = sample.xbar[i].x;
        ys[i] = sample.xbar[i].y;
    }
    const double cx = correlation(xs, sample.S);
    const double cy = correlation(ys, sample.S);
    return {"core: xbar independent of S", std::abs(cx) < threshold && std::abs(cy) < threshold,
            "corr " + fmt(cx) + ", " + fmt(cy), "|corr| < " + fmt(threshold)};
}

CheckResult check_exceedance(std::span<const double> powers, double sigma2, double eps, std::size_t replications,
                             double tolerance, const Stream& base, Execution exec, int workers) {
    const Vec2 mean{1.0, -2.0};
    const StatsSample sample = sample_sufficient_stats(powers, mean, sigma2, replications, base, exec, workers);
    std::size_t hits = 0;
    for (const auto& xb : sample.xbar) hits += norm(xb - mean) >= eps ? 1 : 0;
    const double n = static_cast<double>(replications);
    const double freq = static_cast<double>(hits) / n;
    const double exact = mean_exceedance(sample.z, sigma2, eps);
    const double band = tolerance > 0.0 ? tolerance : 3.0 * std::sqrt(exact * (1.0 - exact) / n);
    return {"core: P(|xbar - mu| >= eps) = exp(-z eps^2/sigma^2)", std::abs(freq - exact) <= band,
            "empirical " + fmt(freq), fmt(exact) + " +/- " + fmt(band)};
}

CheckResult check_tail_identity(const PosteriorParams& params, std::span<const double> deltas, std::size_t draws,
                                const Stream& base) {
    std::vector<double> radius(draws);
    Stream rng = base;
    for (auto& r : radius) r = norm(sample_posterior(params, rng) - params.xbar);
    bool ok = true;
    std::ostringstream obs;
    const double n = static_cast<double>(draws);
    for (double delta : deltas) {
        const auto hits = std::count_if(radius.begin(), radius.end(), [delta](double r) { return r >= delta; });
        const double freq = static_cast<double>(hits) / n;
        const double exact = posterior_radial_tail(params, delta);
        const double se = std::sqrt(exact * (1.0 - exact) / n);
        const bool pass = std::abs(freq - exact) <= 3.0 * se;
        ok = ok && pass;
        obs << " d=" << delta << ":" << fmt((freq - exact) / se) << "SE";
    }
    std::ostringstream name;
    name << "posterior: sampler tail (z=" << params.z << ", S=" << params.S << ", t=" << params.t << ")";
    return {name.str(), ok, obs.str(), "within 3 SE"};
}

CheckResult check_density_normalization(const PosteriorParams& params, double radius) {
    constexpr int radial = 4000;  // even, Simpson
    constexpr int angular = 32;   // trapezoid, exact for periodic integrands
    const double hr = radius / radial;
    const double ht = 2.0 * std::numbers::pi / angular;
    double total = 0.0;
    for (int a = 0; a < angular; ++a) {
        const double theta = a * ht;
        const Vec2 dir{std::cos(theta), std::sin(theta)};
        double ring = 0.0;
        for (int i = 0; i <= radial; ++i) {
            const double r = i * hr;
            const double w = (i == 0 || i == radial) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            ring += w * posterior_density(params, params.xbar + r * dir) * r;
        }
        total += ring * hr / 3.0 * ht;
    }
    const double expected = 1.0 - posterior_radial_tail(params, radius);
    std::ostringstream name;
    name << "posterior: density mass on disc (t=" << params.t << ")";
    return {name.str(), std::abs(total - expected) < 1e-4, "quadrature " + fmt(total), fmt(expected) + " +/- 1e-4"};
}

CheckResult check_tail_monotonicity() {
    bool ok = true;
    const std::vector<double> deltas{0.1, 0.5, 1.0, 2.0};
    const std::vector<double> zs{0.5, 1.0, 2.0};
    const std::vector<double> ss{0.5, 1.0, 2.0};
    const std::vector<std::int64_t> ts{4, 5, 10};
    auto tail = [](double z, double s, std::int64_t t, double d) {
        return posterior_radial_tail({z, {}, s, t}, d);
    };
    for (double z : zs)
        for (double s : ss)
            for (auto t : ts)
                for (std::size_t i = 0; i + 1 < deltas.size(); ++i) ok = ok && tail(z, s, t, deltas[i + 1]) < tail(z, s, t, deltas[i]);
    for (double d : deltas) {
        for (std::size_t i = 0; i + 1 < zs.size(); ++i) ok = ok && tail(zs[i + 1], 1.0, 6, d) < tail(zs[i], 1.0, 6, d);
        for (std::size_t i = 0; i + 1 < ss.size(); ++i) ok = ok && tail(1.0, ss[i + 1], 6, d) > tail(1.0, ss[i], 6, d);
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) ok = ok && tail(1.0, 1.0, ts[i + 1], d) < tail(1.0, 1.0, ts[i], d);
    }
    return {"posterior: tail monotone in delta, z, t, S", ok, ok ? "monotone" : "violated", "strict monotonicity"};
}

CheckResult check_rho_consistency(std::size_t samples, std::size_t trials, const Stream& base) {
    const std::vector<PosteriorParams> params{
        {2.0, {1.0, 0.0}, 4.0, 8}, {3.0, {0.9, 0.2}, 5.0, 8}, {1.0, {0.0, 0.5}, 2.0, 8}};
    double worst = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto small = estimate_rho(params, samples, base.split(2 * i));
        const auto large = estimate_rho(params, 10 * samples, base.split(2 * i + 1));
        for (std::size_t k = 0; k < params.size(); ++k) worst = std::max(worst, std::abs(small.rho[k] - large.rho[k]));
    }
    const double limit = 5.0 / std::sqrt(static_cast<double>(samples));
    return {"posterior: rho(M) vs rho(10M)", worst < limit, "max diff " + fmt(worst), "< " + fmt(limit)};
}

CheckResult check_chi2_cdf_quadrature() {
    // Composite Simpson on the density; panels of width 0.005 are far below
    // the 1e-8 tolerance for these degrees of freedom.
    constexpr double step = 0.005;
    constexpr int panels_per_unit = 200;  // 1 / step
    double worst = 0.0;
    bool monotone = true;
    for (int dof = 2; dof <= 40; dof += 2) {
        const int m = dof / 2;
        const double log_norm = m * std::log(2.0) + std::lgamma(static_cast<double>(m));
        auto density = [&](double x) {
            if (x == 0.0) return m == 1 ? 0.5 : 0.0;
            return std::exp((m - 1) * std::log(x) - x / 2.0 - log_norm);
        };
        double integral = 0.0;
        double previous = 0.0;
        for (int unit = 0; unit < 100; ++unit) {
            const double a = unit;
            double simpson = density(a) + density(a + 1.0);
            for (int i = 1; i < panels_per_unit * 2; ++i) {
                simpson += (i % 2 == 1 ? 4.0 : 2.0) * density(a + i * step / 2.0);
            }
            integral += simpson * (step / 2.0) / 3.0;
            const double cdf = chi2_cdf_even(dof, a + 1.0);
            worst = std::max(worst, std::abs(cdf - integral));
            monotone = monotone && cdf >= previous && cdf < 1.0 + 1e-15;
            previous = cdf;
        }
    }
    return {"bounds: chi2 CDF vs numerical integration", worst < 1e-8 && monotone, "max error " + fmt(worst),
            "< 1e-08, nondecreasing"};
}

CheckResult check_variance_tail(std::size_t t, double sigma2, double eps, std::size_t replications,
                                const Stream& base, Execution exec, int workers) {
    const auto powers = power_trajectory(t, base.split(0xffff));
    const StatsSample sample = sample_sufficient_stats(powers, {0.5, 0.5}, sigma2, replications, base, exec, workers);
    const double threshold = static_cast<double>(t) * (sigma2 + eps);
    const auto hits = std::count_if(sample.S.begin(), sample.S.end(), [&](double s) { return s >= threshold; });
    const double n = static_cast<double>(replications);
    const double freq = static_cast<double>(hits) / n;
    const double bound = variance_tail_bound(static_cast<int>(t), sigma2, eps);
    const double se = std::sqrt(std::max(freq * (1.0 - freq), 1.0 / n) / n);
    return {"bounds: P(S(t) >= t(sigma^2+eps)) <= exp(-t h(eps/sigma^2))", freq <= bound + 3.0 * se,
            "empirical " + fmt(freq), "<= " + fmt(bound) + " + 3 SE"};
}

CheckResult check_bound_ordering(std::size_t instances, const Stream& base) {
    std::size_t violations = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        Stream rng = base.split(i);
        const std::size_t arms = 2 + static_cast<std::size_t>(rng.uniform() * 9.0);
        std::vector<Vec2> means(arms);
        std::vector<double> variances(arms);
        for (std::size_t k = 0; k < arms; ++k) {
            const double radius = 0.01 * static_cast<double>(k) + 5.0 * rng.uniform();
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            means[k] = {radius * std::cos(angle), radius * std::sin(angle)};
            variances[k] = 0.05 + 5.0 * rng.uniform();
        }
        BoundConstants c;
        try {
            c = lower_bound_constants(BanditInstance::create(means, variances));
        } catch (const Error&) {
            continue;  // tied norms: not a valid instance
        }
        if (!(c.ns_unknown >= c.spreading_unknown)) ++violations;
    }
    return {"bounds: ns_unknown >= spreading_unknown", violations == 0, std::to_string(violations) + " violations",
            "0 violations over " + std::to_string(instances) + " instances"};
}

CheckResult check_rotation_invariance(std::size_t instances, const Stream& base) {
    double worst = 0.0;
    bool same_arm = true;
    for (std::size_t i = 0; i < instances; ++i) {
        Stream rng = base.split(i);
        const std::size_t arms = 2 + static_cast<std::size_t>(rng.uniform() * 6.0);
        std::vector<Vec2> means(arms), rotated(arms);
        std::vector<double> variances(arms);
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        for (std::size_t k = 0; k < arms; ++k) {
            const double radius = 0.5 + 0.25 * static_cast<double>(k) + 0.1 * rng.uniform();
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            means[k] = {radius * std::cos(angle), radius * std::sin(angle)};
            rotated[k] = {std::cos(phi) * means[k].x - std::sin(phi) * means[k].y,
                          std::sin(phi) * means[k].x + std::cos(phi) * means[k].y};
            variances[k] = 0.1 + rng.uniform();
        }
        const auto a = BanditInstance::create(means, variances);
        const auto b = BanditInstance::create(rotated, variances);
        same_arm = same_arm && a.optimal_arm() == b.optimal_arm();
        for (std::size_t k = 0; k < arms; ++k) worst = std::max(worst, std::abs(a.gaps()[k] - b.gaps()[k]));
        const auto ca = lower_bound_constants(a);
        const auto cb = lower_bound_constants(b);
        worst = std::max({worst, relative_error(cb.spreading_unknown, ca.spreading_unknown),
                          relative_error(cb.ns_unknown, ca.ns_unknown)});
    }
    return {"core: rotation invariance of optimum, gaps, constants", same_arm && worst < 1e-12,
            "max deviation " + fmt(worst), "< 1e-12"};
}

CheckResult check_wts_warmup(std::size_t seeds, const Stream& base) {
    const auto instance = three_arm_instance();
    bool ok = true;
    for (std::size_t s = 0; s < seeds; ++s) {
        PolicyState state(PolicyConfig{.kind = PolicyKind::Wts}, instance.arms());
        Stream rng = base.split(s);
        for (int t = 1; t <= 3; ++t) {
            const auto profile = state.next_profile(rng);
            for (std::size_t k = 0; k < instance.arms(); ++k) ok = ok && profile[k] == 1.0 / 3.0;
            state.observe(profile, sample_outcome(instance, profile, rng));
        }
    }
    return {"policies: WTS rounds 1-3 are uniform", ok, ok ? "uniform" : "non-uniform", "(1/K, ..., 1/K)"};
}

CheckResult check_non_spreading(std::int64_t rounds, const Stream& base) {
    const auto instance = three_arm_instance();
    bool ok = true;
    for (auto kind : {PolicyKind::TsKnown, PolicyKind::TsUnknown, PolicyKind::Oracle}) {
        PolicyConfig cfg{.kind = kind};
        cfg.known_variances.assign(instance.variances().begin(), instance.variances().end());
        cfg.optimal_arm = instance.optimal_arm();
        PolicyState state(cfg, instance.arms());
        Stream rng = base.split(static_cast<std::uint64_t>(kind));
        for (std::int64_t t = 1; t <= rounds; ++t) {
            const auto profile = state.next_profile(rng);
            ok = ok && profile.is_one_hot();
            state.observe(profile, sample_outcome(instance, profile, rng));
        }
    }
    return {"policies: TS and oracle profiles are one-hot", ok, ok ? "one-hot" : "spread", "one-hot every round"};
}

CheckResult check_determinism(const Stream& base) {
    RunConfig cfg;
    cfg.instance = InstanceSpec{{{2.0, 0.0}, {0.0, 1.5}, {-1.0, 0.0}}, {1.0, 0.5, 1.0}};
    cfg.policies = {PolicyKind::Wts, PolicyKind::TsUnknown};
    cfg.horizon = 200;
    cfg.replications = 3;
    cfg.seed = base.key();
    cfg.mc_samples = 128;
    const auto ex = Experiment::from_config(cfg);
    auto render = [&](Execution exec) {
        std::ostringstream os;
        write_csv(os, ex, run_replications(ex, exec, 0));
        return os.str();
    };
    const auto first = render(Execution::Serial);
    const bool ok = first == render(Execution::Serial) && first == render(Execution::Parallel);
    return {"policies: identical seed gives identical traces", ok, ok ? "byte-identical" : "differs",
            "serial == serial == parallel"};
}

CheckResult check_power_divergence(std::int64_t horizon, std::size_t seeds, std::uint64_t seed, Execution exec,
                                   int workers) {
    RunConfig cfg;
    const auto inst = three_arm_instance();
    cfg.instance = InstanceSpec{{inst.means().begin(), inst.means().end()}, {inst.variances().begin(), inst.variances().end()}};
    cfg.policies = {PolicyKind::Wts};
    cfg.horizon = horizon;
    cfg.replications = static_cast<std::int64_t>(seeds);
    cfg.thin = horizon;
    cfg.seed = seed;
    const auto ex = Experiment::from_config(cfg);
    const auto results = run_replications(ex, exec, workers);
    double min_final = std::numeric_limits<double>::infinity();
    bool grows = true;
    for (const auto& r : results) {
        for (std::size_t k = 0; k < r.final_stats.size(); ++k) {
            min_final = std::min(min_final, r.final_stats[k].z);
            grows = grows && r.final_stats[k].z > r.power_at_tenth[k];
        }
    }
    return {"policies: cumulative power diverges on every arm", min_final >= 3.0 && grows,
            "min z(T) " + fmt(min_final) + (grows ? ", z(T) > z(T/10)" : ", z(T) stalled"),
            "min z(T) >= 3 and z(T) > z(T/10)"};
}

CheckResult check_belief_concentration(std::int64_t round, std::size_t runs, std::uint64_t seed, Execution exec,
                                       int workers) {
    const auto instance = BanditInstance::create({{5.0, 0.0}, {0.0, 0.0}}, {1.0, 1.0});
    std::vector<double> rho_star(runs);
    for_each_index(runs, exec, workers, [&](std::size_t i) {
        PolicyState state(PolicyConfig{.kind = PolicyKind::Wts}, instance.arms());
        const Stream base = Stream(seed).split(purpose::verify).split(i);
        while (state.round() < round) {
            const Stream r = base.split(static_cast<std::uint64_t>(state.round()));
            Stream policy_rng = r.split(purpose::policy);
            Stream outcome_rng = r.split(purpose::outcome);
            const auto profile = state.next_profile(policy_rng);
            state.observe(profile, sample_outcome(instance, profile, outcome_rng));
        }
        rho_star[i] = wts_belief(state, base.split(static_cast<std::uint64_t>(round))).rho[instance.optimal_arm()];
    });
    const auto confident = std::count_if(rho_star.begin(), rho_star.end(), [](double r) { return r > 0.99; });
    const double frac = static_cast<double>(confident) / static_cast<double>(runs);
    return {"policies: WTS belief concentrates (gap/sigma = 5)", frac >= 0.95,
            "rho* > 0.99 in " + fmt(100.0 * frac) + "% of runs", ">= 95%"};
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt) {
    const Stream root = Stream(opt.seed).split(purpose::verify);
    const double s = opt.scale;
    std::vector<CheckResult> out;

    out.push_back(check_incremental_batch(scaled(1000, s), 1000, 1e-9, root.split(1)));

    const std::size_t t = 8;
    const auto powers = power_trajectory(t, root.split(2));
    const Vec2 mean{1.5, -0.5};
    const double sigma2 = 2.0;
    const auto sample = sample_sufficient_stats(powers, mean, sigma2, scaled(10000, s), root.split(3), opt.exec,
                                                opt.workers);
    out.push_back(check_mean_law(sample, mean, sigma2));
    out.push_back(check_chi2_law(sample, sigma2, t, opt.variance_misspecification));
    out.push_back(check_independence(sample, 0.03));

    const std::vector<double> unit_powers(10, 1.0);
    out.push_back(check_exceedance(unit_powers, 1.0, 0.5, scaled(200000, s), 0.0, root.split(4), opt.exec, opt.workers));
    out.push_back(check_rotation_invariance(scaled(1000, s), root.split(5)));

    const std::vector<double> deltas{0.25, 0.5, 1.0, 2.0};
    const std::vector<PosteriorParams> tail_params{{1.0, {0.0, 0.0}, 1.0, 4}, {4.0, {1.0, 2.0}, 1.0, 5},
                                                   {10.0, {-3.0, 0.5}, 3.0, 20}};
    for (std::size_t i = 0; i < tail_params.size(); ++i) {
        out.push_back(check_tail_identity(tail_params[i], deltas, scaled(100000, s), root.split(6).split(i)));
    }
    for (const auto& p : {PosteriorParams{2.0, {1.0, 1.0}, 3.0, 6}, PosteriorParams{1.0, {0.0, 0.0}, 1.0, 10},
                          PosteriorParams{5.0, {-1.0, 2.0}, 0.5, 20}}) {
        out.push_back(check_density_normalization(p, 8.0 * std::sqrt(p.S / p.z)));
    }
    out.push_back(check_tail_monotonicity());
    out.push_back(check_rho_consistency(1000, scaled(20, s), root.split(7)));

    out.push_back(check_chi2_cdf_quadrature());
    out.push_back(check_variance_tail(10, 1.0, 1.0, scaled(10000, s), root.split(8), opt.exec, opt.workers));
    out.push_back(check_bound_ordering(scaled(1000, s), root.split(9)));

    out.push_back(check_wts_warmup(scaled(20, s), root.split(10)));
    out.push_back(check_non_spreading(300, root.split(11)));
    out.push_back(check_determinism(root.split(12)));
    out.push_back(check_power_divergence(10000, scaled(20, s), root.split(13).key(), opt.exec, opt.workers));
    out.push_back(check_belief_concentration(2000, scaled(50, s), root.split(14).key(), opt.exec, opt.workers));
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) noexcept {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

void print_report(std::ostream& out, const std::vector<CheckResult>& results) {
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "\n       observed: " << r.observed
            << "\n       expected: " << r.expected << '\n';
    }
    const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
    out << passed << "/" << results.size() << " properties passed\n";
}

}  // namespace wib
