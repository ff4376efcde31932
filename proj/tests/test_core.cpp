#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wib/bounds.hpp"
#include "wib/core.hpp"
#include "wib/error.hpp"

using namespace wib;

namespace {

template <class F>
Errc code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no wib::Error thrown";
    return Errc::IoError;
}

Vec2 rotate(Vec2 v, double a) { return {std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y}; }

}  // namespace

TEST(BanditInstance, OptimalArmAndGaps) {
    const auto inst = new_instance({{2, 0}, {1, 0}}, {1, 1});
    EXPECT_EQ(inst.optimal_arm(), 0u);
    EXPECT_DOUBLE_EQ(inst.gaps()[0], 0.0);
    EXPECT_DOUBLE_EQ(inst.gaps()[1], 1.0);
    EXPECT_DOUBLE_EQ(inst.optimal_norm(), 2.0);
}

TEST(BanditInstance, LargestNormIsOptimal) {
    const auto inst = new_instance({{0.1, 0}, {0, -4}, {3, 0}}, {1, 1, 1});
    EXPECT_EQ(inst.optimal_arm(), 1u);
    EXPECT_DOUBLE_EQ(inst.max_gap(), 3.9);
}

TEST(BanditInstance, Errors) {
    EXPECT_EQ(code_of([] { new_instance({{0, 3}, {3, 0}, {1, 1}}, {1, 4, 9}); }), Errc::TiedOptimum);
    EXPECT_EQ(code_of([] { new_instance({{1, 0}}, {1}); }), Errc::TooFewArms);
    EXPECT_EQ(code_of([] { new_instance({{1, 0}, {2, 0}}, {1}); }), Errc::DimensionMismatch);
    EXPECT_EQ(code_of([] { new_instance({{1, 0}, {2, 0}}, {1, 0}); }), Errc::NonPositiveVariance);
    EXPECT_EQ(code_of([] { new_instance({{1, 0}, {2, 0}}, {1, -2}); }), Errc::NonPositiveVariance);
    // norms differ by less than the tie tolerance
    EXPECT_EQ(code_of([] { new_instance({{1, 0}, {1 + 1e-14, 0}}, {1, 1}); }), Errc::TiedOptimum);
}

TEST(BanditInstance, RotationInvariance) {
    const std::vector<Vec2> means{{1.8, 2.4}, {2, 0}, {0, -1.5}, {-0.6, 0.8}};
    const std::vector<double> vars{1, 0.5, 2, 1};
    const auto base = new_instance(means, vars);
    const auto bc = lower_bound_constants(base);
    for (double a : {0.3, 1.0, 2.5, -4.0}) {
        std::vector<Vec2> rotated;
        for (auto m : means) rotated.push_back(rotate(m, a));
        const auto inst = new_instance(rotated, vars);
        EXPECT_EQ(inst.optimal_arm(), base.optimal_arm());
        for (std::size_t k = 0; k < means.size(); ++k) EXPECT_NEAR(inst.gaps()[k], base.gaps()[k], 1e-12);
        const auto rc = lower_bound_constants(inst);
        EXPECT_NEAR(rc.spreading_unknown, bc.spreading_unknown, 1e-12);
        EXPECT_NEAR(rc.ns_unknown, bc.ns_unknown, 1e-12);
    }
}

TEST(PowerProfile, Validation) {
    EXPECT_NO_THROW(PowerProfile::create({0.25, 0.75}));
    EXPECT_NO_THROW(PowerProfile::create({1.0, 0.0, 0.0}));
    EXPECT_EQ(code_of([] { PowerProfile::create({0.5, 0.6}); }), Errc::InvalidProfile);
    EXPECT_EQ(code_of([] { PowerProfile::create({1.5, -0.5}); }), Errc::InvalidProfile);
    EXPECT_EQ(code_of([] { PowerProfile::create({}); }), Errc::InvalidProfile);
    const auto u = PowerProfile::uniform(4);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(u[k], 0.25);
    EXPECT_TRUE(PowerProfile::one_hot(3, 2).is_one_hot());
    EXPECT_FALSE(u.is_one_hot());
}

TEST(SampleOutcome, ZeroPowerIsAbsent) {
    const auto inst = new_instance({{2, 0}, {1, 0}, {0, 0.5}}, {1, 1, 1});
    Stream rng(1);
    const auto out = sample_outcome(inst, PowerProfile::create({0.5, 0.5, 0.0}), rng);
    ASSERT_EQ(out.values.size(), 3u);
    EXPECT_TRUE(out.values[0].has_value());
    EXPECT_TRUE(out.values[1].has_value());
    EXPECT_FALSE(out.values[2].has_value());
}

TEST(SampleOutcome, ProfileLengthMismatch) {
    const auto inst = new_instance({{2, 0}, {1, 0}}, {1, 1});
    Stream rng(1);
    EXPECT_EQ(code_of([&] { sample_outcome(inst, PowerProfile::uniform(3), rng); }), Errc::InvalidProfile);
}

TEST(SampleOutcome, CoordinateVarianceIsSigma2Over2p) {
    // p = 1, sigma^2 = 2: each coordinate has variance 1.
    const auto inst = new_instance({{3, -1}, {0, 0.5}}, {2, 1});
    const auto profile = PowerProfile::one_hot(2, 0);
    Stream root(17);
    const int n = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        Stream rng = root.split(static_cast<std::uint64_t>(i));
        const Vec2 x = *sample_outcome(inst, profile, rng).values[0];
        sx += x.x;
        sy += x.y;
        sxx += x.x * x.x;
        syy += x.y * x.y;
    }
    const double mx = sx / n, my = sy / n;
    EXPECT_NEAR(mx, 3.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(my, -1.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(sxx / n - mx * mx, 1.0, 0.02);
    EXPECT_NEAR(syy / n - my * my, 1.0, 0.02);
}

TEST(UpdateStats, SpecExamples) {
    ArmStats s;
    s = update_stats(s, 1.0, Vec2{0, 0});
    s = update_stats(s, 1.0, Vec2{2, 0});
    EXPECT_DOUBLE_EQ(s.z, 2.0);
    EXPECT_EQ(s.xbar, (Vec2{1, 0}));
    EXPECT_DOUBLE_EQ(s.S, 2.0);
    EXPECT_EQ(s.observations, 2);

    const auto one = update_stats(ArmStats{}, 0.3, Vec2{5, -5});
    EXPECT_DOUBLE_EQ(one.z, 0.3);
    EXPECT_EQ(one.xbar, (Vec2{5, -5}));
    EXPECT_DOUBLE_EQ(one.S, 0.0);

    auto w = update_stats(ArmStats{}, 0.25, Vec2{4, 0});
    w = update_stats(w, 0.75, Vec2{0, 0});
    EXPECT_DOUBLE_EQ(w.z, 1.0);
    EXPECT_NEAR(w.xbar.x, 1.0, 1e-15);
    EXPECT_NEAR(w.S, 3.0, 1e-14);
}

TEST(UpdateStats, ZeroPowerLeavesStatsUnchanged) {
    auto s = update_stats(ArmStats{}, 0.5, Vec2{1, 2});
    const auto t = update_stats(s, 0.0, std::nullopt);
    EXPECT_EQ(t.z, s.z);
    EXPECT_EQ(t.xbar, s.xbar);
    EXPECT_EQ(t.S, s.S);
    EXPECT_EQ(t.observations, s.observations);
    EXPECT_EQ(t.rounds, s.rounds + 1);
}

TEST(UpdateStats, Errors) {
    EXPECT_EQ(code_of([] { update_stats(ArmStats{}, -0.1, Vec2{}); }), Errc::NegativePower);
    EXPECT_EQ(code_of([] { update_stats(ArmStats{}, 0.5, std::nullopt); }), Errc::MissingObservation);
}

TEST(BatchStats, SpecExamples) {
    const std::vector<double> p1{1, 1, 1};
    const std::vector<Vec2> x1{{1, 0}, {1, 0}, {1, 0}};
    auto s = batch_stats(p1, x1);
    EXPECT_EQ(s.xbar, (Vec2{1, 0}));
    EXPECT_DOUBLE_EQ(s.S, 0.0);

    const std::vector<double> p2{0.25, 0.75};
    const std::vector<Vec2> x2{{4, 0}, {0, 0}};
    s = batch_stats(p2, x2);
    EXPECT_NEAR(s.xbar.x, 1.0, 1e-15);
    EXPECT_NEAR(s.S, 3.0, 1e-14);

    const std::vector<double> p3{2, 0};
    const std::vector<Vec2> x3{{1, 1}, {9, 9}};
    s = batch_stats(p3, x3);
    EXPECT_EQ(s.xbar, (Vec2{1, 1}));
    EXPECT_DOUBLE_EQ(s.S, 0.0);
}

TEST(BatchStats, Errors) {
    const std::vector<double> zeros{0, 0};
    const std::vector<Vec2> xs{{1, 0}, {2, 0}};
    EXPECT_EQ(code_of([&] { batch_stats(zeros, xs); }), Errc::AllZeroPower);
    const std::vector<double> short_p{1};
    EXPECT_EQ(code_of([&] { batch_stats(short_p, xs); }), Errc::DimensionMismatch);
}

// Property: folding update_stats equals the batch formulas.
TEST(Property, IncrementalMatchesBatch) {
    const Stream root(99);
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        Stream rng = root.split(trial);
        const auto n = 1 + static_cast<std::size_t>(rng.uniform() * 1000);
        std::vector<double> ps;
        std::vector<Vec2> xs;
        ArmStats inc;
        for (std::size_t i = 0; i < n; ++i) {
            double p = rng.uniform();
            if (p < 0.2) p = 0.0;
            const Vec2 x{10 * rng.uniform() - 5, 10 * rng.uniform() - 5};
            ps.push_back(p);
            xs.push_back(x);
            inc = update_stats(inc, p, p > 0 ? std::optional<Vec2>(x) : std::nullopt);
        }
        if (inc.z == 0.0) continue;
        const auto bat = batch_stats(ps, xs);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
        ASSERT_LT(rel(inc.z, bat.z), 1e-9);
        ASSERT_LT(rel(inc.xbar.x, bat.xbar.x), 1e-9);
        ASSERT_LT(rel(inc.xbar.y, bat.xbar.y), 1e-9);
        ASSERT_LT(rel(inc.S, bat.S), 1e-9);
    }
}
