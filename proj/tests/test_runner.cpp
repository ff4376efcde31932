#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "wib/error.hpp"
#include "wib/runner.hpp"

using namespace wib;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.mode = Mode::Simulate;
    cfg.instance = InstanceSpec{{{2, 0}, {0, 1.2}, {-0.5, 0.5}}, {1, 0.5, 1}};
    cfg.policies = {PolicyKind::Wts, PolicyKind::TsUnknown, PolicyKind::Oracle};
    cfg.horizon = 60;
    cfg.replications = 4;
    cfg.seed = 123;
    cfg.mc_samples = 128;
    cfg.thin = 7;
    return cfg;
}

std::string csv_of(const Experiment& ex, Execution exec) {
    std::ostringstream os;
    write_csv(os, ex, run_replications(ex, exec, 3));
    return os.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("wib_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Runner, CsvHeader) {
    const auto ex = Experiment::from_config(small_config());
    const auto csv = csv_of(ex, Execution::Serial);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "policy,replication,t,regret_step,regret_cum");

    RunConfig g;
    g.mode = Mode::Gain;
    g.gain = GainSpec{{0.5, 0, -0.5}, {0.5}, 6};
    g.horizon = 10;
    const auto gex = Experiment::from_config(g);
    const auto gcsv = csv_of(gex, Execution::Serial);
    EXPECT_EQ(gcsv.substr(0, gcsv.find('\n')), "policy,replication,t,regret_step,regret_cum,beta_hat,k_hat");
}

TEST(Runner, SerialEqualsParallel) {
    const auto ex = Experiment::from_config(small_config());
    EXPECT_EQ(csv_of(ex, Execution::Serial), csv_of(ex, Execution::Parallel));
}

TEST(Runner, ThinningKeepsCumulativeExact) {
    auto cfg = small_config();
    cfg.thin = 1;
    const auto full = run_replications(Experiment::from_config(cfg));
    cfg.thin = 7;
    const auto thin = run_replications(Experiment::from_config(cfg));
    ASSERT_EQ(full.size(), thin.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        ASSERT_EQ(full[i].rows.size(), 60u);
        // t = 7, 14, ..., 56 and the horizon
        ASSERT_EQ(thin[i].rows.size(), 9u);
        EXPECT_EQ(thin[i].rows.back().t, 60);
        for (const auto& row : thin[i].rows) {
            const auto& ref = full[i].rows[static_cast<std::size_t>(row.t - 1)];
            EXPECT_EQ(row.regret_cum, ref.regret_cum);
            EXPECT_EQ(row.regret_step, ref.regret_step);
        }
        EXPECT_EQ(thin[i].final_regret, full[i].final_regret);
    }
}

TEST(Runner, RowsSortedAndCumulativeNondecreasing) {
    const auto results = run_replications(Experiment::from_config(small_config()));
    for (std::size_t i = 1; i < results.size(); ++i) {
        const auto& a = results[i - 1];
        const auto& b = results[i];
        EXPECT_TRUE(a.policy_index < b.policy_index ||
                    (a.policy_index == b.policy_index && a.replication < b.replication));
    }
    for (const auto& r : results) {
        for (std::size_t j = 1; j < r.rows.size(); ++j) {
            EXPECT_LT(r.rows[j - 1].t, r.rows[j].t);
            EXPECT_LE(r.rows[j - 1].regret_cum, r.rows[j].regret_cum);
        }
    }
}

TEST(Runner, OracleHasZeroRegret) {
    auto cfg = small_config();
    cfg.policies = {PolicyKind::Oracle};
    for (const auto& r : run_replications(Experiment::from_config(cfg))) {
        for (const auto& row : r.rows) EXPECT_EQ(row.regret_cum, 0.0);
    }
}

TEST(Runner, ReplicationPrefixStable) {
    auto cfg = small_config();
    cfg.replications = 10;
    const auto ten = run_replications(Experiment::from_config(cfg));
    cfg.replications = 20;
    const auto twenty = run_replications(Experiment::from_config(cfg));
    for (std::size_t q = 0; q < cfg.policies.size(); ++q) {
        for (std::size_t r = 0; r < 10; ++r) {
            const auto& a = ten[q * 10 + r];
            const auto& b = twenty[q * 20 + r];
            ASSERT_EQ(a.policy_index, b.policy_index);
            ASSERT_EQ(a.replication, b.replication);
            ASSERT_EQ(a.rows.size(), b.rows.size());
            for (std::size_t j = 0; j < a.rows.size(); ++j) EXPECT_EQ(a.rows[j].regret_cum, b.rows[j].regret_cum);
        }
    }
}

TEST(Runner, SeedChangesTraces) {
    auto cfg = small_config();
    const auto a = csv_of(Experiment::from_config(cfg), Execution::Serial);
    cfg.seed = 124;
    const auto b = csv_of(Experiment::from_config(cfg), Execution::Serial);
    EXPECT_NE(a, b);
}

TEST(Runner, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, 0.0}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(Runner, SummaryStatistics) {
    auto cfg = small_config();
    const auto ex = Experiment::from_config(cfg);
    const auto results = run_replications(ex);
    const auto summary = summarize(ex, results);
    ASSERT_EQ(summary.size(), 3u);
    EXPECT_EQ(summary[2].policy, "oracle");
    EXPECT_EQ(summary[2].mean, 0.0);
    double m = 0;
    for (std::size_t r = 0; r < 4; ++r) m += results[r].final_regret / 4;
    EXPECT_NEAR(summary[0].mean, m, 1e-12);
}

TEST(Run, WritesByteIdenticalFilesAndSidecar) {
    const auto dir = temp_dir("run");
    auto cfg = small_config();
    cfg.out = (dir / "a.csv").string();
    std::ostringstream log;
    const auto rep = run(cfg, log);
    cfg.out = (dir / "b.csv").string();
    run(cfg, log);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(rep.json_path, (dir / "a.json").string());

    const auto j = nlohmann::json::parse(slurp(dir / "a.json"));
    for (const char* key : {"config", "bound_constants", "horizon_summary", "started_at", "elapsed_s"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    for (const char* key : {"spreading_known", "spreading_unknown", "ns_known", "ns_unknown"}) {
        EXPECT_TRUE(j["bound_constants"].contains(key)) << key;
    }
    EXPECT_TRUE(j["horizon_summary"].contains("wts"));
    EXPECT_TRUE(j["horizon_summary"]["wts"].contains("mean"));
    EXPECT_TRUE(j["horizon_summary"]["wts"].contains("std"));
    EXPECT_NE(log.str().find("wts"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Run, UnwritableOutputIsIoError) {
    auto cfg = small_config();
    cfg.out = "/proc/definitely/not/writable.csv";
    std::ostringstream log;
    try {
        run(cfg, log);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IoError);
    }
}
