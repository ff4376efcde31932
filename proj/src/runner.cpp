#include "wib/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wib/error.hpp"

namespace wib {

namespace {

using json = nlohmann::json;

std::vector<double> cumulative_power(const PolicyState& state) {
    std::vector<double> z;
    z.reserve(state.arms());
    for (const auto& s : state.per_arm()) z.push_back(s.z);
    return z;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["mode"] = std::string(to_string(cfg.mode));
    j["T"] = cfg.horizon;
    j["replications"] = cfg.replications;
    j["seed"] = cfg.seed;
    j["mc_samples"] = cfg.mc_samples;
    j["thin"] = cfg.thin;
    j["out"] = cfg.out;
    json policies = json::array();
    for (auto p : cfg.policies) policies.push_back(std::string(to_string(p)));
    j["policies"] = policies;
    if (cfg.instance) {
        json means = json::array();
        for (auto m : cfg.instance->means) means.push_back({m.x, m.y});
        j["instance"] = {{"means", means}, {"variances", cfg.instance->variances}};
    }
    if (cfg.gain) {
        j["gain"] = {{"g_coeffs", cfg.gain->g_coeffs}, {"h_coeffs", cfg.gain->h_coeffs}, {"K", cfg.gain->K}};
    }
    return j;
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace

Experiment Experiment::from_config(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.mode == Mode::Verify) throw Error(Errc::ValidationError, "mode: verify configs do not describe a run");
    std::optional<GainProblem> gain;
    std::optional<BanditInstance> instance;
    if (cfg.mode == Mode::Gain) {
        gain = grid_from_fir(cfg.gain->g_coeffs, cfg.gain->h_coeffs, cfg.gain->K);
        instance = gain->instance();
    } else {
        instance = BanditInstance::create(cfg.instance->means, cfg.instance->variances);
    }
    return Experiment{*instance,    std::move(gain), cfg.policies, cfg.horizon,
                      cfg.replications, cfg.thin,    cfg.mc_samples, cfg.seed};
}

PolicyConfig Experiment::policy_config(std::size_t policy_index) const {
    PolicyConfig pc;
    pc.kind = policies.at(policy_index);
    pc.mc_samples = mc_samples;
    pc.optimal_arm = instance.optimal_arm();
    if (pc.kind == PolicyKind::TsKnown) {
        pc.known_variances.assign(instance.variances().begin(), instance.variances().end());
    }
    return pc;
}

Stream replication_stream(std::uint64_t seed, std::size_t policy_index, std::int64_t replication) noexcept {
    return Stream(seed).split(policy_index).split(static_cast<std::uint64_t>(replication));
}

ReplicationResult run_replication(const Experiment& ex, std::size_t policy_index, std::int64_t replication) {
    ReplicationResult result;
    result.policy_index = policy_index;
    result.replication = replication;

    PolicyState state(ex.policy_config(policy_index), ex.instance.arms());
    const Stream base = replication_stream(ex.seed, policy_index, replication);
    const std::int64_t tenth = ex.horizon / 10;
    double cumulative = 0.0;

    for (std::int64_t t = 1; t <= ex.horizon; ++t) {
        try {
            const Stream round = base.split(static_cast<std::uint64_t>(t));
            Stream policy_rng = round.split(purpose::policy);
            Stream outcome_rng = round.split(purpose::outcome);

            const PowerProfile profile = state.next_profile(policy_rng);
            const Outcome outcome = ex.gain ? run_experiment(*ex.gain, profile, outcome_rng)
                                            : sample_outcome(ex.instance, profile, outcome_rng);
            state.observe(profile, outcome);

            const double regret = regret_step(ex.instance, profile);
            cumulative += regret;
            if (t == tenth) result.power_at_tenth = cumulative_power(state);
            if (t % ex.thin == 0 || t == ex.horizon) {
                TraceRow row{policy_index, replication, t, regret, cumulative, std::nullopt, std::nullopt};
                if (ex.gain) {
                    const GainEstimate est = gain_estimate(state.per_arm(), t);
                    row.beta_hat = est.beta_hat;
                    row.k_hat = est.k_hat;
                }
                result.rows.push_back(row);
            }
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()) + " [policy " + std::string(to_string(ex.policies[policy_index])) +
                                      ", replication " + std::to_string(replication) + ", round " +
                                      std::to_string(t) + "]");
        }
    }
    result.final_regret = cumulative;
    result.final_stats = state.per_arm();
    if (result.power_at_tenth.empty()) result.power_at_tenth.assign(ex.instance.arms(), 0.0);
    return result;
}

std::vector<ReplicationResult> run_replications(const Experiment& ex, Execution exec, int workers) {
    const std::size_t runs = ex.policies.size() * static_cast<std::size_t>(ex.replications);
    std::vector<ReplicationResult> results(runs);
    for_each_index(runs, exec, workers, [&](std::size_t i) {
        const std::size_t q = i / static_cast<std::size_t>(ex.replications);
        const auto r = static_cast<std::int64_t>(i % static_cast<std::size_t>(ex.replications));
        results[i] = run_replication(ex, q, r);
    });
    return results;
}

std::vector<PolicySummary> summarize(const Experiment& ex, const std::vector<ReplicationResult>& results) {
    std::vector<PolicySummary> out;
    for (std::size_t q = 0; q < ex.policies.size(); ++q) {
        double sum = 0.0;
        std::int64_t n = 0;
        for (const auto& r : results) {
            if (r.policy_index != q) continue;
            sum += r.final_regret;
            ++n;
        }
        const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
        double ss = 0.0;
        for (const auto& r : results) {
            if (r.policy_index == q) ss += (r.final_regret - mean) * (r.final_regret - mean);
        }
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        out.push_back({std::string(to_string(ex.policies[q])), mean, sd});
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const Experiment& ex, const std::vector<ReplicationResult>& results) {
    const bool gain = ex.gain.has_value();
    out << "policy,replication,t,regret_step,regret_cum";
    if (gain) out << ",beta_hat,k_hat";
    out << '\n';
    // results are already ordered by (policy, replication); rows by t.
    for (const auto& r : results) {
        const std::string name(to_string(ex.policies[r.policy_index]));
        for (const auto& row : r.rows) {
            out << name << ',' << row.replication << ',' << row.t << ',' << format_double(row.regret_step) << ','
                << format_double(row.regret_cum);
            if (gain) out << ',' << format_double(*row.beta_hat) << ',' << *row.k_hat;
            out << '\n';
        }
    }
}

RunReport run(const RunConfig& cfg, std::ostream& log) {
    const auto started = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();
    const Experiment ex = Experiment::from_config(cfg);

    auto results = run_replications(ex, Execution::Parallel, cfg.workers);

    RunReport report;
    report.summary = summarize(ex, results);
    report.constants = lower_bound_constants(ex.instance);
    report.csv_path = cfg.out;
    report.json_path = std::filesystem::path(cfg.out).replace_extension(".json").string();

    const auto parent = std::filesystem::path(cfg.out).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
    }
    {
        std::ofstream csv(report.csv_path, std::ios::binary);
        if (!csv) throw Error(Errc::IoError, "cannot write '" + report.csv_path + "'");
        write_csv(csv, ex, results);
        if (!csv) throw Error(Errc::IoError, "write failed for '" + report.csv_path + "'");
    }
    report.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json side;
    side["config"] = config_to_json(cfg);
    side["bound_constants"] = {{"spreading_known", report.constants.spreading_known},
                               {"spreading_unknown", report.constants.spreading_unknown},
                               {"ns_known", report.constants.ns_known},
                               {"ns_unknown", report.constants.ns_unknown}};
    json summary = json::object();
    for (const auto& s : report.summary) summary[s.policy] = {{"mean", s.mean}, {"std", s.std}};
    side["horizon_summary"] = summary;
    side["started_at"] = utc_timestamp(started);
    side["elapsed_s"] = report.elapsed_s;
    {
        std::ofstream js(report.json_path);
        if (!js) throw Error(Errc::IoError, "cannot write '" + report.json_path + "'");
        js << side.dump(2) << '\n';
    }

    log << "horizon T = " << ex.horizon << ", replications = " << ex.replications << '\n';
    log << std::left << std::setw(12) << "policy" << std::setw(26) << "mean_regret" << "std\n";
    for (const auto& s : report.summary) {
        log << std::setw(12) << s.policy << std::setw(26) << format_double(s.mean) << format_double(s.std) << '\n';
    }
    const double logT = std::log(static_cast<double>(ex.horizon));
    log << "reference (x log T): spreading " << format_double(report.constants.spreading_unknown * logT)
        << ", non-spreading unknown variance " << format_double(report.constants.ns_unknown * logT) << '\n';
    return report;
}

}  // namespace wib
