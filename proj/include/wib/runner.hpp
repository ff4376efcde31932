#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wib/bounds.hpp"
#include "wib/config.hpp"
#include "wib/core.hpp"
#include "wib/parallel.hpp"
#include "wib/policies.hpp"
#include "wib/rng.hpp"
#include "wib/sysid.hpp"

namespace wib {

struct TraceRow {
    std::size_t policy_index = 0;
    std::int64_t replication = 0;
    std::int64_t t = 0;
    double regret_step = 0.0;
    double regret_cum = 0.0;
    std::optional<double> beta_hat;
    std::optional<std::size_t> k_hat;
};

// A RunConfig with its problem resolved into a bandit instance.
struct Experiment {
    BanditInstance instance;
    std::optional<GainProblem> gain;
    std::vector<PolicyKind> policies;
    std::int64_t horizon = 0;
    std::int64_t replications = 1;
    std::int64_t thin = 1;
    std::size_t mc_samples = kDefaultMcSamples;
    std::uint64_t seed = 0;

    static Experiment from_config(const RunConfig& config);
    PolicyConfig policy_config(std::size_t policy_index) const;
};

struct ReplicationResult {
    std::size_t policy_index = 0;
    std::int64_t replication = 0;
    std::vector<TraceRow> rows;      // rounds t with t % thin == 0, plus t == T
    double final_regret = 0.0;       // cumulative over all T rounds
    std::vector<double> power_at_tenth;  // z_k after round floor(T / 10)
    std::vector<ArmStats> final_stats;
};

// Stream of replication r under policy q: Stream(seed).split(q).split(r).
Stream replication_stream(std::uint64_t seed, std::size_t policy_index, std::int64_t replication) noexcept;

// One independent run. Errors are rethrown with (policy, replication, round) context.
ReplicationResult run_replication(const Experiment& experiment, std::size_t policy_index, std::int64_t replication);

// All policy x replication runs, ordered by (policy, replication). The
// parallel path is bit-identical to the serial reference.
std::vector<ReplicationResult> run_replications(const Experiment& experiment, Execution exec = Execution::Parallel,
                                                int workers = 0);

struct PolicySummary {
    std::string policy;
    double mean = 0.0;  // cumulative regret at T
    double std = 0.0;   // sample standard deviation across replications
};

std::vector<PolicySummary> summarize(const Experiment& experiment, const std::vector<ReplicationResult>& results);

// Header: policy,replication,t,regret_step,regret_cum[,beta_hat,k_hat]
void write_csv(std::ostream& out, const Experiment& experiment, const std::vector<ReplicationResult>& results);

// 17 significant digits, round-trip exact.
std::string format_double(double v);

struct RunReport {
    std::vector<PolicySummary> summary;
    BoundConstants constants;
    std::string csv_path;
    std::string json_path;
    double elapsed_s = 0.0;
};

// Executes a simulate/gain config and writes the CSV plus its JSON sidecar
// (same path, .json extension). Throws IoError.
RunReport run(const RunConfig& config, std::ostream& log);

}  // namespace wib
