// Command-line runner: simulate, gain and verify.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wib/config.hpp"
#include "wib/error.hpp"
#include "wib/runner.hpp"
#include "wib/verify.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> workers;
};

void apply(wib::RunConfig& cfg, const Overrides& o) {
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.out = *o.out;
    if (o.workers) cfg.workers = *o.workers;
    wib::validate(cfg);
}

int run_mode(const std::string& path, wib::Mode expected, const Overrides& overrides) {
    wib::RunConfig cfg = wib::load_config(path);
    if (cfg.mode != expected) {
        std::cerr << "config '" << path << "' has mode " << wib::to_string(cfg.mode) << ", expected "
                  << wib::to_string(expected) << '\n';
        return 2;
    }
    apply(cfg, overrides);
    const auto report = wib::run(cfg, std::cout);
    std::cout << "wrote " << report.csv_path << " and " << report.json_path << " (" << report.elapsed_s << " s)\n";
    return 0;
}

int verify_mode(const std::optional<std::string>& path, const Overrides& overrides) {
    wib::RunConfig cfg = path ? wib::load_config(*path) : wib::default_verify_config();
    apply(cfg, overrides);
    wib::VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.scale = cfg.verify_scale;
    opt.workers = cfg.workers;
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = wib::run_verify_suite(opt);
    wib::print_report(std::cout, results);
    std::cout << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
    return wib::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bandits under weighted information: simulation, gain estimation and verification"};
    app.require_subcommand(1);

    Overrides overrides;
    auto add_overrides = [&](CLI::App* sub) {
        sub->add_option("--seed", overrides.seed, "Override the base seed");
        sub->add_option("--out", overrides.out, "Override the output CSV path");
        sub->add_option("--workers", overrides.workers, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
    };

    std::string simulate_path;
    auto* simulate = app.add_subcommand("simulate", "Run regret simulations from a config");
    simulate->add_option("--config", simulate_path, "Config file")->required()->check(CLI::ExistingFile);
    add_overrides(simulate);

    std::string gain_path;
    auto* gain = app.add_subcommand("gain", "Run gain-estimation simulations from a config");
    gain->add_option("--config", gain_path, "Config file")->required()->check(CLI::ExistingFile);
    add_overrides(gain);

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Run the statistical property suite");
    verify->add_option("--config", verify_path, "Optional config file")->check(CLI::ExistingFile);
    add_overrides(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return run_mode(simulate_path, wib::Mode::Simulate, overrides);
        if (*gain) return run_mode(gain_path, wib::Mode::Gain, overrides);
        if (*verify) {
            return verify_mode(verify_path.empty() ? std::nullopt : std::optional<std::string>(verify_path), overrides);
        }
    } catch (const wib::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
