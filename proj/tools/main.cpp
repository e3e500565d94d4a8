#include <optional>
#include <string>

#include <CLI11.hpp>

#include "arena/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"intent-arena: multi-agent power-allocation games under a network intent"};
    app.require_subcommand(1);

    // run
    std::string run_config;
    std::string intent_text, out_dir;
    std::uint64_t seed = 0;
    int rounds = 0;
    bool stop_on_success = false, force = false;
    auto* run_cmd = app.add_subcommand("run", "execute one intent-driven game");
    run_cmd->add_option("--config", run_config, "run config JSON")->required();
    auto* intent_opt = run_cmd->add_option("--intent", intent_text, "intent text override");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "seed override");
    auto* rounds_opt = run_cmd->add_option("--rounds", rounds, "max rounds override");
    auto* stop_opt = run_cmd->add_flag("--stop-on-success", stop_on_success,
                                       "stop at the first satisfying round");
    auto* force_opt =
        run_cmd->add_flag("--force", force, "run even when the oracle says infeasible");
    auto* out_opt = run_cmd->add_option("--out", out_dir, "output directory override");

    // replay
    std::string trace_path, replay_config;
    auto* replay_cmd = app.add_subcommand("replay", "verify a recorded trace");
    replay_cmd->add_option("trace", trace_path, "trace.jsonl path")->required();
    auto* replay_cfg_opt =
        replay_cmd->add_option("--config", replay_config, "cross-check against this config");

    // oracle
    std::string oracle_config;
    auto* oracle_cmd = app.add_subcommand("oracle", "print target SINRs, spectral radius, P*");
    oracle_cmd->add_option("--config", oracle_config, "run config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        arena::cli::Overrides overrides;
        if (*intent_opt) overrides.intent = intent_text;
        if (*seed_opt) overrides.seed = seed;
        if (*rounds_opt) overrides.rounds = rounds;
        if (*stop_opt) overrides.stop_on_success = true;
        if (*force_opt) overrides.force = true;
        if (*out_opt) overrides.out_dir = out_dir;
        return arena::cli::run(run_config, overrides);
    }
    if (replay_cmd->parsed()) {
        std::optional<std::string> cfg;
        if (*replay_cfg_opt) cfg = replay_config;
        return arena::cli::replay(trace_path, cfg);
    }
    return arena::cli::oracle_report(oracle_config);
}
