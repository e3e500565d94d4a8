#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arena/agents.hpp"
#include "arena/common.hpp"
#include "arena/game.hpp"

namespace arena::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes of the run command.
inline constexpr int kExitGoalAchieved = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitMaxRounds = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitAgentFailure = 4;

struct AgentSpec {
    std::string kind;  // hold | best_response | random | llm
    double margin = 1.0;
    // LLM only:
    std::string model = "gpt-4";
    std::string endpoint;         // HTTP(S) base URL
    std::string fixture;          // replay transcript instead of live transport
    std::string record_fixture;   // capture live replies to this file
    double temperature = 0.0;
    int max_tokens = 256;
    bool stateless = false;
    double backoff_base_s = 1.0;
};

/// One run, fully specified: the config JSON document plus CLI
/// overrides already applied.
struct RunConfig {
    std::vector<double> gains;
    double noise_linear = 0.0;  // resolved; the file may say noise_db instead
    double bandwidth_hz = 0.0;
    std::vector<double> initial_powers_w;

    std::optional<std::string> intent_text;       // exactly one of these two
    std::optional<game::GoalSpec> explicit_goal;  // floors given directly

    int max_rounds = 10;
    bool stop_on_success = false;
    bool force = false;
    std::optional<std::uint64_t> seed;
    std::vector<AgentSpec> agents;
    std::string out_dir = "out";

    /// Materialized goal (intent parsed if present). Throws
    /// std::invalid_argument with a field diagnostic on bad content.
    game::GoalSpec goal() const;
    env::NetworkState network() const;
};

struct Overrides {
    std::optional<std::string> intent;
    std::optional<std::uint64_t> seed;
    std::optional<int> rounds;
    std::optional<bool> stop_on_success;
    std::optional<bool> force;
    std::optional<std::string> out_dir;
};

Result<RunConfig> load_config(const std::string& path);

/// Executes the close loop: resolve intent, check feasibility, run the
/// game, write trace.jsonl / report.txt / powers.csv / rate_margins.csv
/// under out_dir. Returns the process exit code.
int run(const std::string& config_path, const Overrides& overrides);

/// Recomputes every derived field of a trace from its stored powers and
/// reports the first mismatch. With config_path set, first cross-checks
/// the trace header against that config and refuses to recompute on any
/// difference. Returns 0 on a fully consistent trace.
int replay(const std::string& trace_path, const std::optional<std::string>& config_path = {});

/// Prints target SINRs, spectral radius and P* for the configured
/// network and goal.
int oracle_report(const std::string& config_path);

}  // namespace arena::cli
