#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arena/env.hpp"
#include "arena/oracle.hpp"

namespace arena::agents {
class Agent;
}

namespace arena::game {

/// Network-level power-saving target. Amounts are stored as exact scaled
/// integers (microwatts, parts-per-million) so goal thresholds never
/// drift through float formatting.
struct PowerSaving {
    enum class Kind { absolute, relative };
    Kind kind = Kind::absolute;
    std::int64_t microwatts = 0;  // kind == absolute
    std::int64_t ppm = 0;         // kind == relative, fraction * 1e6

    static PowerSaving absolute_w(double watts);
    static PowerSaving relative_fraction(double fraction);

    /// Delta-p in W against the given initial total.
    double resolve_w(double initial_total_w) const;

    bool operator==(const PowerSaving&) const = default;
};

struct GoalSpec {
    PowerSaving saving;
    oracle::RateTargets rate_floors;
    int max_rounds = 1;

    void validate(std::size_t k) const;  // throws std::invalid_argument
};

/// The fixed numbers a goal resolves to once the initial state is known.
/// Relative savings freeze against the round-0 total.
struct ResolvedGoal {
    double delta_p_w = 0.0;
    std::vector<double> floors_bps;
    int max_rounds = 1;
};

/// What one agent is shown before choosing a round-t power: the full
/// round t-1 power vector and its own situation, never any round-t
/// choice of a peer.
struct Observation {
    int round = 1;
    std::vector<double> prev_powers_w;
    std::size_t own_index = 0;
    double own_rate_bps = 0.0;
    double own_floor_bps = 0.0;
    ResolvedGoal goal;
    double initial_total_w = 0.0;
};

struct RoundRecord {
    int round = 0;
    std::vector<double> powers_w;       // after clamp + quantization
    std::vector<double> raw_choices_w;  // as returned by the agents
    std::vector<bool> clamped;
    std::vector<double> rates_bps;
    std::vector<double> margins_bps;  // rate - floor
    std::vector<double> min_given_others_w;
    double total_power_w = 0.0;
    double saving_w = 0.0;
    bool goal_satisfied = false;
    std::vector<bool> violations;
};

struct GameStatus {
    enum class Kind { goal_achieved, max_rounds_exhausted, infeasible, agent_failure };
    Kind kind = Kind::max_rounds_exhausted;
    int round = 0;         // goal_achieved: first satisfying round; agent_failure: failing round
    std::size_t user = 0;  // agent_failure only
    std::string cause;     // agent_failure only
};

struct GameOutcome {
    std::vector<RoundRecord> records;
    GameStatus status;
    ResolvedGoal resolved_goal;
    oracle::OracleSolution oracle_solution;  // joint minimum, for reporting
    double initial_total_w = 0.0;
    std::vector<double> initial_powers_w;
};

struct GoalEvaluation {
    bool satisfied = false;
    std::vector<bool> violations;
    double total_saving_w = 0.0;
};

struct GameOptions {
    bool stop_on_success = false;  // default: fixed horizon of max_rounds
    bool force = false;            // run even when the oracle says infeasible
    double ceiling_factor = 10.0;  // per-user cap = factor x initial own power
    /// Called after each completed round; lets the caller stream the
    /// trace so an aborted run still leaves a valid prefix on disk.
    std::function<void(const RoundRecord&)> on_round;
};

/// satisfied <=> (initial_total - total >= delta_p) and every rate meets
/// its floor. Violations flag exactly the users below their floor.
GoalEvaluation evaluate_goal(const env::NetworkState& state, const ResolvedGoal& goal,
                             double initial_total_w);

/// Smallest own power meeting the floor with all other users held at
/// their current powers: gamma_u * (noise + interference) / g_u.
double min_given_others(const env::NetworkState& state, const std::vector<double>& floors_bps,
                        std::size_t user);

/// Repeated simultaneous-move loop. Deterministic for fixed seed and
/// scripted agents. Agent failures preserve the rounds played so far.
GameOutcome run_game(const env::NetworkState& initial, const GoalSpec& goal,
                     const std::vector<agents::Agent*>& players, std::uint64_t seed,
                     const GameOptions& options = {});

}  // namespace arena::game
