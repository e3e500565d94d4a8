#include "arena/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arena/agents.hpp"

namespace arena::game {

namespace {
constexpr double kMicro = 1e6;
}

PowerSaving PowerSaving::absolute_w(double watts) {
    if (!(watts >= 0.0) || !std::isfinite(watts))
        throw std::invalid_argument("power saving must be >= 0 and finite");
    PowerSaving s;
    s.kind = Kind::absolute;
    s.microwatts = static_cast<std::int64_t>(std::llround(watts * kMicro));
    return s;
}

PowerSaving PowerSaving::relative_fraction(double fraction) {
    if (!(fraction >= 0.0) || fraction > 1.0)
        throw std::invalid_argument("relative saving fraction must be in [0, 1]");
    PowerSaving s;
    s.kind = Kind::relative;
    s.ppm = static_cast<std::int64_t>(std::llround(fraction * 1e6));
    return s;
}

double PowerSaving::resolve_w(double initial_total_w) const {
    if (kind == Kind::absolute) return static_cast<double>(microwatts) / kMicro;
    return static_cast<double>(ppm) * 1e-6 * initial_total_w;
}

void GoalSpec::validate(std::size_t k) const {
    if (saving.microwatts < 0 || saving.ppm < 0 || saving.ppm > 1000000)
        throw std::invalid_argument("power saving out of range");
    if (rate_floors.targets_bps.size() != k)
        throw std::invalid_argument("rate floor count does not match user count");
    for (double f : rate_floors.targets_bps)
        if (f < 0.0 || !std::isfinite(f))
            throw std::invalid_argument("rate floors must be >= 0 and finite");
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
}

GoalEvaluation evaluate_goal(const env::NetworkState& state, const ResolvedGoal& goal,
                             double initial_total_w) {
    if (goal.floors_bps.size() != state.size())
        throw std::invalid_argument("goal dimension does not match network");
    GoalEvaluation eval;
    eval.total_saving_w = initial_total_w - env::total_power(state);
    eval.violations.assign(state.size(), false);
    bool floors_ok = true;
    for (std::size_t i = 0; i < state.size(); ++i) {
        // Floors are compared with 1e-9 relative slack so that powers
        // sitting exactly on the inversion boundary do not flip on the
        // last ulp of the rate computation.
        const double floor_i = goal.floors_bps[i];
        if (env::rate(state, i) < floor_i - 1e-9 * std::max(1.0, floor_i)) {
            eval.violations[i] = true;
            floors_ok = false;
        }
    }
    eval.satisfied = floors_ok && eval.total_saving_w >= goal.delta_p_w;
    return eval;
}

double min_given_others(const env::NetworkState& state, const std::vector<double>& floors_bps,
                        std::size_t user) {
    if (user >= state.size()) throw std::out_of_range("user index out of range");
    const double floor = floors_bps.at(user);
    if (floor == 0.0) return 0.0;
    const double gamma = std::exp2(floor / state.bandwidth_hz) - 1.0;
    double interference = state.noise_linear;
    for (std::size_t j = 0; j < state.size(); ++j)
        if (j != user) interference += state.gains[j] * state.powers_w[j];
    return gamma * interference / state.gains[user];
}

GameOutcome run_game(const env::NetworkState& initial, const GoalSpec& goal,
                     const std::vector<agents::Agent*>& players, std::uint64_t seed,
                     const GameOptions& options) {
    (void)seed;  // agents own their PRNGs; recorded in the trace by the caller
    initial.validate();
    const std::size_t k = initial.size();
    goal.validate(k);
    if (players.size() != k)
        throw std::invalid_argument("need exactly one agent per user");

    env::NetworkState state = initial;

    GameOutcome outcome;
    outcome.initial_powers_w = state.powers_w;
    outcome.initial_total_w = env::total_power(state);
    outcome.resolved_goal.delta_p_w = goal.saving.resolve_w(outcome.initial_total_w);
    outcome.resolved_goal.floors_bps = goal.rate_floors.targets_bps;
    outcome.resolved_goal.max_rounds = goal.max_rounds;

    const auto gammas = oracle::target_sinr(goal.rate_floors, state.bandwidth_hz);
    outcome.oracle_solution = oracle::min_power_direct(state.gains, state.noise_linear, gammas);
    if (!outcome.oracle_solution.feasible && !options.force) {
        outcome.status = {GameStatus::Kind::infeasible, 0, 0, ""};
        return outcome;
    }

    std::vector<double> ceilings(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double base = state.powers_w[i] > 0.0 ? state.powers_w[i] : 1.0;
        ceilings[i] = options.ceiling_factor * base;
    }

    int first_satisfied = 0;
    for (int round = 1; round <= goal.max_rounds; ++round) {
        // Simultaneous moves: every observation is built from round-1
        // state before any agent is queried.
        std::vector<Observation> observations(k);
        for (std::size_t i = 0; i < k; ++i) {
            Observation& obs = observations[i];
            obs.round = round;
            obs.prev_powers_w = state.powers_w;
            obs.own_index = i;
            obs.own_rate_bps = env::rate(state, i);
            obs.own_floor_bps = outcome.resolved_goal.floors_bps[i];
            obs.goal = outcome.resolved_goal;
            obs.initial_total_w = outcome.initial_total_w;
        }

        RoundRecord rec;
        rec.round = round;
        rec.raw_choices_w.resize(k);
        rec.powers_w.resize(k);
        rec.clamped.assign(k, false);
        for (std::size_t i = 0; i < k; ++i) {
            agents::DecisionRequest request;
            request.observation = observations[i];
            auto decision = players[i]->decide(request);
            if (!decision.ok()) {
                outcome.status = {GameStatus::Kind::agent_failure, round, i,
                                  decision.error().message};
                return outcome;
            }
            const double raw = decision.value();
            rec.raw_choices_w[i] = raw;
            double chosen = raw;
            if (!(chosen >= 0.0)) chosen = 0.0;
            if (chosen > ceilings[i]) chosen = ceilings[i];
            rec.clamped[i] = chosen != raw;
            rec.powers_w[i] = chosen;
        }

        state.powers_w = rec.powers_w;
        rec.rates_bps.resize(k);
        rec.margins_bps.resize(k);
        rec.min_given_others_w.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            rec.rates_bps[i] = env::rate(state, i);
            rec.margins_bps[i] = rec.rates_bps[i] - outcome.resolved_goal.floors_bps[i];
            rec.min_given_others_w[i] =
                min_given_others(state, outcome.resolved_goal.floors_bps, i);
        }
        rec.total_power_w = env::total_power(state);
        const auto eval = evaluate_goal(state, outcome.resolved_goal, outcome.initial_total_w);
        rec.saving_w = eval.total_saving_w;
        rec.goal_satisfied = eval.satisfied;
        rec.violations = eval.violations;
        outcome.records.push_back(std::move(rec));
        if (options.on_round) options.on_round(outcome.records.back());

        if (eval.satisfied && first_satisfied == 0) first_satisfied = round;
        if (eval.satisfied && options.stop_on_success) break;
    }

    if (first_satisfied > 0)
        outcome.status = {GameStatus::Kind::goal_achieved, first_satisfied, 0, ""};
    else
        outcome.status = {GameStatus::Kind::max_rounds_exhausted, 0, 0, ""};
    return outcome;
}

}  // namespace arena::game
