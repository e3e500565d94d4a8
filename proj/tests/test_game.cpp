#include <doctest.h>

#include <cmath>

#include "arena/agents.hpp"
#include "arena/game.hpp"
#include "support.hpp"

using namespace arena;
using namespace arena::testing;

namespace {

game::GoalSpec case_goal(int max_rounds = 10) {
    game::GoalSpec goal;
    goal.saving = game::PowerSaving::absolute_w(0.85);
    goal.rate_floors.targets_bps = kFloorsBps;
    goal.max_rounds = max_rounds;
    return goal;
}

game::ResolvedGoal resolved_case_goal() {
    return {0.85, kFloorsBps, 10};
}

agents::EnvInfo case_env_info() { return {kGains, kNoise, kBandwidthHz}; }

/// Returns a scripted value once, then errors.
class FailingAgent : public agents::Agent {
public:
    explicit FailingAgent(int fail_at_round) : fail_at_(fail_at_round) {}
    Result<double> decide(const agents::DecisionRequest& request) override {
        if (request.observation.round >= fail_at_) return Error{"scripted failure"};
        return request.observation.prev_powers_w[request.observation.own_index];
    }
    std::string kind() const override { return "failing"; }

private:
    int fail_at_;
};

class FixedAgent : public agents::Agent {
public:
    explicit FixedAgent(double value) : value_(value) {}
    Result<double> decide(const agents::DecisionRequest&) override { return value_; }
    std::string kind() const override { return "fixed"; }

private:
    double value_;
};

/// Captures every observation it is shown.
class ProbeAgent : public agents::Agent {
public:
    Result<double> decide(const agents::DecisionRequest& request) override {
        seen.push_back(request.observation);
        return request.observation.prev_powers_w[request.observation.own_index] * 0.9;
    }
    std::string kind() const override { return "probe"; }
    std::vector<game::Observation> seen;
};

}  // namespace

TEST_CASE("PowerSaving resolution") {
    const auto abs = game::PowerSaving::absolute_w(0.85);
    CHECK(abs.microwatts == 850000);
    CHECK(abs.resolve_w(17.0) == 0.85);

    const auto rel = game::PowerSaving::relative_fraction(0.05);
    CHECK(rel.ppm == 50000);
    CHECK(rel.resolve_w(17.0) == doctest::Approx(0.85).epsilon(1e-14));

    CHECK_THROWS_AS(game::PowerSaving::absolute_w(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(game::PowerSaving::relative_fraction(1.5), std::invalid_argument);
}

TEST_CASE("evaluate_goal anchors") {
    // initial powers: zero saving, floors all met, goal not satisfied
    const auto at_start = game::evaluate_goal(case_state(), resolved_case_goal(), 17.0);
    CHECK_FALSE(at_start.satisfied);
    CHECK(at_start.total_saving_w == 0.0);
    for (bool v : at_start.violations) CHECK_FALSE(v);

    // vacuous goal
    const auto vacuous =
        game::evaluate_goal(case_state(), {0.0, {0, 0, 0, 0}, 10}, 17.0);
    CHECK(vacuous.satisfied);

    // at the joint oracle vector, nudged up by the slack property, the
    // intent holds: total stays below 17 - 0.85
    const auto sol = oracle::min_power_direct(kGains, kNoise, kFrozenGammas);
    REQUIRE(sol.feasible);
    CHECK(kFrozenPstarTotal <= 17.0 - 0.85);
    env::NetworkState at_star = case_state();
    at_star.powers_w = sol.min_powers_w;
    for (auto& p : at_star.powers_w) p *= 1.0 + 1e-9;
    const auto eval = game::evaluate_goal(at_star, resolved_case_goal(), 17.0);
    CHECK(eval.satisfied);
    for (bool v : eval.violations) CHECK_FALSE(v);
}

TEST_CASE("min_given_others anchors") {
    env::NetworkState single{{2.0}, 4.0, 15000.0, {100.0}};
    CHECK(game::min_given_others(single, {15000.0}, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(game::min_given_others(single, {0.0}, 0) == 0.0);

    const auto state = case_state();
    for (std::size_t i = 0; i < 4; ++i) {
        const double closed = game::min_given_others(state, kFloorsBps, i);
        CHECK(closed == doctest::Approx(kFrozenMinGivenOthers[i]).epsilon(1e-12));
        // independent route: bisection on the rate curve
        CHECK(closed == doctest::Approx(bisect_min_power(state, i, kFloorsBps[i], 100.0))
                            .epsilon(1e-6));
    }
}

TEST_CASE("hold agents never move, goal never satisfied") {
    agents::HoldAgent h0, h1, h2, h3;
    std::vector<agents::Agent*> players{&h0, &h1, &h2, &h3};
    const auto outcome = game::run_game(case_state(), case_goal(5), players, 0);
    CHECK(outcome.status.kind == game::GameStatus::Kind::max_rounds_exhausted);
    REQUIRE(outcome.records.size() == 5);
    for (const auto& rec : outcome.records) {
        CHECK(rec.powers_w == kInitialPowers);
        CHECK_FALSE(rec.goal_satisfied);
    }
}

TEST_CASE("best-response agents reach the goal and the oracle point") {
    std::vector<agents::BestResponseAgent> brs;
    for (int i = 0; i < 4; ++i) brs.emplace_back(case_env_info(), 1.0);
    std::vector<agents::Agent*> players;
    for (auto& a : brs) players.push_back(&a);

    // fixed horizon long enough for the iteration to settle on P*
    const auto outcome = game::run_game(case_state(), case_goal(200), players, 0);
    REQUIRE(outcome.status.kind == game::GameStatus::Kind::goal_achieved);
    CHECK(outcome.status.round <= 50);

    const auto& last = outcome.records.back();
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(last.powers_w[i] - kFrozenPstar[i]) <= 1e-6);
    CHECK(last.saving_w >= 0.85);

    // monotone saving: total power non-increasing from a start dominating P*
    for (std::size_t r = 1; r < outcome.records.size(); ++r)
        CHECK(outcome.records[r].total_power_w <=
              outcome.records[r - 1].total_power_w + 1e-9);

    // first-satisfying-round bookkeeping
    for (const auto& rec : outcome.records)
        if (rec.round < outcome.status.round) CHECK_FALSE(rec.goal_satisfied);
}

TEST_CASE("trace consistency: rates recompute from powers") {
    std::vector<agents::BestResponseAgent> brs;
    for (int i = 0; i < 4; ++i) brs.emplace_back(case_env_info(), 1.05);
    std::vector<agents::Agent*> players;
    for (auto& a : brs) players.push_back(&a);
    const auto outcome = game::run_game(case_state(), case_goal(8), players, 0);
    for (const auto& rec : outcome.records) {
        env::NetworkState state{kGains, kNoise, kBandwidthHz, rec.powers_w};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(rec.rates_bps[i] == env::rate(state, i));
            CHECK(rec.margins_bps[i] == rec.rates_bps[i] - kFloorsBps[i]);
        }
    }
}

TEST_CASE("observations never leak current-round choices") {
    std::vector<ProbeAgent> probes(4);
    std::vector<agents::Agent*> players;
    for (auto& p : probes) players.push_back(&p);
    const auto outcome = game::run_game(case_state(), case_goal(3), players, 0);
    REQUIRE(outcome.records.size() == 3);
    for (const auto& probe : probes) {
        REQUIRE(probe.seen.size() == 3);
        CHECK(probe.seen[0].prev_powers_w == kInitialPowers);
        CHECK(probe.seen[1].prev_powers_w == outcome.records[0].powers_w);
        CHECK(probe.seen[2].prev_powers_w == outcome.records[1].powers_w);
    }
}

TEST_CASE("agent failure preserves the rounds played so far") {
    agents::HoldAgent hold;
    FailingAgent failing(2);
    agents::HoldAgent h2, h3;
    std::vector<agents::Agent*> players{&hold, &failing, &h2, &h3};
    const auto outcome = game::run_game(case_state(), case_goal(5), players, 0);
    CHECK(outcome.status.kind == game::GameStatus::Kind::agent_failure);
    CHECK(outcome.status.round == 2);
    CHECK(outcome.status.user == 1);
    CHECK(outcome.records.size() == 1);
}

TEST_CASE("out-of-range choices are clamped and recorded") {
    FixedAgent huge(1e9), negative(-5.0);
    agents::HoldAgent h2, h3;
    std::vector<agents::Agent*> players{&huge, &negative, &h2, &h3};
    const auto outcome = game::run_game(case_state(), case_goal(1), players, 0);
    const auto& rec = outcome.records.at(0);
    CHECK(rec.raw_choices_w[0] == 1e9);
    CHECK(rec.powers_w[0] == doctest::Approx(20.0));  // 10 x initial own power
    CHECK(rec.clamped[0]);
    CHECK(rec.powers_w[1] == 0.0);
    CHECK(rec.clamped[1]);
    CHECK_FALSE(rec.clamped[2]);
}

TEST_CASE("infeasible intent short-circuits unless forced") {
    game::GoalSpec goal;
    goal.saving = game::PowerSaving::absolute_w(0.0);
    goal.rate_floors.targets_bps = {1e6, 1e6, 1e6, 1e6};  // far beyond feasibility
    goal.max_rounds = 5;
    agents::HoldAgent h0, h1, h2, h3;
    std::vector<agents::Agent*> players{&h0, &h1, &h2, &h3};

    const auto outcome = game::run_game(case_state(), goal, players, 0);
    CHECK(outcome.status.kind == game::GameStatus::Kind::infeasible);
    CHECK(outcome.records.empty());
    CHECK(outcome.oracle_solution.spectral_radius >= 1.0);

    game::GameOptions options;
    options.force = true;
    const auto forced = game::run_game(case_state(), goal, players, 0, options);
    CHECK(forced.status.kind == game::GameStatus::Kind::max_rounds_exhausted);
    CHECK(forced.records.size() == 5);
}

TEST_CASE("relative and absolute goals coincide on the case instance") {
    game::GoalSpec rel = case_goal(5);
    rel.saving = game::PowerSaving::relative_fraction(0.05);
    agents::HoldAgent h0, h1, h2, h3;
    std::vector<agents::Agent*> players{&h0, &h1, &h2, &h3};
    const auto outcome = game::run_game(case_state(), rel, players, 0);
    CHECK(outcome.resolved_goal.delta_p_w == doctest::Approx(0.85).epsilon(1e-12));
}
