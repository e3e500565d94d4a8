#include "arena/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "arena/chat.hpp"
#include "arena/env.hpp"
#include "arena/intent.hpp"
#include "arena/oracle.hpp"

namespace arena::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json saving_json(const game::PowerSaving& s) {
    if (s.kind == game::PowerSaving::Kind::absolute)
        return {{"kind", "absolute"}, {"microwatts", s.microwatts}};
    return {{"kind", "relative"}, {"ppm", s.ppm}};
}

game::PowerSaving saving_from_json(const json& j) {
    game::PowerSaving s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "absolute") {
        s.kind = game::PowerSaving::Kind::absolute;
        s.microwatts = j.at("microwatts").get<std::int64_t>();
    } else if (kind == "relative") {
        s.kind = game::PowerSaving::Kind::relative;
        s.ppm = j.at("ppm").get<std::int64_t>();
    } else {
        throw std::invalid_argument("unknown saving kind: " + kind);
    }
    return s;
}

json status_json(const game::GameStatus& status) {
    switch (status.kind) {
        case game::GameStatus::Kind::goal_achieved:
            return {{"type", "terminal"}, {"status", "goal_achieved"}, {"round", status.round}};
        case game::GameStatus::Kind::max_rounds_exhausted:
            return {{"type", "terminal"}, {"status", "max_rounds_exhausted"}};
        case game::GameStatus::Kind::infeasible:
            return {{"type", "terminal"}, {"status", "infeasible"}};
        case game::GameStatus::Kind::agent_failure:
            return {{"type", "terminal"},
                    {"status", "agent_failure"},
                    {"round", status.round},
                    {"user", status.user},
                    {"cause", status.cause}};
    }
    return {};
}

json round_json(const game::RoundRecord& rec) {
    return {{"type", "round"},
            {"round", rec.round},
            {"powers_w", rec.powers_w},
            {"raw_choices_w", rec.raw_choices_w},
            {"clamped", rec.clamped},
            {"rates_bps", rec.rates_bps},
            {"margins_bps", rec.margins_bps},
            {"min_given_others_w", rec.min_given_others_w},
            {"total_power_w", rec.total_power_w},
            {"saving_w", rec.saving_w},
            {"goal_satisfied", rec.goal_satisfied},
            {"violations", rec.violations}};
}

}  // namespace

game::GoalSpec RunConfig::goal() const {
    const std::size_t k = gains.size();
    if (intent_text) {
        auto parsed = intent::parse_intent(*intent_text);
        if (auto* diag = std::get_if<intent::Diagnostic>(&parsed))
            throw std::invalid_argument("intent: " + diag->render());
        return std::get<intent::IntentSpec>(parsed).to_goal_spec(k, max_rounds);
    }
    game::GoalSpec g = *explicit_goal;
    g.max_rounds = max_rounds;
    g.validate(k);
    return g;
}

env::NetworkState RunConfig::network() const {
    env::NetworkState state{gains, noise_linear, bandwidth_hz, initial_powers_w};
    state.validate();
    return state;
}

Result<RunConfig> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) return Error{"cannot read config file: " + path};
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) return Error{"config is not valid JSON: " + path};

    try {
        RunConfig cfg;
        const json& net = j.at("network");
        cfg.gains = net.at("gains").get<std::vector<double>>();
        cfg.bandwidth_hz = net.at("bandwidth_hz").get<double>();
        cfg.initial_powers_w = net.at("initial_powers_w").get<std::vector<double>>();
        const bool has_db = net.contains("noise_db");
        const bool has_lin = net.contains("noise_linear");
        if (has_db == has_lin)
            return Error{"network must carry exactly one of noise_db / noise_linear"};
        cfg.noise_linear = has_db ? env::db_to_linear(net.at("noise_db").get<double>())
                                  : net.at("noise_linear").get<double>();

        const bool has_intent = j.contains("intent");
        const bool has_goal = j.contains("goal");
        if (has_intent == has_goal)
            return Error{"config must carry exactly one of intent / goal"};
        if (has_intent) {
            cfg.intent_text = j.at("intent").get<std::string>();
        } else {
            game::GoalSpec g;
            g.saving = saving_from_json(j.at("goal").at("power_saving"));
            g.rate_floors.targets_bps =
                j.at("goal").at("rate_floors_bps").get<std::vector<double>>();
            cfg.explicit_goal = g;
        }

        if (j.contains("max_rounds")) cfg.max_rounds = j.at("max_rounds").get<int>();
        if (j.contains("stop_on_success"))
            cfg.stop_on_success = j.at("stop_on_success").get<bool>();
        if (j.contains("force")) cfg.force = j.at("force").get<bool>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();

        for (const json& a : j.at("agents")) {
            AgentSpec spec;
            spec.kind = a.at("kind").get<std::string>();
            if (a.contains("margin")) spec.margin = a.at("margin").get<double>();
            if (a.contains("model")) spec.model = a.at("model").get<std::string>();
            if (a.contains("endpoint")) spec.endpoint = a.at("endpoint").get<std::string>();
            if (a.contains("fixture")) spec.fixture = a.at("fixture").get<std::string>();
            if (a.contains("record_fixture"))
                spec.record_fixture = a.at("record_fixture").get<std::string>();
            if (a.contains("temperature")) spec.temperature = a.at("temperature").get<double>();
            if (a.contains("max_tokens")) spec.max_tokens = a.at("max_tokens").get<int>();
            if (a.contains("stateless")) spec.stateless = a.at("stateless").get<bool>();
            if (a.contains("backoff_base_s"))
                spec.backoff_base_s = a.at("backoff_base_s").get<double>();
            if (spec.kind != "hold" && spec.kind != "best_response" && spec.kind != "random" &&
                spec.kind != "llm")
                return Error{"unknown agent kind: " + spec.kind};
            cfg.agents.push_back(std::move(spec));
        }
        if (cfg.agents.size() != cfg.gains.size())
            return Error{"agent count (" + std::to_string(cfg.agents.size()) +
                         ") must equal user count (" + std::to_string(cfg.gains.size()) + ")"};
        for (const auto& a : cfg.agents)
            if (a.kind == "random" && !cfg.seed)
                return Error{"seed is required when a random agent is configured"};
        return cfg;
    } catch (const json::exception& e) {
        return Error{std::string("config field error: ") + e.what()};
    } catch (const std::exception& e) {
        return Error{std::string("config error: ") + e.what()};
    }
}

namespace {

void apply(const Overrides& o, RunConfig& cfg) {
    if (o.intent) {
        cfg.intent_text = *o.intent;
        cfg.explicit_goal.reset();
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.rounds) cfg.max_rounds = *o.rounds;
    if (o.stop_on_success) cfg.stop_on_success = *o.stop_on_success;
    if (o.force) cfg.force = *o.force;
    if (o.out_dir) cfg.out_dir = *o.out_dir;
}

struct AgentPool {
    std::vector<std::unique_ptr<chat::ChatClient>> clients;
    std::vector<std::unique_ptr<agents::Agent>> agents;
    std::vector<agents::Agent*> raw;
};

Result<AgentPool> build_agents(const RunConfig& cfg) {
    AgentPool pool;
    const agents::EnvInfo env_info{cfg.gains, cfg.noise_linear, cfg.bandwidth_hz};
    for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
        const AgentSpec& spec = cfg.agents[i];
        if (spec.kind == "hold") {
            pool.agents.push_back(std::make_unique<agents::HoldAgent>());
        } else if (spec.kind == "best_response") {
            pool.agents.push_back(
                std::make_unique<agents::BestResponseAgent>(env_info, spec.margin));
        } else if (spec.kind == "random") {
            pool.agents.push_back(std::make_unique<agents::RandomAgent>(*cfg.seed + i));
        } else {  // llm
            std::unique_ptr<chat::ChatClient> client;
            if (!spec.fixture.empty()) {
                auto fixture = chat::FixtureChatClient::load(spec.fixture);
                if (!fixture.ok()) return fixture.error();
                client = std::make_unique<chat::FixtureChatClient>(std::move(fixture).value());
            } else if (!spec.endpoint.empty()) {
                client = std::make_unique<chat::HttpChatClient>(
                    chat::HttpEndpoint{spec.endpoint});
            } else {
                return Error{"llm agent " + std::to_string(i) +
                             " needs either an endpoint or a fixture"};
            }
            if (!spec.record_fixture.empty()) {
                pool.clients.push_back(std::move(client));
                client = std::make_unique<chat::RecordingChatClient>(*pool.clients.back(),
                                                                     spec.record_fixture);
            }
            agents::RoleConfig role{env_info, cfg.gains.size(), i};
            agents::LlmAgentConfig llm;
            llm.model = spec.model;
            llm.temperature = spec.temperature;
            llm.max_tokens = spec.max_tokens;
            llm.stateless = spec.stateless;
            llm.retry.base_delay_s = spec.backoff_base_s;
            pool.agents.push_back(std::make_unique<agents::LlmAgent>(*client, role, llm));
            pool.clients.push_back(std::move(client));
        }
    }
    for (auto& a : pool.agents) pool.raw.push_back(a.get());
    return pool;
}

json config_echo(const RunConfig& cfg, const game::GoalSpec& goal) {
    json agents_j = json::array();
    for (const auto& a : cfg.agents) {
        json aj{{"kind", a.kind}};
        if (a.kind == "best_response") aj["margin"] = a.margin;
        if (a.kind == "llm") {
            aj["model"] = a.model;
            aj["temperature"] = a.temperature;
            aj["stateless"] = a.stateless;
        }
        agents_j.push_back(std::move(aj));
    }
    json echo{{"gains", cfg.gains},
              {"noise_linear", cfg.noise_linear},
              {"bandwidth_hz", cfg.bandwidth_hz},
              {"initial_powers_w", cfg.initial_powers_w},
              {"goal",
               {{"power_saving", saving_json(goal.saving)},
                {"rate_floors_bps", goal.rate_floors.targets_bps},
                {"max_rounds", goal.max_rounds}}},
              {"stop_on_success", cfg.stop_on_success},
              {"force", cfg.force},
              {"agents", agents_j}};
    if (cfg.seed) echo["seed"] = *cfg.seed;
    if (cfg.intent_text) echo["intent"] = *cfg.intent_text;
    return echo;
}

std::string status_text(const game::GameStatus& status, double rho) {
    std::ostringstream os;
    switch (status.kind) {
        case game::GameStatus::Kind::goal_achieved:
            os << "goal achieved at round " << status.round;
            break;
        case game::GameStatus::Kind::max_rounds_exhausted:
            os << "max rounds exhausted without meeting the goal";
            break;
        case game::GameStatus::Kind::infeasible:
            os << "intent unsatisfiable: rate floors are jointly infeasible "
               << "(spectral radius " << rho << " >= 1)";
            break;
        case game::GameStatus::Kind::agent_failure:
            os << "agent failure: user " << status.user + 1 << " at round " << status.round
               << ": " << status.cause;
            break;
    }
    return os.str();
}

void write_report(const fs::path& path, const RunConfig& cfg, const game::GameOutcome& out) {
    std::ofstream rep(path);
    const auto& sol = out.oracle_solution;
    rep << "intent-arena run report\n";
    rep << "users: " << cfg.gains.size() << "\n";
    rep << "gains:";
    for (double g : cfg.gains) rep << ' ' << g;
    rep << "\nnoise_linear: " << fixed6(cfg.noise_linear) << " W\n";
    rep << "bandwidth_hz: " << cfg.bandwidth_hz << "\n";
    rep << "initial powers (W):";
    for (double p : out.initial_powers_w) rep << ' ' << fixed6(p);
    rep << "\ninitial total power: " << fixed6(out.initial_total_w) << " W\n";
    rep << "goal: reduce total power by " << fixed6(out.resolved_goal.delta_p_w)
        << " W; rate floors (bit/s):";
    for (double f : out.resolved_goal.floors_bps) rep << ' ' << f;
    rep << "\nmax rounds: " << out.resolved_goal.max_rounds << "\n";
    rep << "oracle verdict: " << (sol.feasible ? "feasible" : "infeasible")
        << " (spectral radius " << sol.spectral_radius << ")"
        << (sol.ill_conditioned ? " [ill_conditioned]" : "") << "\n";
    rep << "oracle target SINRs:";
    for (double g : sol.target_sinrs) rep << ' ' << g;
    rep << "\n";
    if (sol.feasible) {
        rep << "oracle minimum powers P* (W):";
        double total = 0.0;
        for (double p : sol.min_powers_w) {
            rep << ' ' << fixed6(p);
            total += p;
        }
        rep << "\noracle minimum total power: " << fixed6(total) << " W\n";
    }
    rep << "status: " << status_text(out.status, sol.spectral_radius) << "\n";
    if (!out.records.empty()) {
        rep << "\nround  total_W    saving_W   ok violations\n";
        for (const auto& rec : out.records) {
            rep << rec.round << "  " << fixed6(rec.total_power_w) << "  "
                << fixed6(rec.saving_w) << "  " << (rec.goal_satisfied ? "yes" : "no ") << " ";
            bool any = false;
            for (std::size_t i = 0; i < rec.violations.size(); ++i)
                if (rec.violations[i]) {
                    rep << "u" << i + 1 << ' ';
                    any = true;
                }
            if (!any) rep << "-";
            rep << "\n";
        }
    }
}

std::int64_t parse_micro(const std::string& fixed) {
    const auto dot = fixed.find('.');
    return std::stoll(fixed.substr(0, dot) + fixed.substr(dot + 1));
}

std::string format_micro(std::int64_t micro) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(micro / 1000000),
                  static_cast<long long>(micro % 1000000));
    return buf;
}

// The per-round power column must sum to the 6-decimal rendering of the
// round's total. Independent rounding of each component can miss that by
// a few microwatts, so the residue is spread over the components whose
// rounding moved them down the most (largest-remainder apportionment).
std::vector<std::string> apportioned_powers(const std::vector<double>& powers_w,
                                            double total_w) {
    const std::size_t k = powers_w.size();
    std::vector<std::int64_t> micro(k);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        micro[i] = parse_micro(fixed6(powers_w[i]));
        sum += micro[i];
    }
    std::int64_t diff = parse_micro(fixed6(total_w)) - sum;

    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return powers_w[a] * 1e6 - static_cast<double>(micro[a]) >
               powers_w[b] * 1e6 - static_cast<double>(micro[b]);
    });
    std::size_t up = 0, down = k;
    while (diff > 0) {
        ++micro[order[up++ % k]];
        --diff;
    }
    while (diff < 0) {
        down = down == 0 ? k - 1 : down - 1;
        --micro[order[down]];
        ++diff;
    }

    std::vector<std::string> cells(k);
    for (std::size_t i = 0; i < k; ++i) cells[i] = format_micro(micro[i]);
    return cells;
}

void write_csvs(const fs::path& dir, const game::GameOutcome& out) {
    std::ofstream powers(dir / "powers.csv");
    powers << "round,user,power_w,min_power_w\n";
    std::ofstream margins(dir / "rate_margins.csv");
    margins << "round,user,rate_margin_bps\n";
    for (const auto& rec : out.records) {
        const auto cells = apportioned_powers(rec.powers_w, rec.total_power_w);
        for (std::size_t i = 0; i < rec.powers_w.size(); ++i) {
            powers << rec.round << ',' << i + 1 << ',' << cells[i] << ','
                   << fixed6(rec.min_given_others_w[i]) << '\n';
            margins << rec.round << ',' << i + 1 << ',' << fixed6(rec.margins_bps[i]) << '\n';
        }
    }
}

}  // namespace

int run(const std::string& config_path, const Overrides& overrides) {
    auto loaded = load_config(config_path);
    if (!loaded.ok()) {
        std::cerr << "error: " << loaded.error().message << "\n";
        return kExitConfigError;
    }
    RunConfig cfg = std::move(loaded).value();
    apply(overrides, cfg);

    game::GoalSpec goal;
    env::NetworkState initial;
    try {
        goal = cfg.goal();
        initial = cfg.network();
        goal.validate(initial.size());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    auto pool = build_agents(cfg);
    if (!pool.ok()) {
        std::cerr << "error: " << pool.error().message << "\n";
        return kExitConfigError;
    }

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    const fs::path dir(cfg.out_dir);
    std::ofstream trace(dir / "trace.jsonl");
    if (!trace) {
        std::cerr << "error: cannot write to output directory " << cfg.out_dir << "\n";
        return kExitConfigError;
    }

    // Header first, so even an aborted run identifies itself.
    const auto gammas = oracle::target_sinr(goal.rate_floors, cfg.bandwidth_hz);
    const auto oracle_sol = oracle::min_power_direct(cfg.gains, cfg.noise_linear, gammas);
    {
        json header{{"type", "header"},
                    {"tool_version", kToolVersion},
                    {"template_version", agents::kPromptTemplateVersion},
                    {"config", config_echo(cfg, goal)},
                    {"oracle",
                     {{"feasible", oracle_sol.feasible},
                      {"spectral_radius", oracle_sol.spectral_radius},
                      {"target_sinrs", oracle_sol.target_sinrs},
                      {"min_powers_w", oracle_sol.min_powers_w},
                      {"ill_conditioned", oracle_sol.ill_conditioned}}}};
        trace << header.dump() << '\n' << std::flush;
    }

    game::GameOptions options;
    options.stop_on_success = cfg.stop_on_success;
    options.force = cfg.force;
    options.on_round = [&trace](const game::RoundRecord& rec) {
        trace << round_json(rec).dump() << '\n' << std::flush;
    };

    game::GameOutcome outcome;
    try {
        outcome = game::run_game(initial, goal, pool.value().raw, cfg.seed.value_or(0), options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    trace << status_json(outcome.status).dump() << '\n' << std::flush;
    write_report(dir / "report.txt", cfg, outcome);
    write_csvs(dir, outcome);

    std::cout << status_text(outcome.status, outcome.oracle_solution.spectral_radius) << "\n";
    switch (outcome.status.kind) {
        case game::GameStatus::Kind::goal_achieved: return kExitGoalAchieved;
        case game::GameStatus::Kind::max_rounds_exhausted: return kExitMaxRounds;
        case game::GameStatus::Kind::infeasible: return kExitInfeasible;
        case game::GameStatus::Kind::agent_failure: return kExitAgentFailure;
    }
    return kExitConfigError;
}

namespace {

struct Mismatch {
    std::size_t line;
    std::string detail;
};

template <typename T>
bool check_eq(const T& stored, const T& recomputed, const char* field, int round,
              std::size_t line, std::vector<Mismatch>& out) {
    if (stored == recomputed) return true;
    std::ostringstream os;
    os << "round " << round << " field " << field << ": stored vs recomputed differ";
    out.push_back({line, os.str()});
    return false;
}

}  // namespace

int replay(const std::string& trace_path, const std::optional<std::string>& config_path) {
    std::ifstream in(trace_path);
    if (!in) {
        std::cerr << "error: cannot read trace: " << trace_path << "\n";
        return 1;
    }
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) {
        std::cerr << "error: empty trace\n";
        return 1;
    }
    ++lineno;
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("type", "") != "header") {
        std::cerr << "error: line 1: trace must start with a header record\n";
        return 1;
    }

    std::vector<double> gains, initial_powers, floors;
    double noise = 0, bandwidth = 0;
    game::PowerSaving saving;
    try {
        const json& c = header.at("config");
        gains = c.at("gains").get<std::vector<double>>();
        noise = c.at("noise_linear").get<double>();
        bandwidth = c.at("bandwidth_hz").get<double>();
        initial_powers = c.at("initial_powers_w").get<std::vector<double>>();
        floors = c.at("goal").at("rate_floors_bps").get<std::vector<double>>();
        saving = saving_from_json(c.at("goal").at("power_saving"));
    } catch (const std::exception& e) {
        std::cerr << "error: line 1: malformed header: " << e.what() << "\n";
        return 1;
    }

    if (config_path) {
        auto loaded = load_config(*config_path);
        if (!loaded.ok()) {
            std::cerr << "error: " << loaded.error().message << "\n";
            return 1;
        }
        const RunConfig& cfg = loaded.value();
        game::GoalSpec goal;
        try {
            goal = cfg.goal();
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        const char* field = nullptr;
        if (cfg.gains != gains) field = "gains";
        else if (cfg.noise_linear != noise) field = "noise_linear";
        else if (cfg.bandwidth_hz != bandwidth) field = "bandwidth_hz";
        else if (cfg.initial_powers_w != initial_powers) field = "initial_powers_w";
        else if (goal.rate_floors.targets_bps != floors) field = "rate_floors_bps";
        else if (!(goal.saving == saving)) field = "power_saving";
        if (field) {
            std::cerr << "error: header-config mismatch on " << field
                      << "; refusing to recompute\n";
            return 1;
        }
    }

    double initial_total = 0.0;
    for (double p : initial_powers) initial_total += p;
    game::ResolvedGoal goal;
    goal.delta_p_w = saving.resolve_w(initial_total);
    goal.floors_bps = floors;

    std::vector<Mismatch> mismatches;
    std::size_t rounds = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded()) {
            std::cerr << "error: line " << lineno << ": not valid JSON\n";
            return 1;
        }
        const std::string type = rec.value("type", "");
        if (type == "terminal") continue;
        if (type != "round") {
            std::cerr << "error: line " << lineno << ": unknown record type '" << type << "'\n";
            return 1;
        }
        try {
            const int round = rec.at("round").get<int>();
            const auto powers = rec.at("powers_w").get<std::vector<double>>();
            if (powers.size() != gains.size()) {
                std::cerr << "error: line " << lineno << ": power vector length mismatch\n";
                return 1;
            }
            env::NetworkState state{gains, noise, bandwidth, powers};
            std::vector<double> rates(powers.size()), margins(powers.size()),
                min_go(powers.size());
            for (std::size_t i = 0; i < powers.size(); ++i) {
                rates[i] = env::rate(state, i);
                margins[i] = rates[i] - floors[i];
                min_go[i] = game::min_given_others(state, floors, i);
            }
            const auto eval = game::evaluate_goal(state, goal, initial_total);
            check_eq(rec.at("rates_bps").get<std::vector<double>>(), rates, "rates_bps", round,
                     lineno, mismatches);
            check_eq(rec.at("margins_bps").get<std::vector<double>>(), margins, "margins_bps",
                     round, lineno, mismatches);
            check_eq(rec.at("min_given_others_w").get<std::vector<double>>(), min_go,
                     "min_given_others_w", round, lineno, mismatches);
            check_eq(rec.at("total_power_w").get<double>(), env::total_power(state),
                     "total_power_w", round, lineno, mismatches);
            check_eq(rec.at("saving_w").get<double>(), eval.total_saving_w, "saving_w", round,
                     lineno, mismatches);
            check_eq(rec.at("goal_satisfied").get<bool>(), eval.satisfied, "goal_satisfied",
                     round, lineno, mismatches);
            check_eq(rec.at("violations").get<std::vector<bool>>(), eval.violations,
                     "violations", round, lineno, mismatches);
            ++rounds;
        } catch (const std::exception& e) {
            std::cerr << "error: line " << lineno << ": malformed round record: " << e.what()
                      << "\n";
            return 1;
        }
    }

    if (mismatches.empty()) {
        std::cout << "replay: " << rounds << " rounds verified, zero mismatches\n";
        return 0;
    }
    for (const auto& m : mismatches)
        std::cerr << "mismatch: line " << m.line << ": " << m.detail << "\n";
    return 1;
}

int oracle_report(const std::string& config_path) {
    auto loaded = load_config(config_path);
    if (!loaded.ok()) {
        std::cerr << "error: " << loaded.error().message << "\n";
        return kExitConfigError;
    }
    const RunConfig& cfg = loaded.value();
    try {
        const game::GoalSpec goal = cfg.goal();
        const auto gammas = oracle::target_sinr(goal.rate_floors, cfg.bandwidth_hz);
        const auto sol = oracle::min_power_direct(cfg.gains, cfg.noise_linear, gammas);
        std::cout << "target SINRs:";
        for (double g : sol.target_sinrs) std::cout << ' ' << g;
        std::cout << "\nspectral radius: " << sol.spectral_radius << "\n";
        if (sol.feasible) {
            std::cout << "P* (W):";
            double total = 0.0;
            for (double p : sol.min_powers_w) {
                std::cout << ' ' << fixed6(p);
                total += p;
            }
            std::cout << "\ntotal: " << fixed6(total) << " W\n";
        } else {
            std::cout << "infeasible\n";
        }
        return sol.feasible ? 0 : kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace arena::cli
