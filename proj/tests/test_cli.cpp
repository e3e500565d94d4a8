#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arena/cli.hpp"

using namespace arena;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("arena_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json base_config(const fs::path& out_dir) {
    return {{"network",
             {{"gains", {1.21, 2.01, 0.58, 0.13}},
              {"noise_db", 1.0},
              {"bandwidth_hz", 15000.0},
              {"initial_powers_w", {2.0, 4.0, 5.0, 6.0}}}},
            {"intent",
             "reduce total power by 0.85 W while rate of user 1 >= 3.5 kbps and rate of "
             "user 2 >= 15.8 kbps and rate of user 3 >= 4.4 kbps and rate of user 4 >= 1 "
             "kbps"},
            {"max_rounds", 50},
            {"stop_on_success", true},
            {"seed", 1},
            {"agents",
             json::array({{{"kind", "best_response"}},
                          {{"kind", "best_response"}},
                          {{"kind", "best_response"}},
                          {{"kind", "best_response"}}})},
            {"out_dir", out_dir.string()}};
}

fs::path write_config(const fs::path& dir, const json& config) {
    const fs::path path = dir / "config.json";
    std::ofstream out(path);
    out << config.dump(2);
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("run writes all artifacts and achieves the goal") {
    const auto dir = fresh_dir("run");
    const auto config = write_config(dir, base_config(dir / "out"));

    CHECK(cli::run(config.string(), {}) == cli::kExitGoalAchieved);
    CHECK(fs::exists(dir / "out" / "trace.jsonl"));
    CHECK(fs::exists(dir / "out" / "report.txt"));
    CHECK(fs::exists(dir / "out" / "powers.csv"));
    CHECK(fs::exists(dir / "out" / "rate_margins.csv"));

    const std::string report = slurp(dir / "out" / "report.txt");
    CHECK(report.find("noise_linear: 1.258925 W") != std::string::npos);
    CHECK(report.find("oracle verdict: feasible") != std::string::npos);
    CHECK(report.find("oracle minimum total power: 12.735640 W") != std::string::npos);
    CHECK(report.find("goal achieved at round") != std::string::npos);

    CHECK(cli::replay((dir / "out" / "trace.jsonl").string()) == 0);
}

TEST_CASE("powers.csv per-round sums match the trace total exactly") {
    const auto dir = fresh_dir("csv");
    const auto config = write_config(dir, base_config(dir / "out"));
    REQUIRE(cli::run(config.string(), {}) == cli::kExitGoalAchieved);

    // totals per round from the trace, as microwatt integers
    std::map<int, std::int64_t> trace_totals;
    {
        std::ifstream trace(dir / "out" / "trace.jsonl");
        std::string line;
        while (std::getline(trace, line)) {
            const json rec = json::parse(line);
            if (rec.value("type", "") != "round") continue;
            trace_totals[rec.at("round").get<int>()] =
                std::llround(rec.at("total_power_w").get<double>() * 1e6);
        }
    }
    REQUIRE_FALSE(trace_totals.empty());

    std::map<int, std::int64_t> csv_totals;
    std::ifstream csv(dir / "out" / "powers.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "round,user,power_w,min_power_w");
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string round_s, user_s, power_s, min_s;
        std::getline(row, round_s, ',');
        std::getline(row, user_s, ',');
        std::getline(row, power_s, ',');
        std::getline(row, min_s, ',');
        csv_totals[std::stoi(round_s)] += std::llround(std::stod(power_s) * 1e6);
    }
    CHECK(csv_totals == trace_totals);
}

TEST_CASE("identical config and seed produce byte-identical traces") {
    const auto dir = fresh_dir("determinism");
    auto cfg_a = base_config(dir / "a");
    auto cfg_b = base_config(dir / "b");
    REQUIRE(cli::run(write_config(dir, cfg_a).string(), {}) == cli::kExitGoalAchieved);
    const fs::path cfg_b_path = dir / "config_b.json";
    {
        std::ofstream out(cfg_b_path);
        out << cfg_b.dump(2);
    }
    REQUIRE(cli::run(cfg_b_path.string(), {}) == cli::kExitGoalAchieved);
    const std::string a = slurp(dir / "a" / "trace.jsonl");
    const std::string b = slurp(dir / "b" / "trace.jsonl");
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}

TEST_CASE("impossible saving reports intent unsatisfiable with exit 3") {
    const auto dir = fresh_dir("infeasible");
    auto config = base_config(dir / "out");
    // floors no network can satisfy
    config["intent"] =
        "reduce total power by 1 W while rate of user 1 >= 500 kbps and rate of user 2 >= "
        "500 kbps";
    CHECK(cli::run(write_config(dir, config).string(), {}) == cli::kExitInfeasible);
    const std::string report = slurp(dir / "out" / "report.txt");
    CHECK(report.find("intent unsatisfiable") != std::string::npos);
    CHECK(report.find("spectral radius") != std::string::npos);
}

TEST_CASE("config validation failures exit 1") {
    const auto dir = fresh_dir("badcfg");

    auto both_noises = base_config(dir / "out");
    both_noises["network"]["noise_linear"] = 1.0;  // now both noise forms present
    CHECK(cli::run(write_config(dir, both_noises).string(), {}) == cli::kExitConfigError);

    auto wrong_agents = base_config(dir / "out");
    wrong_agents["agents"] = json::array({{{"kind", "hold"}}});
    CHECK(cli::run(write_config(dir, wrong_agents).string(), {}) == cli::kExitConfigError);

    auto no_seed = base_config(dir / "out");
    no_seed["agents"][0] = {{"kind", "random"}};
    no_seed.erase("seed");
    CHECK(cli::run(write_config(dir, no_seed).string(), {}) == cli::kExitConfigError);

    auto bad_intent = base_config(dir / "out");
    bad_intent["intent"] = "reduce total power by -3%";
    CHECK(cli::run(write_config(dir, bad_intent).string(), {}) == cli::kExitConfigError);

    CHECK(cli::run((dir / "missing.json").string(), {}) == cli::kExitConfigError);
}

TEST_CASE("replay detects a corrupted record") {
    const auto dir = fresh_dir("corrupt");
    const auto config = write_config(dir, base_config(dir / "out"));
    REQUIRE(cli::run(config.string(), {}) == cli::kExitGoalAchieved);

    const fs::path trace = dir / "out" / "trace.jsonl";
    std::vector<std::string> lines;
    {
        std::ifstream in(trace);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }
    REQUIRE(lines.size() >= 3);
    // corrupt one stored rate in the first round record
    json rec = json::parse(lines[1]);
    rec["rates_bps"][0] = rec["rates_bps"][0].get<double>() + 1.0;
    lines[1] = rec.dump();
    const fs::path tampered = dir / "tampered.jsonl";
    {
        std::ofstream out(tampered);
        for (const auto& l : lines) out << l << '\n';
    }
    CHECK(cli::replay(tampered.string()) == 1);
}

TEST_CASE("replay cross-checks the header against a config") {
    const auto dir = fresh_dir("crosscheck");
    const auto config = write_config(dir, base_config(dir / "out"));
    REQUIRE(cli::run(config.string(), {}) == cli::kExitGoalAchieved);
    const fs::path trace = dir / "out" / "trace.jsonl";

    CHECK(cli::replay(trace.string(), config.string()) == 0);

    // a different noise interpretation must be detected, not recomputed
    auto other = base_config(dir / "out");
    other["network"].erase("noise_db");
    other["network"]["noise_linear"] = 1.0;
    const fs::path other_path = dir / "other.json";
    {
        std::ofstream out(other_path);
        out << other.dump(2);
    }
    CHECK(cli::replay(trace.string(), other_path.string()) == 1);
}

TEST_CASE("run with LLM fixture agents is deterministic and replayable") {
    const auto dir = fresh_dir("fixture");
    const fs::path fixture = dir / "replies.jsonl";
    {
        std::ofstream out(fixture);
        const char* replies[] = {"power: 1.60", "power: 3.20", "power: 3.90", "power: 4.30"};
        for (int round = 0; round < 3; ++round)
            for (const char* r : replies)
                out << json{{"request_hash", "*"}, {"reply_text", r}}.dump() << '\n';
    }
    auto config = base_config(dir / "out");
    config["stop_on_success"] = false;
    config["max_rounds"] = 3;
    json agents = json::array();
    for (int i = 0; i < 4; ++i)
        agents.push_back({{"kind", "llm"},
                          {"model", "stub"},
                          {"fixture", fixture.string()},
                          {"backoff_base_s", 0.0}});
    config["agents"] = agents;
    const auto path = write_config(dir, config);

    const int code = cli::run(path.string(), {});
    CHECK((code == cli::kExitGoalAchieved || code == cli::kExitMaxRounds));
    std::ifstream trace(dir / "out" / "trace.jsonl");
    std::string line;
    int rounds = 0;
    while (std::getline(trace, line))
        if (json::parse(line).value("type", "") == "round") ++rounds;
    CHECK(rounds == 3);
    CHECK(cli::replay((dir / "out" / "trace.jsonl").string()) == 0);
}

#ifdef ARENA_BIN
TEST_CASE("command-line binary smoke test") {
    const auto dir = fresh_dir("binary");
    const auto config = write_config(dir, base_config(dir / "out"));

    const std::string run_cmd = std::string(ARENA_BIN) + " run --config " + config.string() +
                                " > " + (dir / "run.log").string() + " 2>&1";
    CHECK(std::system(run_cmd.c_str()) == 0);

    const std::string oracle_cmd = std::string(ARENA_BIN) + " oracle --config " +
                                   config.string() + " > " + (dir / "oracle.log").string();
    CHECK(std::system(oracle_cmd.c_str()) == 0);
    const std::string oracle_out = slurp(dir / "oracle.log");
    CHECK(oracle_out.find("spectral radius") != std::string::npos);
    CHECK(oracle_out.find("total: 12.735640 W") != std::string::npos);

    const std::string replay_cmd = std::string(ARENA_BIN) + " replay " +
                                   (dir / "out" / "trace.jsonl").string() + " > " +
                                   (dir / "replay.log").string();
    CHECK(std::system(replay_cmd.c_str()) == 0);
}
#endif
