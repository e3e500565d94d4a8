#include "arena/agents.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace arena::agents {

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string power_list(const std::vector<double>& powers_w) {
    std::string out = "[";
    for (std::size_t i = 0; i < powers_w.size(); ++i) {
        if (i) out += ", ";
        out += fixed2(powers_w[i]);
    }
    out += "] W";
    return out;
}

}  // namespace

Result<double> HoldAgent::decide(const DecisionRequest& request) {
    return request.observation.prev_powers_w.at(request.observation.own_index);
}

BestResponseAgent::BestResponseAgent(EnvInfo env, double margin)
    : env_(std::move(env)), margin_(margin) {
    if (!(margin_ > 0.0)) throw std::invalid_argument("best-response margin must be > 0");
}

Result<double> BestResponseAgent::decide(const DecisionRequest& request) {
    const auto& obs = request.observation;
    env::NetworkState state{env_.gains, env_.noise_linear, env_.bandwidth_hz,
                            obs.prev_powers_w};
    std::vector<double> floors(state.size(), 0.0);
    floors.at(obs.own_index) = obs.own_floor_bps;
    return margin_ * game::min_given_others(state, floors, obs.own_index);
}

RandomAgent::RandomAgent(std::uint64_t seed) : rng_(seed) {}

Result<double> RandomAgent::decide(const DecisionRequest& request) {
    const double prev = request.observation.prev_powers_w.at(request.observation.own_index);
    const double hi = prev > 0.0 ? 2.0 * prev : 1.0;
    // Fixed 53-bit mapping; std::uniform_real_distribution is not
    // portable across standard libraries.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return u * hi;
}

PromptBundle build_prompts(const game::Observation& observation, const RoleConfig& role) {
    const std::size_t k = role.user_count;
    std::ostringstream preamble;
    preamble << "You are user " << role.own_index + 1 << " of " << k
             << " mobile users transmitting in a shared radio spectrum.\n";
    preamble << "Channel gains: [";
    for (std::size_t i = 0; i < role.env.gains.size(); ++i)
        preamble << (i ? ", " : "") << fixed2(role.env.gains[i]);
    preamble << "]. Noise power: " << fixed2(role.env.noise_linear)
             << " W. Bandwidth: " << fixed2(role.env.bandwidth_hz / 1000.0) << " kHz.\n";
    preamble << "Game rules: the game is played in rounds. In each round every user "
                "simultaneously chooses a transmit power in W, knowing only the powers "
                "all users chose in the previous round. A user's transmission rate is "
                "b*log2(1 + SINR), where SINR is the user's own gain times own power "
                "divided by the noise plus the sum of gain times power over all other "
                "users.\n";
    preamble << "Goal of the base station: reduce total network power by at least "
             << fixed2(observation.goal.delta_p_w) << " W compared to the initial total of "
             << fixed2(observation.initial_total_w) << " W.\n";
    preamble << "Your individual goal: keep your own transmission rate at or above "
             << fixed2(observation.own_floor_bps / 1000.0) << " kbps.";

    std::ostringstream round;
    round << "Round " << observation.round << ". previous round powers: "
          << power_list(observation.prev_powers_w) << ". Your achieved rate was "
          << fixed2(observation.own_rate_bps / 1000.0) << " kbps; your minimum rate is "
          << fixed2(observation.own_floor_bps / 1000.0) << " kbps. ";
    if (k > 1)
        round << "Other users may change their powers this round; their interference "
                 "affects your rate. ";
    round << "Choose your new transmit power for this round. Reply in the form "
             "\"power: <number>\" with the power in W.";

    return {preamble.str(), round.str()};
}

namespace {

struct NumberToken {
    double value;
    std::size_t begin;
    std::size_t end;  // one past the last digit
};

// All decimal tokens in the text, with positions. A sign is taken only
// when not glued to a preceding alphanumeric character ("GPT-4" yields
// 4, not -4).
std::vector<NumberToken> scan_numbers(const std::string& text) {
    std::vector<NumberToken> tokens;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t start = i;
        std::size_t p = i;
        if ((text[p] == '+' || text[p] == '-') &&
            (p == 0 || !std::isalnum(static_cast<unsigned char>(text[p - 1])))) {
            ++p;
        } else if (text[p] == '+' || text[p] == '-') {
            ++i;
            continue;
        }
        std::size_t digits = p;
        while (digits < n && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
        bool has_int = digits > p;
        std::size_t frac = digits;
        if (frac < n && text[frac] == '.') {
            std::size_t d = frac + 1;
            while (d < n && std::isdigit(static_cast<unsigned char>(text[d]))) ++d;
            if (d > frac + 1) frac = d;
        }
        if (!has_int && frac == digits) {
            ++i;
            continue;
        }
        std::size_t end = frac;
        // optional exponent
        if (end < n && (text[end] == 'e' || text[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < n && (text[e] == '+' || text[e] == '-')) ++e;
            std::size_t ed = e;
            while (ed < n && std::isdigit(static_cast<unsigned char>(text[ed]))) ++ed;
            if (ed > e) end = ed;
        }
        const std::string token = text.substr(start, end - start);
        char* parse_end = nullptr;
        const double value = std::strtod(token.c_str(), &parse_end);
        if (parse_end && *parse_end == '\0') tokens.push_back({value, start, end});
        i = end > i ? end : i + 1;
    }
    return tokens;
}

bool unit_is_watt(const std::string& text, std::size_t pos) {
    std::size_t p = pos;
    while (p < text.size() && text[p] == ' ') ++p;
    if (p >= text.size()) return false;
    if (text[p] == 'W' || text[p] == 'w') {
        std::size_t rest = p + 1;
        if (rest + 3 <= text.size()) {
            std::string word = text.substr(p, 4);
            for (auto& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (word == "watt") {
                std::size_t after = p + 4;
                if (after < text.size() && (text[after] == 's' || text[after] == 'S')) ++after;
                return after >= text.size() ||
                       !std::isalnum(static_cast<unsigned char>(text[after]));
            }
        }
        return rest >= text.size() || !std::isalnum(static_cast<unsigned char>(text[rest]));
    }
    return false;
}

// A line consisting of "power: <number>" with an optional W unit and
// trailing punctuation. Backtick fences around or within the line are
// stripped first.
std::optional<double> labeled_power_line(const std::string& line) {
    std::string s;
    s.reserve(line.size());
    for (char c : line)
        if (c != '`') s += c;
    std::size_t p = 0;
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    static const std::string label = "power";
    if (s.size() - p < label.size()) return std::nullopt;
    for (std::size_t j = 0; j < label.size(); ++j)
        if (std::tolower(static_cast<unsigned char>(s[p + j])) != label[j]) return std::nullopt;
    p += label.size();
    while (p < s.size() && s[p] == ' ') ++p;
    if (p >= s.size() || (s[p] != ':' && s[p] != '=')) return std::nullopt;
    ++p;
    const auto tokens = scan_numbers(s.substr(p));
    if (tokens.size() != 1) return std::nullopt;
    // Only whitespace, a W unit, and closing punctuation may follow.
    std::size_t after = p + tokens[0].end;
    std::size_t lead = p + tokens[0].begin;
    for (std::size_t j = p; j < lead; ++j)
        if (!std::isspace(static_cast<unsigned char>(s[j]))) return std::nullopt;
    if (unit_is_watt(s, after)) {
        while (after < s.size() && s[after] == ' ') ++after;
        while (after < s.size() && std::isalpha(static_cast<unsigned char>(s[after]))) ++after;
    }
    for (; after < s.size(); ++after) {
        const char c = s[after];
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '.' && c != ',' && c != '!')
            return std::nullopt;
    }
    return tokens[0].value;
}

}  // namespace

Result<double> parse_power_reply(const std::string& text) {
    std::optional<double> chosen;

    // Rule 1: labeled field on its own line.
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t nl = text.find('\n', line_start);
        const std::string line =
            text.substr(line_start, nl == std::string::npos ? std::string::npos : nl - line_start);
        if (auto v = labeled_power_line(line)) chosen = v;
        if (nl == std::string::npos) break;
        line_start = nl + 1;
    }

    if (!chosen) {
        const auto tokens = scan_numbers(text);
        // Rule 2: last number carrying a W/watt unit.
        for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
            if (unit_is_watt(text, it->end)) {
                chosen = it->value;
                break;
            }
        }
        // Rule 3: last bare number.
        if (!chosen && !tokens.empty()) chosen = tokens.back().value;
    }

    if (!chosen) return Error{"no number found in reply", false};
    if (!std::isfinite(*chosen)) return Error{"power value is not finite", false};
    if (*chosen < 0.0) return Error{"power value is negative", false};
    return *chosen;
}

LlmAgent::LlmAgent(chat::ChatClient& client, RoleConfig role, LlmAgentConfig config)
    : client_(client), role_(std::move(role)), config_(std::move(config)) {
    exchange_.model = config_.model;
    exchange_.temperature = config_.temperature;
    exchange_.max_tokens = config_.max_tokens;
}

Result<double> LlmAgent::decide(const DecisionRequest& request) {
    const auto prompts = build_prompts(request.observation, role_);
    if (config_.stateless) {
        exchange_.messages.clear();
        exchange_.messages.push_back({"system", prompts.system_preamble});
    } else if (exchange_.messages.empty()) {
        exchange_.messages.push_back({"system", prompts.system_preamble});
    }
    exchange_.messages.push_back({"user", prompts.round_message});

    std::string last_error;
    for (int attempt = 0; attempt <= request.retry_budget; ++attempt) {
        auto reply = chat_complete(client_, exchange_, config_.retry);
        if (!reply.ok()) {
            last_error = reply.error().message;
            break;  // transport retries already happened inside chat_complete
        }
        auto parsed = parse_power_reply(reply.value());
        if (parsed.ok()) return parsed.value();
        last_error = parsed.error().message;
        if (attempt < request.retry_budget)
            exchange_.messages.push_back(
                {"user", "Your reply could not be parsed (" + last_error +
                             "). Reply with only a number: your chosen transmit power in W."});
    }

    std::ostringstream transcript;
    for (const auto& m : exchange_.messages) transcript << m.role << ": " << m.content << '\n';
    return Error{"agent decision failed: " + last_error + "\ntranscript:\n" + transcript.str(),
                 false};
}

}  // namespace arena::agents
