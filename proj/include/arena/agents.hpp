#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arena/chat.hpp"
#include "arena/common.hpp"
#include "arena/game.hpp"

namespace arena::agents {

/// Static environment parameters every player is told up front. Gains,
/// noise and bandwidth are time-invariant within a game.
struct EnvInfo {
    std::vector<double> gains;
    double noise_linear = 0.0;
    double bandwidth_hz = 0.0;
};

struct DecisionRequest {
    game::Observation observation;
    int retry_budget = 2;
    double timeout_s = 30.0;
};

/// Uniform decision contract over scripted and LLM-backed players:
/// observation in, power choice out. Scripted agents are pure functions
/// of (observation, seed).
class Agent {
public:
    virtual ~Agent() = default;
    virtual Result<double> decide(const DecisionRequest& request) = 0;
    virtual std::string kind() const = 0;
};

/// Keeps transmitting at the previous round's own power.
class HoldAgent : public Agent {
public:
    Result<double> decide(const DecisionRequest& request) override;
    std::string kind() const override { return "hold"; }
};

/// Exact single-user inversion against the previous round's interference,
/// scaled by a margin (1.0 = sit exactly on the floor).
class BestResponseAgent : public Agent {
public:
    BestResponseAgent(EnvInfo env, double margin = 1.0);
    Result<double> decide(const DecisionRequest& request) override;
    std::string kind() const override { return "best_response"; }
    double margin() const { return margin_; }

private:
    EnvInfo env_;
    double margin_;
};

/// Uniform draw in [0, 2 x previous own power] ([0, 1] W when the
/// previous power was zero). The generator is mt19937_64 with the upper
/// 53 bits mapped to [0,1); the mapping is fixed here so decisions are
/// reproducible across platforms.
class RandomAgent : public Agent {
public:
    explicit RandomAgent(std::uint64_t seed);
    Result<double> decide(const DecisionRequest& request) override;
    std::string kind() const override { return "random"; }

private:
    std::mt19937_64 rng_;
};

struct PromptBundle {
    std::string system_preamble;
    std::string round_message;
};

struct RoleConfig {
    EnvInfo env;
    std::size_t user_count = 0;
    std::size_t own_index = 0;
};

inline constexpr const char* kPromptTemplateVersion = "v1";

/// Deterministic prompt text from the versioned template: game
/// description, rules, base-station goal and the player's own goal in
/// the preamble; previous-round powers and the power request in the
/// round message. W and kbps are rendered with two decimals.
PromptBundle build_prompts(const game::Observation& observation, const RoleConfig& role);

/// Extraction cascade over a free-text reply:
///   1. a line (or fenced line) of the form "power: <number>"
///   2. the last number followed by a W/watt unit
///   3. the last bare number
/// The result must be finite and >= 0; anything else is a typed failure.
/// Never throws, whatever the input bytes.
Result<double> parse_power_reply(const std::string& text);

struct LlmAgentConfig {
    std::string model = "gpt-4";
    double temperature = 0.0;
    int max_tokens = 256;
    bool stateless = false;  // resend only preamble + latest round
    chat::RetryPolicy retry;
};

/// Plays through a chat-completion client: one private conversation per
/// agent, replayed across rounds unless stateless. Unparseable replies
/// trigger a corrective "reply with only a number" follow-up within the
/// request's retry budget.
class LlmAgent : public Agent {
public:
    LlmAgent(chat::ChatClient& client, RoleConfig role, LlmAgentConfig config);
    Result<double> decide(const DecisionRequest& request) override;
    std::string kind() const override { return "llm"; }
    const chat::ChatExchange& exchange() const { return exchange_; }

private:
    chat::ChatClient& client_;
    RoleConfig role_;
    LlmAgentConfig config_;
    chat::ChatExchange exchange_;
};

}  // namespace arena::agents
