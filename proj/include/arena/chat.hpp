#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "arena/common.hpp"

namespace arena::chat {

struct Message {
    std::string role;  // system | user | assistant
    std::string content;
};

struct ChatRequest {
    std::string model;
    std::vector<Message> messages;
    double temperature = 0.0;
    int max_tokens = 256;
};

/// One agent's conversation: the ordered message list plus sampling
/// parameters, carried across rounds.
struct ChatExchange {
    std::string model;
    double temperature = 0.0;
    int max_tokens = 256;
    std::vector<Message> messages;
    std::string raw_response;
    int retries_used = 0;
};

struct RetryPolicy {
    int max_tries = 3;
    double base_delay_s = 1.0;
    double backoff_factor = 2.0;
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    /// One completion attempt; no retry at this layer. A transport-level
    /// failure is returned with retryable=true, a protocol failure
    /// (non-2xx, bad body) with retryable=false.
    virtual Result<std::string> complete(const ChatRequest& request) = 0;
};

/// Stable 64-bit FNV-1a digest of the canonical request serialization;
/// keys fixture entries across platforms.
std::string request_fingerprint(const ChatRequest& request);

/// Sends the exchange, retrying transport errors with exponential
/// backoff. On success appends the assistant reply to the exchange and
/// records the retry count.
Result<std::string> chat_complete(ChatClient& client, ChatExchange& exchange,
                                  const RetryPolicy& policy = {});

/// Test double: scripted sequence of replies and injected failures.
class StubChatClient : public ChatClient {
public:
    void push_reply(std::string text);
    void push_transport_failure(std::string message);
    Result<std::string> complete(const ChatRequest& request) override;
    int calls() const { return calls_; }

private:
    struct Step {
        bool ok;
        std::string text;
    };
    std::deque<Step> script_;
    int calls_ = 0;
};

/// Replays a captured transcript: newline-delimited JSON, one object per
/// exchange {"request_hash": "...", "reply_text": "..."}. Entries are
/// consumed in order; a hash of "*" matches any request, otherwise it
/// must equal the live request's fingerprint.
class FixtureChatClient : public ChatClient {
public:
    static Result<FixtureChatClient> load(const std::string& path);
    Result<std::string> complete(const ChatRequest& request) override;

private:
    struct Entry {
        std::string request_hash;
        std::string reply_text;
    };
    std::deque<Entry> entries_;
};

/// Wraps another client and appends {request_hash, reply_text} records
/// to a fixture file as completions succeed.
class RecordingChatClient : public ChatClient {
public:
    RecordingChatClient(ChatClient& inner, std::string fixture_path);
    Result<std::string> complete(const ChatRequest& request) override;

private:
    ChatClient& inner_;
    std::string fixture_path_;
};

struct HttpEndpoint {
    std::string base_url;  // e.g. https://api.openai.com
    std::string path = "/v1/chat/completions";
    std::string api_key_env = "INTENT_ARENA_API_KEY";
    double timeout_s = 30.0;
};

/// OpenAI-style chat-completion transport over HTTP(S). Bearer token is
/// read from the environment variable named in the endpoint config.
class HttpChatClient : public ChatClient {
public:
    explicit HttpChatClient(HttpEndpoint endpoint);
    Result<std::string> complete(const ChatRequest& request) override;

private:
    HttpEndpoint endpoint_;
};

}  // namespace arena::chat
