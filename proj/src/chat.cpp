#include "arena/chat.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace arena::chat {

namespace {

nlohmann::json request_json(const ChatRequest& request) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : request.messages)
        messages.push_back({{"role", m.role}, {"content", m.content}});
    return {{"model", request.model},
            {"messages", std::move(messages)},
            {"temperature", request.temperature},
            {"max_tokens", request.max_tokens}};
}

}  // namespace

std::string request_fingerprint(const ChatRequest& request) {
    const std::string canonical = request_json(request).dump();
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a 64
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Result<std::string> chat_complete(ChatClient& client, ChatExchange& exchange,
                                  const RetryPolicy& policy) {
    ChatRequest request{exchange.model, exchange.messages, exchange.temperature,
                        exchange.max_tokens};
    exchange.retries_used = 0;
    double delay = policy.base_delay_s;
    Error last{"no attempt made", false};
    for (int attempt = 0; attempt < policy.max_tries; ++attempt) {
        if (attempt > 0) {
            exchange.retries_used = attempt;
            if (delay > 0.0)
                std::this_thread::sleep_for(std::chrono::duration<double>(delay));
            delay *= policy.backoff_factor;
        }
        auto reply = client.complete(request);
        if (reply.ok()) {
            const std::string& text = reply.value();
            if (text.empty()) return Error{"empty assistant reply", false};
            exchange.messages.push_back({"assistant", text});
            exchange.raw_response = text;
            return text;
        }
        last = reply.error();
        if (!last.retryable) return last;
    }
    return Error{"chat transport failed after " + std::to_string(policy.max_tries) +
                     " tries: " + last.message,
                 false};
}

void StubChatClient::push_reply(std::string text) { script_.push_back({true, std::move(text)}); }

void StubChatClient::push_transport_failure(std::string message) {
    script_.push_back({false, std::move(message)});
}

Result<std::string> StubChatClient::complete(const ChatRequest&) {
    ++calls_;
    if (script_.empty()) return Error{"stub script exhausted", false};
    Step step = std::move(script_.front());
    script_.pop_front();
    if (!step.ok) return Error{step.text, true};
    return step.text;
}

Result<FixtureChatClient> FixtureChatClient::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return Error{"cannot open fixture file: " + path, false};
    FixtureChatClient client;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("request_hash") || !j.contains("reply_text"))
            return Error{"malformed fixture record at line " + std::to_string(lineno), false};
        client.entries_.push_back(
            {j["request_hash"].get<std::string>(), j["reply_text"].get<std::string>()});
    }
    return client;
}

Result<std::string> FixtureChatClient::complete(const ChatRequest& request) {
    if (entries_.empty()) return Error{"fixture exhausted", false};
    Entry entry = std::move(entries_.front());
    entries_.pop_front();
    if (entry.request_hash != "*") {
        const std::string live = request_fingerprint(request);
        if (entry.request_hash != live)
            return Error{"fixture request hash mismatch: recorded " + entry.request_hash +
                             ", live " + live,
                         false};
    }
    return entry.reply_text;
}

RecordingChatClient::RecordingChatClient(ChatClient& inner, std::string fixture_path)
    : inner_(inner), fixture_path_(std::move(fixture_path)) {}

Result<std::string> RecordingChatClient::complete(const ChatRequest& request) {
    auto reply = inner_.complete(request);
    if (reply.ok()) {
        std::ofstream out(fixture_path_, std::ios::app);
        out << nlohmann::json{{"request_hash", request_fingerprint(request)},
                              {"reply_text", reply.value()}}
                   .dump()
            << '\n';
    }
    return reply;
}

HttpChatClient::HttpChatClient(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

Result<std::string> HttpChatClient::complete(const ChatRequest& request) {
    httplib::Client http(endpoint_.base_url);
    http.set_connection_timeout(std::chrono::duration<double>(endpoint_.timeout_s));
    http.set_read_timeout(std::chrono::duration<double>(endpoint_.timeout_s));
    httplib::Headers headers;
    if (const char* key = std::getenv(endpoint_.api_key_env.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = http.Post(endpoint_.path, headers, request_json(request).dump(),
                         "application/json");
    if (!res)
        return Error{"transport failure: " + httplib::to_string(res.error()), true};
    if (res->status < 200 || res->status >= 300) {
        std::string excerpt = res->body.substr(0, 200);
        return Error{"chat endpoint returned status " + std::to_string(res->status) + ": " +
                         excerpt,
                     false};
    }
    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded())
        return Error{"chat endpoint returned non-JSON body", false};
    try {
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        return Error{std::string("unexpected chat completion schema: ") + e.what(), false};
    }
}

}  // namespace arena::chat
