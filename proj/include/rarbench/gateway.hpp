#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rarbench/rng.hpp"

namespace rarbench {

struct ChatMessage {
    std::string role;  // system | user | assistant
    std::string content;
};

struct ChatRequest {
    std::string model_name;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    std::optional<int> max_tokens;
    // Ignored by network backends; mocks may read it. Never part of the cache key.
    std::map<std::string, std::string> opaque_metadata;
};

struct ChatResponse {
    std::string content;
    std::string finish_reason;
    double latency_ms = 0.0;
    bool cache_hit = false;
    int attempt_count = 1;
};

// Messages nonempty, last role "user", temperature >= 0; throws InvalidInputError.
void validate_request(const ChatRequest& request);

// 64-hex digest over the canonical serialization of
// (model_name, messages, temperature, max_tokens).
std::string cache_key(const ChatRequest& request);

// Injectable time source so backoff and rate-limit behavior is testable
// without wall-clock sleeps.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::steady_clock::time_point now() = 0;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

Clock& real_clock();

class Backend {
public:
    virtual ~Backend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
    virtual std::string name() const = 0;
};

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{1000};  // doubles per attempt
    double jitter = 0.2;                         // +-20%
    std::chrono::milliseconds max_delay{60000};
};

bool is_retryable_status(int status);

struct GatewayConfig {
    RetryPolicy retry;
    int rate_limit_per_minute = 0;  // 0 disables
    int concurrency_limit = 4;
    std::optional<std::filesystem::path> cache_dir;
};

// Thread-safe front door: response cache, bounded in-flight dispatch,
// sliding-window rate limit, and retry with exponential backoff + jitter.
class Gateway {
public:
    Gateway(Backend& backend, GatewayConfig config, Clock* clock = nullptr);

    ChatResponse complete(const ChatRequest& request);

    // Dispatch instants (clock time) of every network/backend call; cache hits
    // do not dispatch.
    std::vector<std::chrono::steady_clock::time_point> dispatch_times() const;

private:
    void acquire_slot();
    void release_slot();
    void await_rate_window();
    std::chrono::milliseconds backoff_delay(int attempt);

    Backend& backend_;
    GatewayConfig config_;
    Clock* clock_;

    mutable std::mutex mu_;
    std::condition_variable slot_free_;
    int in_flight_ = 0;
    std::deque<std::chrono::steady_clock::time_point> window_;
    std::vector<std::chrono::steady_clock::time_point> dispatches_;

    std::mutex rng_mu_;
    Rng jitter_rng_;
};

// Deterministic test backend: answers with the instance's gold answer carried
// in opaque_metadata (or a wrong one, in adversarial mode).
class OracleMockBackend : public Backend {
public:
    explicit OracleMockBackend(bool adversarial = false) : adversarial_(adversarial) {}
    ChatResponse complete(const ChatRequest& request) override;
    std::string name() const override { return adversarial_ ? "adversarial_mock" : "oracle_mock"; }

private:
    bool adversarial_;
};

// Replays canned transcripts, keyed by exact prompt text, cache key, or
// question id (+ optional phase).
class FixtureBackend : public Backend {
public:
    static FixtureBackend from_file(const std::filesystem::path& path);

    void add_prompt(const std::string& prompt, const std::string& content);
    void add_cache_key(const std::string& key, const std::string& content);
    void add_question(const std::string& question_id, const std::string& phase, const std::string& content);

    ChatResponse complete(const ChatRequest& request) override;
    std::string name() const override { return "fixture_mock"; }

private:
    std::map<std::string, std::string> by_prompt_sha_;
    std::map<std::string, std::string> by_cache_key_;
    std::map<std::string, std::string> by_question_;
};

struct HttpBackendConfig {
    std::string base_url;  // e.g. http://127.0.0.1:8080/v1
    std::string api_key;   // sent as a bearer token when nonempty
    std::chrono::seconds timeout{120};
};

// POSTs {base_url}/chat/completions with the OpenAI-compatible body shape and
// reads choices[0].message.content.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpBackendConfig config);
    ChatResponse complete(const ChatRequest& request) override;
    std::string name() const override { return "http"; }

private:
    HttpBackendConfig config_;
    std::string host_;         // scheme://host[:port]
    std::string path_prefix_;  // e.g. /v1
};

}  // namespace rarbench
