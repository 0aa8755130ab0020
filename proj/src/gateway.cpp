#include "rarbench/gateway.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rarbench/errors.hpp"
#include "rarbench/io.hpp"
#include "rarbench/sha256.hpp"

namespace rarbench {
namespace {

using nlohmann::json;

class RealClock : public Clock {
public:
    std::chrono::steady_clock::time_point now() override { return std::chrono::steady_clock::now(); }
    void sleep_for(std::chrono::milliseconds d) override { std::this_thread::sleep_for(d); }
};

json request_canonical(const ChatRequest& request) {
    json messages = json::array();
    for (const auto& m : request.messages) {
        messages.push_back({{"content", m.content}, {"role", m.role}});
    }
    json j{{"messages", std::move(messages)},
           {"model", request.model_name},
           {"temperature", request.temperature}};
    if (request.max_tokens) {
        j["max_tokens"] = *request.max_tokens;
    } else {
        j["max_tokens"] = nullptr;
    }
    return j;
}

std::filesystem::path cache_entry_path(const std::filesystem::path& dir, const std::string& key) {
    return dir / (key + ".json");
}

std::atomic<uint64_t> g_tmp_counter{0};

}  // namespace

Clock& real_clock() {
    static RealClock clock;
    return clock;
}

void validate_request(const ChatRequest& request) {
    if (request.model_name.empty()) throw InvalidInputError("request needs a model name");
    if (request.messages.empty()) throw InvalidInputError("request needs at least one message");
    if (request.messages.back().role != "user") throw InvalidInputError("last message must have role user");
    for (const auto& m : request.messages) {
        if (m.role != "system" && m.role != "user" && m.role != "assistant") {
            throw InvalidInputError("unknown message role '" + m.role + "'");
        }
    }
    if (request.temperature < 0) throw InvalidInputError("temperature must be >= 0");
}

std::string cache_key(const ChatRequest& request) {
    return sha256_hex(request_canonical(request).dump());
}

bool is_retryable_status(int status) {
    if (status == 0) return true;  // connection failure / timeout
    if (status == 408 || status == 409 || status == 429) return true;
    return status >= 500 && status <= 599;
}

Gateway::Gateway(Backend& backend, GatewayConfig config, Clock* clock)
    : backend_(backend),
      config_(std::move(config)),
      clock_(clock ? clock : &real_clock()),
      jitter_rng_(0x9e3779b97f4a7c15ull) {}

void Gateway::acquire_slot() {
    std::unique_lock lock(mu_);
    slot_free_.wait(lock, [&] { return in_flight_ < config_.concurrency_limit; });
    ++in_flight_;
}

void Gateway::release_slot() {
    {
        std::lock_guard lock(mu_);
        --in_flight_;
    }
    slot_free_.notify_one();
}

void Gateway::await_rate_window() {
    if (config_.rate_limit_per_minute <= 0) return;
    const auto window = std::chrono::seconds(60);
    while (true) {
        std::chrono::milliseconds wait{0};
        {
            std::lock_guard lock(mu_);
            auto now = clock_->now();
            while (!window_.empty() && now - window_.front() >= window) window_.pop_front();
            if (static_cast<int>(window_.size()) < config_.rate_limit_per_minute) {
                window_.push_back(now);
                dispatches_.push_back(now);
                return;
            }
            wait = std::chrono::duration_cast<std::chrono::milliseconds>(window_.front() + window - now) +
                   std::chrono::milliseconds(1);
        }
        clock_->sleep_for(wait);
    }
}

std::chrono::milliseconds Gateway::backoff_delay(int attempt) {
    double factor = static_cast<double>(1ll << (attempt - 1));
    double base = static_cast<double>(config_.retry.base_delay.count()) * factor;
    double spread;
    {
        std::lock_guard lock(rng_mu_);
        spread = 1.0 - config_.retry.jitter +
                 2.0 * config_.retry.jitter * (static_cast<double>(jitter_rng_.next_below(1000000)) / 1000000.0);
    }
    auto delay = std::chrono::milliseconds(static_cast<long long>(base * spread));
    return std::min(delay, config_.retry.max_delay);
}

ChatResponse Gateway::complete(const ChatRequest& request) {
    validate_request(request);
    const std::string key = cache_key(request);

    if (config_.cache_dir) {
        auto path = cache_entry_path(*config_.cache_dir, key);
        std::error_code ec;
        if (std::filesystem::exists(path, ec)) {
            json entry = json::parse(read_file(path));
            ChatResponse response;
            response.content = entry.at("response").at("content").get<std::string>();
            response.finish_reason = entry.at("response").value("finish_reason", "stop");
            response.cache_hit = true;
            response.attempt_count = 1;
            return response;
        }
    }

    acquire_slot();
    struct SlotGuard {
        Gateway* g;
        ~SlotGuard() { g->release_slot(); }
    } guard{this};

    ChatResponse response;
    int attempt = 0;
    while (true) {
        ++attempt;
        await_rate_window();
        if (config_.rate_limit_per_minute <= 0) {
            std::lock_guard lock(mu_);
            dispatches_.push_back(clock_->now());
        }
        auto started = clock_->now();
        try {
            response = backend_.complete(request);
            response.attempt_count = attempt;
            response.cache_hit = false;
            response.latency_ms = std::chrono::duration<double, std::milli>(clock_->now() - started).count();
            break;
        } catch (const TransportError& e) {
            if (!is_retryable_status(e.status()) || attempt >= config_.retry.max_attempts) throw;
            clock_->sleep_for(backoff_delay(attempt));
        }
    }

    if (config_.cache_dir) {
        std::filesystem::create_directories(*config_.cache_dir);
        json entry{{"request", request_canonical(request)},
                   {"response", {{"content", response.content}, {"finish_reason", response.finish_reason}}}};
        auto path = cache_entry_path(*config_.cache_dir, key);
        // Unique temp name per writer, then rename: concurrent writers of the
        // same key race harmlessly to an identical value.
        std::filesystem::path tmp = path;
        tmp += ".tmp" + std::to_string(g_tmp_counter.fetch_add(1));
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << entry.dump();
        }
        std::filesystem::rename(tmp, path);
    }
    return response;
}

std::vector<std::chrono::steady_clock::time_point> Gateway::dispatch_times() const {
    std::lock_guard lock(mu_);
    return dispatches_;
}

ChatResponse OracleMockBackend::complete(const ChatRequest& request) {
    validate_request(request);
    ChatResponse response;
    response.finish_reason = "stop";
    if (adversarial_) {
        auto wrong = request.opaque_metadata.find("wrong_answer");
        if (wrong != request.opaque_metadata.end() && !wrong->second.empty()) {
            response.content = "The answer is " + wrong->second + ".";
        } else {
            response.content = "The answer is unknown.";
        }
        return response;
    }
    auto gold = request.opaque_metadata.find("gold_answer");
    if (gold == request.opaque_metadata.end() || gold->second.empty()) {
        throw InvalidInputError("oracle mock needs gold_answer in opaque_metadata");
    }
    response.content = "The answer is " + gold->second + ".";
    return response;
}

FixtureBackend FixtureBackend::from_file(const std::filesystem::path& path) {
    FixtureBackend backend;
    for (const auto& rec : read_jsonl(path)) {
        const auto& v = rec.value;
        if (!v.contains("content")) {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) + ": fixture entry needs content");
        }
        std::string content = v.at("content").get<std::string>();
        if (v.contains("prompt")) {
            backend.add_prompt(v.at("prompt").get<std::string>(), content);
        } else if (v.contains("cache_key")) {
            backend.add_cache_key(v.at("cache_key").get<std::string>(), content);
        } else if (v.contains("question_id")) {
            backend.add_question(v.at("question_id").get<std::string>(), v.value("phase", ""), content);
        } else {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) +
                            ": fixture entry needs prompt, cache_key or question_id");
        }
    }
    return backend;
}

void FixtureBackend::add_prompt(const std::string& prompt, const std::string& content) {
    by_prompt_sha_[sha256_hex(prompt)] = content;
}

void FixtureBackend::add_cache_key(const std::string& key, const std::string& content) {
    by_cache_key_[key] = content;
}

void FixtureBackend::add_question(const std::string& question_id, const std::string& phase,
                                  const std::string& content) {
    by_question_[phase.empty() ? question_id : question_id + ":" + phase] = content;
}

ChatResponse FixtureBackend::complete(const ChatRequest& request) {
    validate_request(request);
    const std::string prompt_sha = sha256_hex(request.messages.back().content);
    if (auto it = by_prompt_sha_.find(prompt_sha); it != by_prompt_sha_.end()) {
        return {it->second, "stop", 0.0, false, 1};
    }
    const std::string key = cache_key(request);
    if (auto it = by_cache_key_.find(key); it != by_cache_key_.end()) {
        return {it->second, "stop", 0.0, false, 1};
    }
    std::string qid;
    if (auto meta = request.opaque_metadata.find("question_id"); meta != request.opaque_metadata.end()) {
        qid = meta->second;
        std::string phase;
        if (auto p = request.opaque_metadata.find("phase"); p != request.opaque_metadata.end()) phase = p->second;
        if (!phase.empty()) {
            if (auto it = by_question_.find(qid + ":" + phase); it != by_question_.end()) {
                return {it->second, "stop", 0.0, false, 1};
            }
        }
        if (auto it = by_question_.find(qid); it != by_question_.end()) {
            return {it->second, "stop", 0.0, false, 1};
        }
    }
    throw FixtureMissError("no fixture for prompt_sha256=" + prompt_sha + " cache_key=" + key +
                           (qid.empty() ? "" : " question_id=" + qid));
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    const std::string& url = config_.base_url;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw InvalidInputError("base_url needs a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        host_ = url;
    } else {
        host_ = url.substr(0, path_start);
        path_prefix_ = url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    json body{{"model", request.model_name}, {"temperature", request.temperature}};
    json messages = json::array();
    for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
    body["messages"] = std::move(messages);
    if (request.max_tokens) body["max_tokens"] = *request.max_tokens;

    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout.count(), 0);
    client.set_read_timeout(config_.timeout.count(), 0);
    client.set_write_timeout(config_.timeout.count(), 0);
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

    auto result = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(), "application/json");
    if (!result) {
        throw TransportError("connection to " + host_ + " failed: " + httplib::to_string(result.error()), 0);
    }
    if (result->status == 401 || result->status == 403) {
        throw AuthError("authentication rejected (status " + std::to_string(result->status) + ")");
    }
    if (result->status < 200 || result->status >= 300) {
        throw TransportError("endpoint returned status " + std::to_string(result->status), result->status);
    }
    json reply = json::parse(result->body, nullptr, false);
    if (reply.is_discarded()) throw ProtocolError("endpoint reply is not JSON");
    try {
        const auto& choice = reply.at("choices").at(0);
        ChatResponse response;
        response.content = choice.at("message").at("content").get<std::string>();
        response.finish_reason = choice.value("finish_reason", "stop");
        return response;
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("endpoint reply missing choices[0].message.content: ") + e.what());
    }
}

}  // namespace rarbench
