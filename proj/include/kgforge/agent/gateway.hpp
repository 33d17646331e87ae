#pragma once
// LLM gateway: request digests, the HTTP chat-completions backend, and the
// deterministic record/replay fixture store that makes every stage testable
// offline.

#include <charconv>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "kgforge/agent/sha256.hpp"

namespace kgforge {

struct AgentParams {
    double temperature = 0.0;
    int max_output_tokens = 4096;

    friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

namespace detail {

// Shortest round-trip decimal form, stable across platforms.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace detail

struct AgentRequest {
    std::string template_id;
    std::string rendered_prompt;
    AgentParams params;

    // SHA-256 over the fields joined with unit separators; a pure function
    // of the request, stable across runs and platforms.
    std::string digest() const {
        std::string canonical;
        canonical.reserve(template_id.size() + rendered_prompt.size() + 32);
        canonical += template_id;
        canonical += '\x1f';
        canonical += rendered_prompt;
        canonical += '\x1f';
        canonical += detail::format_double(params.temperature);
        canonical += '\x1f';
        canonical += std::to_string(params.max_output_tokens);
        return sha256_hex(canonical);
    }

    friend bool operator==(const AgentRequest&, const AgentRequest&) = default;
};

enum class BackendKind { Http, Replay };

struct AgentResponse {
    std::string text;  // raw model output, no post-processing
    BackendKind backend = BackendKind::Http;
    std::optional<double> latency_ms;
};

struct HttpError : std::runtime_error {
    int status;
    std::string body;
    HttpError(int status_, std::string body_)
        : std::runtime_error("agent HTTP error (status " + std::to_string(status_) + "): " + body_),
          status(status_),
          body(std::move(body_)) {}
};

struct TimeoutError : std::runtime_error {
    explicit TimeoutError(const std::string& msg) : std::runtime_error("agent timeout: " + msg) {}
};

struct MissingFixture : std::runtime_error {
    std::string digest;
    explicit MissingFixture(std::string digest_)
        : std::runtime_error("no recorded fixture for digest " + digest_),
          digest(std::move(digest_)) {}
};

// One JSON file per digest under <dir>/agents/. Writes are atomic
// (write-temp-then-rename); reads are lock-free.
class FixtureStore {
public:
    explicit FixtureStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const std::string& digest) const {
        return dir_ / "agents" / (digest + ".json");
    }

    std::optional<std::string> load_response_text(const std::string& digest) const {
        std::ifstream in(path_for(digest), std::ios::binary);
        if (!in) return std::nullopt;
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.contains("response") || !j["response"].contains("text")) {
            throw std::runtime_error("corrupt fixture file: " + path_for(digest).string());
        }
        return j["response"]["text"].get<std::string>();
    }

    void save(const AgentRequest& req, const AgentResponse& resp) const {
        std::string digest = req.digest();
        nlohmann::ordered_json j;
        j["digest"] = digest;
        j["request"] = {{"template_id", req.template_id},
                        {"rendered_prompt", req.rendered_prompt},
                        {"params",
                         {{"temperature", req.params.temperature},
                          {"max_output_tokens", req.params.max_output_tokens}}}};
        j["response"] = {{"text", resp.text}};

        std::filesystem::path target = path_for(digest);
        std::filesystem::create_directories(target.parent_path());
        std::filesystem::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write fixture: " + tmp.string());
            out << j.dump(2) << "\n";
        }
        std::filesystem::rename(tmp, target);
    }

private:
    std::filesystem::path dir_;
};

class AgentBackend {
public:
    virtual ~AgentBackend() = default;
    virtual AgentResponse invoke(const AgentRequest& req) = 0;
};

struct HttpOptions {
    std::string base_url;  // e.g. http://localhost:8080/v1
    std::string model;
    std::string api_key;
    int timeout_s = 120;
    int retries = 3;           // additional attempts after the first
    int backoff_base_ms = 1000;
};

// Declared here, defined after the httplib include below.
class HttpBackend;

class ReplayBackend final : public AgentBackend {
public:
    explicit ReplayBackend(FixtureStore store) : store_(std::move(store)) {}

    AgentResponse invoke(const AgentRequest& req) override {
        std::string digest = req.digest();
        auto text = store_.load_response_text(digest);
        if (!text) throw MissingFixture(digest);
        return AgentResponse{std::move(*text), BackendKind::Replay, std::nullopt};
    }

private:
    FixtureStore store_;
};

// Wraps any live backend and persists each exchange before returning it.
class RecordBackend final : public AgentBackend {
public:
    RecordBackend(std::shared_ptr<AgentBackend> inner, FixtureStore store)
        : inner_(std::move(inner)), store_(std::move(store)) {}

    AgentResponse invoke(const AgentRequest& req) override {
        AgentResponse resp = inner_->invoke(req);
        store_.save(req, resp);
        return resp;
    }

private:
    std::shared_ptr<AgentBackend> inner_;
    FixtureStore store_;
};

namespace detail {

// Bounds in-flight requests without a compile-time capacity.
class Semaphore {
public:
    explicit Semaphore(int count) : count_(count) {}
    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return count_ > 0; });
        --count_;
    }
    void release() {
        {
            std::lock_guard lock(mutex_);
            ++count_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int count_;
};

}  // namespace detail

// Shareable front door: limits concurrent backend calls to max_inflight and
// never mutates requests.
class AgentGateway {
public:
    AgentGateway(std::shared_ptr<AgentBackend> backend, int max_inflight = 4)
        : backend_(std::move(backend)), semaphore_(max_inflight < 1 ? 1 : max_inflight) {}

    AgentResponse invoke(const AgentRequest& req) {
        semaphore_.acquire();
        struct Release {
            detail::Semaphore& s;
            ~Release() { s.release(); }
        } release{semaphore_};
        return backend_->invoke(req);
    }

private:
    std::shared_ptr<AgentBackend> backend_;
    detail::Semaphore semaphore_;
};

}  // namespace kgforge

// httplib pulls in sockets and threads; keep it at the bottom so the rest of
// the header stays cheap to scan.
#include <httplib.h>

namespace kgforge {

class HttpBackend final : public AgentBackend {
public:
    explicit HttpBackend(HttpOptions options) : options_(std::move(options)) {
        split_base_url(options_.base_url, host_, path_prefix_);
    }

    AgentResponse invoke(const AgentRequest& req) override {
        nlohmann::json body = {
            {"model", options_.model},
            {"messages", nlohmann::json::array({nlohmann::json{
                             {"role", "user"}, {"content", req.rendered_prompt}}})},
            {"temperature", req.params.temperature},
            {"max_tokens", req.params.max_output_tokens},
        };
        const std::string payload = body.dump();

        int attempts = options_.retries + 1;
        int last_status = 0;
        std::string last_body;
        for (int attempt = 0; attempt < attempts; ++attempt) {
            if (attempt > 0) {
                int delay = options_.backoff_base_ms << (attempt - 1);
                std::this_thread::sleep_for(std::chrono::milliseconds(delay));
            }
            auto start = std::chrono::steady_clock::now();

            httplib::Client client(host_);
            client.set_connection_timeout(options_.timeout_s, 0);
            client.set_read_timeout(options_.timeout_s, 0);
            client.set_write_timeout(options_.timeout_s, 0);
            httplib::Headers headers;
            if (!options_.api_key.empty()) {
                headers.emplace("Authorization", "Bearer " + options_.api_key);
            }
            auto res = client.Post(path_prefix_ + "/chat/completions", headers, payload,
                                   "application/json");
            if (!res) {
                auto err = res.error();
                if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
                    err == httplib::Error::Write) {
                    throw TimeoutError("no response within " + std::to_string(options_.timeout_s) +
                                       "s from " + options_.base_url);
                }
                last_status = 0;
                last_body = httplib::to_string(err);
                continue;
            }
            if (res->status < 200 || res->status >= 300) {
                last_status = res->status;
                last_body = res->body;
                continue;
            }
            double latency = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            return AgentResponse{extract_text(res->body), BackendKind::Http, latency};
        }
        throw HttpError(last_status, last_body);
    }

private:
    static void split_base_url(const std::string& base_url, std::string& host,
                               std::string& path_prefix) {
        size_t scheme = base_url.find("://");
        size_t path_start =
            scheme == std::string::npos ? base_url.find('/') : base_url.find('/', scheme + 3);
        if (path_start == std::string::npos) {
            host = base_url;
            path_prefix.clear();
        } else {
            host = base_url.substr(0, path_start);
            path_prefix = base_url.substr(path_start);
            while (!path_prefix.empty() && path_prefix.back() == '/') path_prefix.pop_back();
        }
    }

    static std::string extract_text(const std::string& body) {
        nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.contains("choices") || !j["choices"].is_array() ||
            j["choices"].empty() || !j["choices"][0].contains("message") ||
            !j["choices"][0]["message"].contains("content")) {
            throw HttpError(200, "unexpected chat-completions response shape: " + body);
        }
        return j["choices"][0]["message"]["content"].get<std::string>();
    }

    HttpOptions options_;
    std::string host_;
    std::string path_prefix_;
};

}  // namespace kgforge
