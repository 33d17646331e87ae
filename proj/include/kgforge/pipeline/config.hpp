#pragma once
// Pipeline configuration: a flat TOML-style config file plus CLI overrides.
// Every file key has a flag of the same name; flags win.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "kgforge/metrics.hpp"
#include "kgforge/stages/expansion.hpp"
#include "kgforge/stages/populate.hpp"

namespace kgforge {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class BackendMode { Http, Replay, Record };

inline BackendMode backend_mode_from_string(const std::string& s) {
    if (s == "http") return BackendMode::Http;
    if (s == "replay") return BackendMode::Replay;
    if (s == "record") return BackendMode::Record;
    throw ConfigError("unknown backend mode: " + s + " (expected http|replay|record)");
}

struct BackendConfig {
    BackendMode mode = BackendMode::Replay;
    // http / record
    std::string base_url;
    std::string model;
    std::string key_env = "KGFORGE_API_KEY";
    int timeout_s = 120;
    int retries = 3;
    int backoff_base_ms = 1000;
    // replay / record
    std::string fixtures_dir = "fixtures";
};

struct PipelineConfig {
    std::string corpus_path;
    std::string category;
    std::string base_namespace;  // schema terms under <base>schema/, instances under <base>product/
    std::string prompts_dir = "prompts";
    std::string run_dir;
    stages::ExpansionConfig expansion;
    int max_attempts = 3;
    stages::ConformanceMode conformance = stages::ConformanceMode::Lenient;
    BackendConfig backend;
    int max_inflight = 4;
    bool allow_drops = false;
    ReportFormat format = ReportFormat::Text;

    std::string schema_namespace() const { return base_namespace + "schema/"; }
    std::string instance_base() const { return base_namespace + "product/"; }
};

namespace toml {

// Minimal TOML subset: [section] headers, key = value lines where value is a
// double-quoted string (with \" \\ \n \t escapes), integer, float, or
// boolean. Comments start with '#'. Enough for pipeline configs; anything
// fancier is rejected loudly.
inline std::map<std::string, std::string> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);

    std::map<std::string, std::string> values;  // "section.key" or "key" -> raw value
    std::string section;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        if (line[b] == '[') {
            size_t e = line.find(']', b);
            if (e == std::string::npos) fail("unterminated section header");
            section = line.substr(b + 1, e - b - 1);
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        std::string key = line.substr(b, eq - b);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        size_t vb = line.find_first_not_of(" \t", eq + 1);
        if (vb == std::string::npos) fail("missing value for key " + key);

        std::string value;
        if (line[vb] == '"') {
            size_t i = vb + 1;
            while (true) {
                if (i >= line.size()) fail("unterminated string value");
                char c = line[i++];
                if (c == '"') break;
                if (c == '\\') {
                    if (i >= line.size()) fail("truncated escape in string value");
                    char e = line[i++];
                    switch (e) {
                        case 'n': value.push_back('\n'); break;
                        case 't': value.push_back('\t'); break;
                        case '"': value.push_back('"'); break;
                        case '\\': value.push_back('\\'); break;
                        default: fail("unsupported escape in string value");
                    }
                } else {
                    value.push_back(c);
                }
            }
        } else {
            size_t ve = line.find('#', vb);
            value = line.substr(vb, ve == std::string::npos ? std::string::npos : ve - vb);
            while (!value.empty() &&
                   (value.back() == ' ' || value.back() == '\t' || value.back() == '\r')) {
                value.pop_back();
            }
        }
        values[section.empty() ? key : section + "." + key] = value;
    }
    return values;
}

}  // namespace toml

namespace detail {

inline int to_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " must be an integer, got: " + value);
    }
}

inline uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " must be an integer, got: " + value);
    }
}

inline bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("config key " + key + " must be true or false, got: " + value);
}

}  // namespace detail

/// Applies a flat key/value map (from a config file or CLI flags) onto the
/// config. Unknown keys are rejected so typos cannot silently change a run.
inline void apply_config_values(PipelineConfig& cfg,
                                const std::map<std::string, std::string>& values) {
    using detail::to_bool;
    using detail::to_int;
    using detail::to_u64;
    for (const auto& [key, value] : values) {
        if (key == "corpus") cfg.corpus_path = value;
        else if (key == "category") cfg.category = value;
        else if (key == "namespace") cfg.base_namespace = value;
        else if (key == "prompts_dir") cfg.prompts_dir = value;
        else if (key == "run_dir") cfg.run_dir = value;
        else if (key == "max_attempts") cfg.max_attempts = to_int(key, value);
        else if (key == "max_inflight") cfg.max_inflight = to_int(key, value);
        else if (key == "allow_drops") cfg.allow_drops = to_bool(key, value);
        else if (key == "conformance") {
            if (value == "lenient") cfg.conformance = stages::ConformanceMode::Lenient;
            else if (value == "strict") cfg.conformance = stages::ConformanceMode::Strict;
            else throw ConfigError("config key conformance must be lenient or strict");
        } else if (key == "format") {
            if (value == "json") cfg.format = ReportFormat::Json;
            else if (value == "text") cfg.format = ReportFormat::Text;
            else throw ConfigError("config key format must be json or text");
        } else if (key == "expansion.batch_size") cfg.expansion.batch_size = to_int(key, value);
        else if (key == "expansion.sample_budget") cfg.expansion.sample_budget = to_int(key, value);
        else if (key == "expansion.plateau_window") {
            cfg.expansion.plateau_window = to_int(key, value);
        } else if (key == "expansion.plateau_threshold") {
            cfg.expansion.plateau_threshold = to_int(key, value);
        } else if (key == "expansion.seed") cfg.expansion.seed = to_u64(key, value);
        else if (key == "backend.mode") cfg.backend.mode = backend_mode_from_string(value);
        else if (key == "backend.base_url") cfg.backend.base_url = value;
        else if (key == "backend.model") cfg.backend.model = value;
        else if (key == "backend.key_env") cfg.backend.key_env = value;
        else if (key == "backend.timeout_s") cfg.backend.timeout_s = to_int(key, value);
        else if (key == "backend.retries") cfg.backend.retries = to_int(key, value);
        else if (key == "backend.backoff_base_ms") {
            cfg.backend.backoff_base_ms = to_int(key, value);
        } else if (key == "backend.fixtures_dir") cfg.backend.fixtures_dir = value;
        else throw ConfigError("unknown config key: " + key);
    }
}

inline PipelineConfig load_config(const std::string& path) {
    PipelineConfig cfg;
    apply_config_values(cfg, toml::parse_file(path));
    return cfg;
}

/// Invocation-time checks: replay mode needs an existing fixture directory,
/// http/record mode needs the API key env var set.
inline void validate_config(const PipelineConfig& cfg) {
    if (cfg.base_namespace.empty() || !rdf::is_valid_iri(cfg.base_namespace)) {
        throw ConfigError("namespace must be a valid absolute IRI");
    }
    if (cfg.base_namespace.back() != '/' && cfg.base_namespace.back() != '#') {
        throw ConfigError("namespace must end with '/' or '#'");
    }
    if (cfg.run_dir.empty()) throw ConfigError("run_dir is required");
    if (cfg.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");

    if (cfg.backend.mode == BackendMode::Replay || cfg.backend.mode == BackendMode::Record) {
        if (cfg.backend.mode == BackendMode::Replay &&
            !std::filesystem::is_directory(cfg.backend.fixtures_dir)) {
            throw ConfigError("replay backend requires an existing fixtures directory: " +
                              cfg.backend.fixtures_dir);
        }
    }
    if (cfg.backend.mode == BackendMode::Http || cfg.backend.mode == BackendMode::Record) {
        if (cfg.backend.base_url.empty()) throw ConfigError("http backend requires base_url");
        if (cfg.backend.model.empty()) throw ConfigError("http backend requires a model name");
        const char* key = std::getenv(cfg.backend.key_env.c_str());
        if (key == nullptr || *key == '\0') {
            throw ConfigError("http backend requires env var " + cfg.backend.key_env +
                              " to be set");
        }
    }
}

/// Builds the gateway for the configured backend.
inline AgentGateway make_gateway(const PipelineConfig& cfg) {
    std::shared_ptr<AgentBackend> backend;
    switch (cfg.backend.mode) {
        case BackendMode::Replay:
            backend = std::make_shared<ReplayBackend>(FixtureStore{cfg.backend.fixtures_dir});
            break;
        case BackendMode::Http:
        case BackendMode::Record: {
            const char* key = std::getenv(cfg.backend.key_env.c_str());
            HttpOptions options{cfg.backend.base_url,   cfg.backend.model,
                                key ? key : "",         cfg.backend.timeout_s,
                                cfg.backend.retries,    cfg.backend.backoff_base_ms};
            auto http = std::make_shared<HttpBackend>(options);
            if (cfg.backend.mode == BackendMode::Record) {
                backend = std::make_shared<RecordBackend>(http,
                                                          FixtureStore{cfg.backend.fixtures_dir});
            } else {
                backend = http;
            }
            break;
        }
    }
    return AgentGateway(std::move(backend), cfg.max_inflight);
}

}  // namespace kgforge
