#pragma once
// Pulling structured payloads out of raw model responses. Models tend to
// wrap output in fenced code blocks; the rule here is deterministic: first
// matching fence wins, otherwise the whole response is the payload.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge::stages {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace detail

/// Returns the body of the first ``` fence whose info string is one of
/// `tags` (compared case-insensitively; an empty tag matches a bare fence).
inline std::optional<std::string> extract_fenced_block(std::string_view text,
                                                       const std::vector<std::string>& tags) {
    size_t pos = 0;
    while (pos < text.size()) {
        size_t fence = text.find("```", pos);
        if (fence == std::string_view::npos) return std::nullopt;
        size_t info_start = fence + 3;
        size_t line_end = text.find('\n', info_start);
        if (line_end == std::string_view::npos) return std::nullopt;
        std::string info(detail::trim(text.substr(info_start, line_end - info_start)));
        for (char& c : info) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

        size_t body_start = line_end + 1;
        size_t closing = text.find("```", body_start);
        if (closing == std::string_view::npos) return std::nullopt;

        for (const std::string& tag : tags) {
            if (info == tag) return std::string(text.substr(body_start, closing - body_start));
        }
        pos = closing + 3;
    }
    return std::nullopt;
}

/// Turtle payload of a response: the first turtle/ttl/bare fenced block if
/// present, else the whole response.
inline std::string extract_turtle_payload(const std::string& response) {
    if (auto block = extract_fenced_block(response, {"turtle", "ttl", ""})) return *block;
    return response;
}

/// Optional JSON payload (used by the refinement mapping block).
inline std::optional<std::string> extract_json_payload(const std::string& response) {
    return extract_fenced_block(response, {"json"});
}

}  // namespace kgforge::stages
