#pragma once
// Prompt templates with {{name}} placeholders, loaded from a prompts
// directory (one .txt file per stage).

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgforge {

struct PromptTemplate {
    std::string id;    // bootstrap | expand | refine | populate
    std::string body;  // text with {{name}} placeholders
};

using TemplateSet = std::map<std::string, PromptTemplate>;

inline const std::vector<std::string>& stage_template_ids() {
    static const std::vector<std::string> ids = {"bootstrap", "expand", "refine", "populate"};
    return ids;
}

struct MissingVariable : std::runtime_error {
    std::string name;
    explicit MissingVariable(std::string name_)
        : std::runtime_error("prompt variable not provided: " + name_), name(std::move(name_)) {}
};

struct TemplateError : std::runtime_error {
    explicit TemplateError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Substitutes every {{name}} placeholder from `vars` in a single pass;
/// values are inserted verbatim and not re-scanned. Unknown vars are
/// ignored; their names are reported through `unused_out` when given.
inline std::string render_prompt(const PromptTemplate& tpl,
                                 const std::map<std::string, std::string>& vars,
                                 std::vector<std::string>* unused_out = nullptr) {
    std::string out;
    out.reserve(tpl.body.size());
    std::set<std::string> used;

    size_t pos = 0;
    while (pos < tpl.body.size()) {
        size_t open = tpl.body.find("{{", pos);
        if (open == std::string::npos) {
            out.append(tpl.body, pos, std::string::npos);
            break;
        }
        out.append(tpl.body, pos, open - pos);

        size_t name_start = open + 2;
        size_t name_end = name_start;
        while (name_end < tpl.body.size() &&
               (std::isalnum(static_cast<unsigned char>(tpl.body[name_end])) ||
                tpl.body[name_end] == '_')) {
            ++name_end;
        }
        if (name_end > name_start && tpl.body.compare(name_end, 2, "}}") == 0) {
            std::string name = tpl.body.substr(name_start, name_end - name_start);
            auto it = vars.find(name);
            if (it == vars.end()) throw MissingVariable(name);
            out += it->second;
            used.insert(name);
            pos = name_end + 2;
        } else {
            out += "{{";
            pos = open + 2;
        }
    }

    if (unused_out) {
        for (const auto& [name, value] : vars) {
            if (!used.count(name)) unused_out->push_back(name);
        }
    }
    return out;
}

/// Loads prompts/<id>.txt for every stage id. Missing files fail with the
/// full path so misconfigured runs are easy to diagnose.
inline TemplateSet load_templates(const std::filesystem::path& dir) {
    TemplateSet set;
    for (const std::string& id : stage_template_ids()) {
        std::filesystem::path file = dir / (id + ".txt");
        std::ifstream in(file, std::ios::binary);
        if (!in) throw TemplateError("missing prompt template: " + file.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        set[id] = PromptTemplate{id, buf.str()};
    }
    return set;
}

inline const PromptTemplate& get_template(const TemplateSet& set, const std::string& id) {
    auto it = set.find(id);
    if (it == set.end()) throw TemplateError("no such prompt template: " + id);
    return it->second;
}

}  // namespace kgforge
