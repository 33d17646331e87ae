#pragma once
// Product corpus: JSON Lines ingestion and deterministic category-aware
// sampling. The corpus is immutable after load.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kgforge {

struct ProductRecord {
    std::string id;
    std::string category;
    std::string description;
    std::string source;  // optional provenance

    friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

struct IngestError : std::runtime_error {
    int line;
    std::string reason;

    IngestError(int line_, std::string reason_)
        : std::runtime_error("corpus line " + std::to_string(line_) + ": " + reason_),
          line(line_),
          reason(std::move(reason_)) {}
};

struct UnknownCategory : std::runtime_error {
    explicit UnknownCategory(const std::string& category)
        : std::runtime_error("unknown category: " + category) {}
};

class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<ProductRecord> records) : records_(std::move(records)) {
        for (size_t i = 0; i < records_.size(); ++i) {
            categories_[records_[i].category].push_back(i);
        }
    }

    const std::vector<ProductRecord>& records() const { return records_; }
    size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    bool has_category(const std::string& category) const {
        return categories_.count(category) > 0;
    }
    size_t category_size(const std::string& category) const {
        auto it = categories_.find(category);
        return it == categories_.end() ? 0 : it->second.size();
    }
    // Record indices in ingestion order.
    const std::vector<size_t>& category_indices(const std::string& category) const {
        static const std::vector<size_t> none;
        auto it = categories_.find(category);
        return it == categories_.end() ? none : it->second;
    }
    std::vector<std::string> categories() const {
        std::vector<std::string> out;
        out.reserve(categories_.size());
        for (const auto& [name, idx] : categories_) out.push_back(name);
        return out;
    }

    friend bool operator==(const Corpus& a, const Corpus& b) { return a.records_ == b.records_; }

private:
    std::vector<ProductRecord> records_;
    std::map<std::string, std::vector<size_t>> categories_;
};

namespace detail {

inline bool is_blank_line(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

inline std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parses one JSONL line into a record. Required keys: id, category,
/// description (all strings); optional: source. Extra keys are ignored.
inline ProductRecord parse_corpus_line(const std::string& line, int line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw IngestError(line_no, "expected a JSON object");
    ProductRecord rec;
    for (const char* key : {"id", "category", "description"}) {
        if (!j.contains(key)) throw IngestError(line_no, std::string("missing field: ") + key);
        if (!j[key].is_string()) {
            throw IngestError(line_no, std::string("field must be a string: ") + key);
        }
    }
    rec.id = j["id"].get<std::string>();
    rec.category = j["category"].get<std::string>();
    rec.description = j["description"].get<std::string>();
    if (j.contains("source")) {
        if (!j["source"].is_string()) throw IngestError(line_no, "field must be a string: source");
        rec.source = j["source"].get<std::string>();
    }
    if (rec.id.empty()) throw IngestError(line_no, "id must be non-empty");
    if (detail::trimmed(rec.description).empty()) {
        throw IngestError(line_no, "description must be non-empty");
    }
    return rec;
}

/// Loads a JSONL corpus. Blank lines are skipped; any malformed line,
/// missing field or duplicate id rejects the load with its 1-based line
/// number.
inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    std::vector<ProductRecord> records;
    std::map<std::string, int> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank_line(line)) continue;
        ProductRecord rec = parse_corpus_line(line, line_no);
        auto [it, inserted] = seen_ids.emplace(rec.id, line_no);
        if (!inserted) {
            throw IngestError(line_no, "duplicate id \"" + rec.id + "\" (first seen at line " +
                                           std::to_string(it->second) + ")");
        }
        records.push_back(std::move(rec));
    }
    return Corpus(std::move(records));
}

/// Seeded sample without replacement from one category. Implemented as a
/// Fisher-Yates permutation of the category's records, so for a fixed seed
/// a smaller sample is always a prefix of a larger one.
inline std::vector<ProductRecord> sample_products(const Corpus& c, const std::string& category,
                                                  size_t n, uint64_t seed) {
    if (c.empty()) return {};
    if (!c.has_category(category)) throw UnknownCategory(category);

    std::vector<size_t> indices = c.category_indices(category);
    std::mt19937_64 rng(seed);
    for (size_t i = indices.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng() % i);
        std::swap(indices[i - 1], indices[j]);
    }

    size_t take = std::min(n, indices.size());
    std::vector<ProductRecord> out;
    out.reserve(take);
    for (size_t k = 0; k < take; ++k) out.push_back(c.records()[indices[k]]);
    return out;
}

}  // namespace kgforge
