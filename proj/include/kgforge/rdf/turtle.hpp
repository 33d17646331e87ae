#pragma once
// Turtle subset parser and deterministic serializer.
//
// Supported syntax: @prefix, absolute <IRI> references, prefixed names, the
// `a` keyword, predicate lists (";"), object lists (","), labeled blank nodes
// (_:x), string literals (single/double, short/long quoted) with language
// tags or ^^ datatypes, and bare integer/decimal/boolean tokens. Anonymous
// blank-node property lists, collections, @base and relative IRIs are
// rejected. The exact grammar is documented in docs/turtle-subset.md.
//
// Errors reject the whole document: no partial graphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/rdf/graph.hpp"
#include "kgforge/rdf/term.hpp"
#include "kgforge/rdf/vocab.hpp"

namespace kgforge::rdf {

struct SyntaxError : std::runtime_error {
    int line;
    int column;
    std::string message;

    SyntaxError(int line_, int column_, std::string message_)
        : std::runtime_error("turtle syntax error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + message_),
          line(line_),
          column(column_),
          message(std::move(message_)) {}
};

namespace detail {

enum class TokenKind {
    IriRef,       // <...>, text = raw IRI
    PrefixedName, // text = resolved full IRI
    BlankNode,    // text = label
    String,       // text = unescaped value
    LangTag,      // text = tag
    DatatypeSep,  // ^^
    KeywordA,
    PrefixDecl,   // @prefix
    Integer,      // text = lexical form
    Decimal,
    Boolean,
    Dot,
    Semicolon,
    Comma,
    PrefixLabel,  // label: in a @prefix declaration, text = label
    End,
};

struct Token {
    TokenKind kind;
    std::string text;
    int line = 1;
    int column = 1;
};

class TurtleParser {
public:
    explicit TurtleParser(std::string_view text) : text_(text) {}

    Graph parse() {
        Graph g;
        skip_ws();
        while (!at_end()) {
            if (peek() == '@') {
                parse_prefix_decl(g);
            } else {
                parse_triples(g);
            }
            skip_ws();
        }
        return g;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    std::map<std::string, std::string> prefixes_;

    [[noreturn]] void fail(int line, int column, const std::string& msg) const {
        throw SyntaxError(line, column, msg);
    }
    [[noreturn]] void fail_here(const std::string& msg) const { fail(line_, column_, msg); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
    static bool is_local_start(char c) { return is_alpha(c) || c == '_'; }
    static bool is_local_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-'; }

    // --- token scanners -------------------------------------------------

    Token scan_iriref() {
        int line = line_, col = column_;
        advance();  // '<'
        std::string iri;
        while (true) {
            if (at_end()) fail(line, col, "unterminated IRI reference");
            char c = advance();
            if (c == '>') break;
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '"') {
                fail(line, col, "invalid character in IRI reference");
            }
            iri.push_back(c);
        }
        if (!is_valid_iri(iri)) {
            fail(line, col, "IRI must be absolute (relative IRIs are not supported): <" + iri + ">");
        }
        return {TokenKind::IriRef, std::move(iri), line, col};
    }

    Token scan_blank_node() {
        int line = line_, col = column_;
        advance();  // '_'
        if (peek() != ':') fail(line, col, "expected ':' after '_' in blank node label");
        advance();
        std::string label;
        while (!at_end() && (is_alpha(peek()) || is_digit(peek()) || peek() == '_')) {
            label.push_back(advance());
        }
        if (label.empty()) fail(line, col, "empty blank node label");
        return {TokenKind::BlankNode, std::move(label), line, col};
    }

    void append_utf8(std::string& out, uint32_t cp, int line, int col) {
        if (cp <= 0x7F) {
            out.push_back(static_cast<char>(cp));
        } else if (cp <= 0x7FF) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp <= 0xFFFF) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp <= 0x10FFFF) {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            fail(line, col, "invalid unicode escape");
        }
    }

    uint32_t scan_hex(int count, int line, int col) {
        uint32_t value = 0;
        for (int i = 0; i < count; ++i) {
            if (at_end()) fail(line, col, "truncated unicode escape");
            char c = advance();
            value <<= 4;
            if (c >= '0' && c <= '9') value |= static_cast<uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') value |= static_cast<uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') value |= static_cast<uint32_t>(c - 'A' + 10);
            else fail(line, col, "invalid hex digit in unicode escape");
        }
        return value;
    }

    Token scan_string() {
        int line = line_, col = column_;
        char quote = advance();
        bool long_form = false;
        if (peek() == quote && peek(1) == quote) {
            advance();
            advance();
            long_form = true;
        } else if (peek() == quote) {
            // empty short string
            advance();
            return {TokenKind::String, "", line, col};
        }
        std::string value;
        while (true) {
            if (at_end()) fail(line, col, "unterminated string literal");
            char c = peek();
            if (c == quote) {
                if (!long_form) {
                    advance();
                    break;
                }
                if (peek(1) == quote && peek(2) == quote) {
                    advance();
                    advance();
                    advance();
                    break;
                }
                value.push_back(advance());
                continue;
            }
            if (!long_form && (c == '\n' || c == '\r')) {
                fail(line, col, "newline in single-line string literal");
            }
            if (c == '\\') {
                int eline = line_, ecol = column_;
                advance();
                if (at_end()) fail(eline, ecol, "truncated escape sequence");
                char e = advance();
                switch (e) {
                    case 't': value.push_back('\t'); break;
                    case 'b': value.push_back('\b'); break;
                    case 'n': value.push_back('\n'); break;
                    case 'r': value.push_back('\r'); break;
                    case 'f': value.push_back('\f'); break;
                    case '"': value.push_back('"'); break;
                    case '\'': value.push_back('\''); break;
                    case '\\': value.push_back('\\'); break;
                    case 'u': append_utf8(value, scan_hex(4, eline, ecol), eline, ecol); break;
                    case 'U': append_utf8(value, scan_hex(8, eline, ecol), eline, ecol); break;
                    default: fail(eline, ecol, std::string("unknown escape sequence '\\") + e + "'");
                }
                continue;
            }
            value.push_back(advance());
        }
        return {TokenKind::String, std::move(value), line, col};
    }

    Token scan_number() {
        int line = line_, col = column_;
        std::string lex;
        if (peek() == '+' || peek() == '-') lex.push_back(advance());
        bool int_digits = false;
        while (is_digit(peek())) {
            lex.push_back(advance());
            int_digits = true;
        }
        // "42." terminates a statement: the dot is only part of the number
        // when digits follow it.
        if (peek() == '.' && is_digit(peek(1))) {
            lex.push_back(advance());
            while (is_digit(peek())) lex.push_back(advance());
            if (peek() == 'e' || peek() == 'E') {
                fail(line, col, "exponent notation is not in the supported subset");
            }
            return {TokenKind::Decimal, std::move(lex), line, col};
        }
        if (!int_digits) fail(line, col, "malformed numeric literal");
        if (peek() == 'e' || peek() == 'E') {
            fail(line, col, "exponent notation is not in the supported subset");
        }
        return {TokenKind::Integer, std::move(lex), line, col};
    }

    // A bare word is a prefixed name when a ':' follows, otherwise one of the
    // keywords `a`, `true`, `false`.
    Token scan_word() {
        int line = line_, col = column_;
        std::string word;
        while (!at_end() && is_local_char(peek())) word.push_back(advance());
        if (peek() == ':') {
            advance();
            std::string local;
            if (is_local_start(peek())) {
                local.push_back(advance());
                while (!at_end() && is_local_char(peek())) local.push_back(advance());
            } else if (is_local_char(peek())) {
                fail(line, col, "local name must start with a letter or '_'");
            }
            auto it = prefixes_.find(word);
            if (it == prefixes_.end()) {
                fail(line, col, "undefined prefix '" + word + ":'");
            }
            return {TokenKind::PrefixedName, it->second + local, line, col};
        }
        if (word == "a") return {TokenKind::KeywordA, "a", line, col};
        if (word == "true" || word == "false") return {TokenKind::Boolean, word, line, col};
        fail(line, col, "unexpected token '" + word + "'");
    }

    Token scan_at_word() {
        int line = line_, col = column_;
        advance();  // '@'
        std::string word;
        while (!at_end() && (is_alpha(peek()) || is_digit(peek()) || peek() == '-')) {
            word.push_back(advance());
        }
        if (word == "prefix") return {TokenKind::PrefixDecl, word, line, col};
        if (word == "base") fail(line, col, "@base is not in the supported subset");
        if (is_valid_language_tag(word)) return {TokenKind::LangTag, word, line, col};
        fail(line, col, "malformed language tag '@" + word + "'");
    }

    Token next_token() {
        skip_ws();
        if (at_end()) return {TokenKind::End, "", line_, column_};
        int line = line_, col = column_;
        char c = peek();
        switch (c) {
            case '<': return scan_iriref();
            case '_': return scan_blank_node();
            case '"':
            case '\'': return scan_string();
            case '@': return scan_at_word();
            case '.':
                if (is_digit(peek(1))) return scan_number();
                advance();
                return {TokenKind::Dot, ".", line, col};
            case ';': advance(); return {TokenKind::Semicolon, ";", line, col};
            case ',': advance(); return {TokenKind::Comma, ",", line, col};
            case '[': fail(line, col, "anonymous blank node property lists are not in the supported subset");
            case '(': fail(line, col, "collections are not in the supported subset");
            case '^':
                advance();
                if (peek() != '^') fail(line, col, "expected '^^'");
                advance();
                return {TokenKind::DatatypeSep, "^^", line, col};
            default: break;
        }
        if (c == '+' || c == '-' || is_digit(c) || (c == '.' && is_digit(peek(1)))) {
            return scan_number();
        }
        if (is_local_char(c)) return scan_word();
        if (c == ':') {
            // default (empty) prefix
            return scan_word();
        }
        fail(line, col, std::string("unexpected character '") + c + "'");
    }

    // --- grammar productions ---------------------------------------------

    void parse_prefix_decl(Graph& g) {
        Token at = next_token();
        if (at.kind != TokenKind::PrefixDecl) {
            fail(at.line, at.column, "expected @prefix declaration");
        }
        skip_ws();
        int lline = line_, lcol = column_;
        std::string label;
        while (!at_end() && is_local_char(peek())) label.push_back(advance());
        if (peek() != ':') fail(lline, lcol, "expected prefix label ending in ':'");
        advance();
        skip_ws();
        if (peek() != '<') fail_here("expected namespace IRI after prefix label");
        Token ns = scan_iriref();
        Token dot = next_token();
        if (dot.kind != TokenKind::Dot) {
            fail(dot.line, dot.column, "expected '.' after @prefix declaration");
        }
        prefixes_[label] = ns.text;
        g.set_prefix(label, ns.text);
    }

    Term token_to_subject(const Token& t) {
        switch (t.kind) {
            case TokenKind::IriRef:
            case TokenKind::PrefixedName: return Iri{t.text};
            case TokenKind::BlankNode: return BlankNode{t.text};
            default: fail(t.line, t.column, "expected subject (IRI, prefixed name, or blank node)");
        }
    }

    Iri token_to_predicate(const Token& t) {
        switch (t.kind) {
            case TokenKind::KeywordA: return Iri{vocab::rdf_type};
            case TokenKind::IriRef:
            case TokenKind::PrefixedName: return Iri{t.text};
            default: fail(t.line, t.column, "expected predicate (IRI, prefixed name, or 'a')");
        }
    }

    // Object may be followed by ^^datatype or a language tag when it is a
    // string literal.
    Term parse_object(Token t) {
        switch (t.kind) {
            case TokenKind::IriRef:
            case TokenKind::PrefixedName: return Iri{t.text};
            case TokenKind::BlankNode: return BlankNode{t.text};
            case TokenKind::Integer: return Literal::typed(t.text, Iri{vocab::xsd_integer});
            case TokenKind::Decimal: return Literal::typed(t.text, Iri{vocab::xsd_decimal});
            case TokenKind::Boolean: return Literal::typed(t.text, Iri{vocab::xsd_boolean});
            case TokenKind::String: break;
            default: fail(t.line, t.column, "expected object (IRI, blank node, or literal)");
        }
        // Peek for ^^ or @lang.
        size_t save_pos = pos_;
        int save_line = line_, save_col = column_;
        Token follow = next_token();
        if (follow.kind == TokenKind::DatatypeSep) {
            Token dt = next_token();
            if (dt.kind != TokenKind::IriRef && dt.kind != TokenKind::PrefixedName) {
                fail(dt.line, dt.column, "expected datatype IRI after '^^'");
            }
            return Literal::typed(t.text, Iri{dt.text});
        }
        if (follow.kind == TokenKind::LangTag) {
            return Literal::lang_tagged(t.text, follow.text);
        }
        pos_ = save_pos;
        line_ = save_line;
        column_ = save_col;
        return Literal::plain(t.text);
    }

    void parse_triples(Graph& g) {
        Token subj_tok = next_token();
        if (subj_tok.kind == TokenKind::End) return;
        Term subject = token_to_subject(subj_tok);

        bool expect_predicate = true;
        while (expect_predicate) {
            Token pred_tok = next_token();
            if (pred_tok.kind == TokenKind::Dot) break;  // trailing ';' before '.'
            Iri predicate = token_to_predicate(pred_tok);

            bool expect_object = true;
            while (expect_object) {
                Term object = parse_object(next_token());
                g.insert(subject, predicate, object);
                Token sep = next_token();
                switch (sep.kind) {
                    case TokenKind::Comma: break;  // next object, same predicate
                    case TokenKind::Semicolon: expect_object = false; break;
                    case TokenKind::Dot:
                        expect_object = false;
                        expect_predicate = false;
                        break;
                    default:
                        fail(sep.line, sep.column,
                             "expected ',', ';' or '.' after object");
                }
            }
        }
    }
};

// --- serializer helpers ---------------------------------------------------

inline bool is_bare_integer(std::string_view lex) {
    size_t i = (lex.starts_with('+') || lex.starts_with('-')) ? 1 : 0;
    if (i >= lex.size()) return false;
    for (; i < lex.size(); ++i) {
        if (lex[i] < '0' || lex[i] > '9') return false;
    }
    return true;
}

inline bool is_bare_decimal(std::string_view lex) {
    size_t i = (lex.starts_with('+') || lex.starts_with('-')) ? 1 : 0;
    size_t dot = lex.find('.', i);
    if (dot == std::string_view::npos || dot + 1 >= lex.size()) return false;
    for (size_t k = i; k < lex.size(); ++k) {
        if (k == dot) continue;
        if (lex[k] < '0' || lex[k] > '9') return false;
    }
    return true;
}

inline bool is_valid_pname_local(std::string_view local) {
    if (local.empty()) return true;  // "ex:" is a valid prefixed name
    char c0 = local.front();
    bool start_ok = (c0 >= 'A' && c0 <= 'Z') || (c0 >= 'a' && c0 <= 'z') || c0 == '_';
    if (!start_ok) return false;
    for (char c : local) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-';
        if (!ok) return false;
    }
    return true;
}

inline std::string escape_literal(std::string_view raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    for (char c : raw) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    static const char* hex = "0123456789ABCDEF";
                    out += "\\u00";
                    out.push_back(hex[(c >> 4) & 0xF]);
                    out.push_back(hex[c & 0xF]);
                } else {
                    out.push_back(c);
                }
        }
    }
    return out;
}

namespace detail2 {

// Longest-namespace match wins; ties go to the lexically smallest label.
inline std::optional<std::string> prefixed_form(
    const std::string& iri, const std::map<std::string, std::string>& prefixes) {
    const std::string* best_label = nullptr;
    size_t best_len = 0;
    for (const auto& [label, ns] : prefixes) {
        if (ns.size() > 0 && iri.starts_with(ns) && ns.size() >= best_len) {
            std::string_view local(iri.data() + ns.size(), iri.size() - ns.size());
            if (!is_valid_pname_local(local)) continue;
            if (ns.size() > best_len || best_label == nullptr) {
                best_label = &label;
                best_len = ns.size();
            }
        }
    }
    if (!best_label) return std::nullopt;
    return *best_label + ":" + iri.substr(best_len);
}

inline std::string render_iri(const std::string& iri,
                              const std::map<std::string, std::string>& prefixes) {
    if (auto p = prefixed_form(iri, prefixes)) return *p;
    return "<" + iri + ">";
}

inline std::string render_term(const Term& t, const std::map<std::string, std::string>& prefixes) {
    if (is_iri(t)) return render_iri(as_iri(t).value, prefixes);
    if (is_blank(t)) return "_:" + as_blank(t).label;
    const Literal& lit = as_literal(t);
    if (!lit.language.empty()) {
        return "\"" + escape_literal(lit.lexical) + "\"@" + lit.language;
    }
    const std::string& dt = lit.datatype.value;
    if (dt == vocab::xsd_integer && is_bare_integer(lit.lexical)) return lit.lexical;
    if (dt == vocab::xsd_decimal && is_bare_decimal(lit.lexical)) return lit.lexical;
    if (dt == vocab::xsd_boolean && (lit.lexical == "true" || lit.lexical == "false")) {
        return lit.lexical;
    }
    std::string quoted = "\"" + escape_literal(lit.lexical) + "\"";
    if (dt == vocab::xsd_string) return quoted;
    return quoted + "^^" + render_iri(dt, prefixes);
}

inline std::string render_predicate(const Iri& p,
                                    const std::map<std::string, std::string>& prefixes) {
    if (p.value == vocab::rdf_type) return "a";
    return render_iri(p.value, prefixes);
}

}  // namespace detail2

}  // namespace detail

/// Parses a Turtle document into a Graph. Throws SyntaxError on the first
/// token or structure outside the supported subset; no partial graphs.
inline Graph parse_turtle(std::string_view text) {
    detail::TurtleParser parser(text);
    return parser.parse();
}

/// Deterministic serialization: prefix declarations sorted by label, then
/// subject blocks sorted by rendered subject, predicates sorted within each
/// subject and objects within each predicate. Output re-parses to an equal
/// graph.
inline std::string serialize_turtle(const Graph& g) {
    using namespace detail::detail2;
    std::string out;
    for (const auto& [label, ns] : g.prefixes()) {
        out += "@prefix " + label + ": <" + ns + "> .\n";
    }

    // subject -> predicate -> objects, keyed by rendered form
    std::map<std::string, std::map<std::string, std::vector<std::string>>> blocks;
    for (const auto& t : g.triples()) {
        std::string s = render_term(t.subject, g.prefixes());
        std::string p = render_predicate(t.predicate, g.prefixes());
        std::string o = render_term(t.object, g.prefixes());
        blocks[s][p].push_back(o);
    }

    bool first_block = out.empty();
    for (auto& [subject, preds] : blocks) {
        if (!first_block) out += "\n";
        first_block = false;
        out += subject;
        bool first_pred = true;
        for (auto& [pred, objects] : preds) {
            if (!first_pred) out += " ;\n    ";
            else out += " ";
            first_pred = false;
            std::sort(objects.begin(), objects.end());
            out += pred + " ";
            for (size_t i = 0; i < objects.size(); ++i) {
                if (i > 0) out += ", ";
                out += objects[i];
            }
        }
        out += " .\n";
    }
    return out;
}

}  // namespace kgforge::rdf
