#pragma once

// S-expression text form of sentences:
//   (and s...) (or s...) (not s) (exists x s) (forall x s) (atom R x y...) (eq x y)

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/sentence.hpp"

namespace indax {

namespace detail {

class SexprParser {
public:
    explicit SexprParser(std::string_view text) : text_(text) {}

    Sentence parse_all() {
        skip_ws();
        Sentence s = parse_sentence();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input after sentence");
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what, line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    static bool ident_char(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';';
    }

    std::string identifier(const char* role) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail(std::string("expected ") + role);
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool at_close() {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ')';
    }

    Sentence parse_sentence() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] != '(') fail("expected '('");
        ++pos_;
        std::size_t head_pos = pos_;
        std::string head = identifier("connective");
        Sentence out = Sentence::truth();
        if (head == "and" || head == "or") {
            std::vector<Sentence> kids;
            while (!at_close()) {
                if (pos_ >= text_.size()) fail("unexpected end of input");
                kids.push_back(parse_sentence());
            }
            out = head == "and" ? Sentence::conj(std::move(kids)) : Sentence::disj(std::move(kids));
        } else if (head == "not") {
            out = Sentence::negate(parse_sentence());
        } else if (head == "exists" || head == "forall") {
            std::string var = identifier("variable");
            Sentence body = parse_sentence();
            out = head == "exists" ? Sentence::exists(std::move(var), std::move(body))
                                   : Sentence::forall(std::move(var), std::move(body));
        } else if (head == "atom") {
            std::string rel = identifier("relation name");
            std::vector<std::string> args;
            while (!at_close()) {
                if (pos_ >= text_.size()) fail("unexpected end of input");
                args.push_back(identifier("variable"));
            }
            if (args.empty()) fail("atom needs at least one argument");
            out = Sentence::atom(std::move(rel), std::move(args));
        } else if (head == "eq") {
            std::string x = identifier("variable");
            std::string y = identifier("variable");
            out = Sentence::eq(std::move(x), std::move(y));
        } else {
            fail_at("unknown connective '" + head + "'", head_pos);
        }
        expect(')');
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline void write_sexpr(const Sentence& s, std::string& out) {
    switch (s.kind()) {
        case NodeKind::Atom:
            out += "(atom ";
            out += s.name();
            for (const auto& v : s.vars()) {
                out += ' ';
                out += v;
            }
            out += ')';
            return;
        case NodeKind::Eq:
            out += "(eq ";
            out += s.vars()[0];
            out += ' ';
            out += s.vars()[1];
            out += ')';
            return;
        case NodeKind::Not:
            out += "(not ";
            write_sexpr(s.children()[0], out);
            out += ')';
            return;
        case NodeKind::And:
        case NodeKind::Or:
            out += s.kind() == NodeKind::And ? "(and" : "(or";
            for (const auto& c : s.children()) {
                out += ' ';
                write_sexpr(c, out);
            }
            out += ')';
            return;
        case NodeKind::Exists:
        case NodeKind::Forall:
            out += s.kind() == NodeKind::Exists ? "(exists " : "(forall ";
            out += s.name();
            out += ' ';
            write_sexpr(s.children()[0], out);
            out += ')';
            return;
    }
}

}  // namespace detail

/// Parses one sentence; throws ParseError with line:column on failure.
inline Sentence parse_sentence(std::string_view text) { return detail::SexprParser(text).parse_all(); }

inline std::string to_sexpr(const Sentence& s) {
    std::string out;
    detail::write_sexpr(s, out);
    return out;
}

/// Text length and digest of sentences, cached per node across calls.
class SexprMetrics {
public:
    /// to_sexpr(s).size(), without rendering.
    std::size_t length(const Sentence& s) { return entry(s).length; }

    /// FNV-1a over the formula tree; equal formulas get equal digests.
    std::uint64_t digest(const Sentence& s) { return entry(s).digest; }

private:
    struct Entry {
        // Keeps the node alive so its address stays a valid key.
        Sentence pin;
        std::size_t length;
        std::uint64_t digest;
    };

    static std::uint64_t mix(std::uint64_t h, std::string_view bytes) {
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    const Entry& entry(const Sentence& x) {
        if (auto it = cache_.find(x.node()); it != cache_.end()) return it->second;
        std::size_t n = 0;
        std::uint64_t h = 1469598103934665603ull;
        const char kind = static_cast<char>('0' + static_cast<int>(x.kind()));
        h = mix(h, std::string_view(&kind, 1));
        h = mix(h, x.name());
        for (const auto& v : x.vars()) h = mix(mix(h, " "), v);
        switch (x.kind()) {
            case NodeKind::Atom:
                n = 7 + x.name().size();
                for (const auto& v : x.vars()) n += 1 + v.size();
                break;
            case NodeKind::Eq:
                n = 6 + x.vars()[0].size() + x.vars()[1].size();
                break;
            case NodeKind::Not:
                n = 5;
                break;
            case NodeKind::And:
                n = 4;
                break;
            case NodeKind::Or:
                n = 3;
                break;
            case NodeKind::Exists:
            case NodeKind::Forall:
                n = 9 + x.name().size();
                break;
        }
        for (const auto& c : x.children()) {
            const auto& e = entry(c);
            const bool junction = x.kind() == NodeKind::And || x.kind() == NodeKind::Or;
            n += e.length + (junction ? 1 : 0);
            std::uint64_t d = e.digest;
            char bytes[8];
            for (int i = 0; i < 8; ++i, d >>= 8) bytes[i] = static_cast<char>(d & 0xff);
            h = mix(h, std::string_view(bytes, 8));
        }
        if (x.kind() == NodeKind::Not || x.kind() == NodeKind::And || x.kind() == NodeKind::Or ||
            x.kind() == NodeKind::Exists || x.kind() == NodeKind::Forall) {
            n += 1;
        }
        return cache_.emplace(x.node(), Entry{x, n, h}).first->second;
    }

    std::unordered_map<const SentenceNode*, Entry> cache_;
};

inline std::size_t sexpr_length(const Sentence& s) { return SexprMetrics().length(s); }

inline std::uint64_t sentence_digest(const Sentence& s) { return SexprMetrics().digest(s); }

}  // namespace indax
