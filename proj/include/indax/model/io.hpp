#pragma once

// JSON file formats:
//   structure: {"signature":[{"name":"R","arity":2}],"size":3,"relations":{"R":[[0,1],[1,2],[2,0]]}}
//   theory:    ["(exists x (atom P x))", ...]

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "indax/error.hpp"
#include "indax/model/sentence.hpp"
#include "indax/model/sexpr.hpp"
#include "indax/model/structure.hpp"

namespace indax {

using json = nlohmann::ordered_json;

inline json signature_to_json(const Signature& sig) {
    json out = json::array();
    for (const auto& r : sig.relations()) out.push_back({{"name", r.name}, {"arity", r.arity}});
    return out;
}

inline Signature signature_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("signature must be an array", 1, 1);
    std::vector<RelationSymbol> rels;
    for (const auto& r : j) {
        if (!r.is_object() || !r.contains("name") || !r.contains("arity") || !r["name"].is_string() ||
            !r["arity"].is_number_integer()) {
            throw ParseError("signature entries need string 'name' and integer 'arity'", 1, 1);
        }
        rels.push_back({r["name"].get<std::string>(), r["arity"].get<int>()});
    }
    try {
        return Signature(std::move(rels));
    } catch (const InvalidStructure& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

inline json structure_to_json(const Structure& m) {
    json rels = json::object();
    for (std::size_t r = 0; r < m.signature().size(); ++r) {
        json tuples = json::array();
        for (const auto& t : m.tuples(r)) tuples.push_back(t);
        rels[m.signature()[r].name] = std::move(tuples);
    }
    return {{"signature", signature_to_json(m.signature())}, {"size", m.size()}, {"relations", std::move(rels)}};
}

inline Structure structure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("signature") || !j.contains("size")) {
        throw ParseError("structure needs 'signature' and 'size'", 1, 1);
    }
    Signature sig = signature_from_json(j["signature"]);
    if (!j["size"].is_number_integer()) throw ParseError("'size' must be an integer", 1, 1);
    const int size = j["size"].get<int>();
    std::vector<std::vector<Tuple>> tables(sig.size());
    if (j.contains("relations")) {
        const auto& rels = j["relations"];
        if (!rels.is_object()) throw ParseError("'relations' must be an object", 1, 1);
        for (auto it = rels.begin(); it != rels.end(); ++it) {
            auto idx = sig.index_of(it.key());
            if (!idx) throw ParseError("relation '" + it.key() + "' not in signature", 1, 1);
            if (!it.value().is_array()) throw ParseError("relation table must be an array", 1, 1);
            for (const auto& t : it.value()) {
                if (!t.is_array()) throw ParseError("tuples must be arrays", 1, 1);
                Tuple tuple;
                for (const auto& e : t) {
                    if (!e.is_number_integer()) throw ParseError("tuple entries must be integers", 1, 1);
                    tuple.push_back(e.get<int>());
                }
                tables[*idx].push_back(std::move(tuple));
            }
        }
    }
    try {
        return Structure(std::move(sig), size, tables);
    } catch (const InvalidStructure& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

inline json theory_to_json(const Theory& t) {
    json out = json::array();
    for (const auto& s : t.sentences()) out.push_back(to_sexpr(s));
    return out;
}

inline Theory theory_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("theory must be a JSON array of sentence strings", 1, 1);
    Theory t;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw ParseError("theory entry " + std::to_string(i) + " is not a string", 1, 1);
        try {
            t.add(parse_sentence(j[i].get<std::string>()), "input[" + std::to_string(i) + "]");
        } catch (const ParseError& e) {
            throw ParseError("sentence " + std::to_string(i) + ": " + e.message(), e.line(), e.column());
        }
    }
    return t;
}

/// Relations used by a set of sentences, in order of first appearance.
inline Signature infer_signature(const std::vector<Sentence>& sentences) {
    std::vector<RelationSymbol> rels;
    auto visit = [&](auto&& self, const Sentence& s) -> void {
        if (s.kind() == NodeKind::Atom) {
            const int arity = static_cast<int>(s.vars().size());
            bool seen = false;
            for (const auto& r : rels) {
                if (r.name == s.name()) {
                    if (r.arity != arity) throw MalformedSentence("relation '" + s.name() + "' used with two arities");
                    seen = true;
                }
            }
            if (!seen) rels.push_back({s.name(), arity});
        }
        for (const auto& c : s.children()) self(self, c);
    };
    for (const auto& s : sentences) visit(visit, s);
    return Signature(std::move(rels));
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

}  // namespace indax
