#pragma once

// JSON renderings of library reports. Key order is fixed so equal reports
// serialize to equal bytes.

#include <cstdint>
#include <optional>
#include <string>

#include "indax/model/enumerate.hpp"
#include "indax/model/io.hpp"
#include "indax/scott/scott.hpp"
#include "indax/setfam/family.hpp"
#include "indax/setfam/io.hpp"
#include "indax/transforms/report.hpp"
#include "indax/transforms/theory.hpp"
#include "indax/verify/checks.hpp"

namespace indax::cli {

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

inline std::string hex64(std::uint64_t h) {
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
    return out;
}

/// The s-expression string, or a size and digest stub when the text is
/// longer than `cap_text` characters.
inline json sentence_to_json(const Sentence& s, std::size_t cap_text) {
    const auto n = sexpr_length(s);
    if (n <= cap_text) return to_sexpr(s);
    return {{"omitted", "text longer than the cap"}, {"chars", n}, {"digest", hex64(sentence_digest(s))}};
}

inline json theory_to_json(const Theory& t, std::size_t cap_text) {
    json out = json::array();
    for (const auto& s : t.sentences()) out.push_back(sentence_to_json(s, cap_text));
    return out;
}

inline bool fits(const Theory& t, std::size_t cap_text) {
    for (const auto& s : t.sentences()) {
        if (sexpr_length(s) > cap_text) return false;
    }
    return true;
}

inline std::string scope_note(verify::Subject s, int bound) {
    if (s == verify::Subject::family) return "exact over a universe of " + std::to_string(bound) + " elements";
    return "bounded: certified over structures of size <= " + std::to_string(bound) + " only";
}

/// `space` resolves model indices to structures; families cite elements.
inline json verification_to_json(const verify::VerificationReport& r, const ModelSpace* space = nullptr) {
    json certs = json::array();
    for (const auto& c : r.certificates) {
        json j = {{"condition", c.condition}, {"index", optional_json(c.index)}, {"holds", c.holds}};
        if (r.subject == verify::Subject::family) {
            j["element"] = optional_json(c.element);
        } else {
            j["model"] = c.model && space ? structure_to_json((*space)[*c.model]) : json(nullptr);
        }
        certs.push_back(std::move(j));
    }
    return {{"subject", verify::to_string(r.subject)},
            {"bound", r.bound},
            {"scope", scope_note(r.subject, r.bound)},
            {"pass", r.pass},
            {"certificates", std::move(certs)}};
}

inline json scott_to_json(const ScottReport& r, int materialize_cap, std::size_t cap_text) {
    return {{"height", r.height},
            {"sentence_level", r.sentence_level},
            {"digest", r.invariant.hex_digest()},
            {"materialize_cap", materialize_cap},
            {"sentence", r.sentence ? sentence_to_json(*r.sentence, cap_text) : json(nullptr)},
            {"structure", structure_to_json(r.structure)}};
}

inline json transform_to_json(const TransformReport& r, const ModelSpace& space, std::size_t cap_text) {
    json witnesses = json::array();
    for (const auto& w : r.independence_witnesses) witnesses.push_back(w ? structure_to_json(*w) : json(nullptr));
    return {{"method", to_string(r.method)},
            {"bound", r.bound},
            {"input", theory_to_json(r.input, cap_text)},
            {"output", theory_to_json(r.output, cap_text)},
            {"output_labels", r.output.labels()},
            {"verified", r.verified()},
            {"equivalence", verification_to_json(r.equivalence, &space)},
            {"independence", verification_to_json(r.independence, &space)},
            {"witnesses", std::move(witnesses)},
            {"notes", r.notes}};
}

inline json partition_check_to_json(const PartitionCheck& c, const ModelSpace& space) {
    return {{"valid", c.valid},
            {"condition", c.condition},
            {"index", optional_json(c.index)},
            {"model", c.model ? structure_to_json(space[*c.model]) : json(nullptr)}};
}

inline json subsets_to_json(const std::vector<Subset>& sets) {
    json out = json::array();
    for (const auto& s : sets) out.push_back(indices(s));
    return out;
}

}  // namespace indax::cli
