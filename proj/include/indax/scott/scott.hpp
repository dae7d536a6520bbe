#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/space.hpp"
#include "indax/scott/partition.hpp"
#include "indax/scott/type_formula.hpp"

namespace indax {

/// Least δ at which the type partition of M's own tuples stops refining.
inline int scott_height(const Structure& m) { return TypePartition({m}).stabilization_level(); }

/// Level at which the Scott sentence is materialized. α(M)+2 alone does not
/// separate M from larger or smaller structures when extensions add one
/// element at a time, so the depth is raised to |M|+1 when that is larger.
inline int scott_sentence_level(const Structure& m, int height) { return std::max(height + 2, m.size() + 1); }

inline int scott_sentence_level(const Structure& m) { return scott_sentence_level(m, scott_height(m)); }

constexpr int kDefaultMaterializeCap = 4;

/// φ^{∅,M}_L for the level L above. For every finite N, N satisfies it iff N ≅ M.
inline Sentence scott_sentence(const Structure& m, int materialize_cap = kDefaultMaterializeCap) {
    if (m.size() > materialize_cap) {
        throw CapExceeded("Scott sentence materialization refused: size " + std::to_string(m.size()) + " exceeds cap " +
                          std::to_string(materialize_cap));
    }
    TypeFormulaBuilder builder(m);
    return builder.formula({}, scott_sentence_level(m));
}

/// Isomorphism-complete token for finite structures: the size together with
/// the canonically numbered class signature tables of every refinement level.
class CanonicalInvariant {
public:
    CanonicalInvariant() = default;
    explicit CanonicalInvariant(std::vector<int> encoding) : encoding_(std::move(encoding)) {}

    const std::vector<int>& encoding() const { return encoding_; }

    /// FNV-1a over the encoding; for display, equality uses the full encoding.
    std::uint64_t digest() const {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : encoding_) {
            auto u = static_cast<std::uint32_t>(v);
            for (int i = 0; i < 4; ++i) {
                h ^= (u >> (8 * i)) & 0xffu;
                h *= 1099511628211ull;
            }
        }
        return h;
    }

    std::string hex_digest() const {
        static const char* digits = "0123456789abcdef";
        std::string s(16, '0');
        auto d = digest();
        for (int i = 15; i >= 0; --i, d >>= 4) s[static_cast<std::size_t>(i)] = digits[d & 0xf];
        return s;
    }

    friend auto operator<=>(const CanonicalInvariant&, const CanonicalInvariant&) = default;

private:
    std::vector<int> encoding_;
};

inline CanonicalInvariant canonical_invariant(const TypePartition& self) {
    const auto& m = self.structures().at(0);
    std::vector<int> enc{m.size(), self.stored_levels()};
    for (int level = 0; level < self.stored_levels(); ++level) {
        const auto& table = self.stored_signatures(level);
        enc.push_back(static_cast<int>(table.size()));
        for (const auto& sig : table) {
            enc.push_back(static_cast<int>(sig.size()));
            enc.insert(enc.end(), sig.begin(), sig.end());
        }
    }
    return CanonicalInvariant(std::move(enc));
}

inline CanonicalInvariant canonical_invariant(const Structure& m) { return canonical_invariant(TypePartition({m})); }

struct ScottReport {
    Structure structure;
    int height = 0;
    int sentence_level = 0;
    std::optional<Sentence> sentence;
    CanonicalInvariant invariant;
};

inline ScottReport scott_report(const Structure& m, int materialize_cap = kDefaultMaterializeCap) {
    TypePartition self({m});
    ScottReport r{m, self.stabilization_level(), 0, std::nullopt, canonical_invariant(self)};
    r.sentence_level = scott_sentence_level(m, r.height);
    if (m.size() <= materialize_cap) {
        TypeFormulaBuilder builder(m);
        r.sentence = builder.formula({}, r.sentence_level);
    }
    return r;
}

/// Ψ_α(φ) and Φ_α(φ) over a bounded space: level-α classes (in the joint
/// partition of φ's models) of all repetition-free tuples, and of empty tuples.
struct AlphaTypes {
    int level = 0;
    std::set<TypeId> psi;
    std::set<TypeId> phi;
    std::vector<std::size_t> models;
};

inline AlphaTypes alpha_types_of(const TypePartition& joint, std::vector<std::size_t> models, int alpha) {
    if (alpha < 0) throw PreconditionError("alpha must be >= 0");
    AlphaTypes out;
    out.level = alpha;
    out.models = std::move(models);
    for (std::size_t s = 0; s < joint.structures().size(); ++s) {
        for (std::size_t k = 0; k < joint.tuple_count(s); ++k) {
            auto id = joint.class_at(s, k, alpha);
            out.psi.insert(id);
            if (k == 0) out.phi.insert(id);
        }
    }
    return out;
}

inline AlphaTypes alpha_types_of(const Sentence& phi, int alpha, SpaceEvaluator& ev) {
    auto models = indices(ev.truth(phi));
    std::vector<Structure> ms;
    for (auto k : models) ms.push_back(ev.space()[k]);
    return alpha_types_of(TypePartition(std::move(ms)), std::move(models), alpha);
}

inline AlphaTypes alpha_types_of(const Sentence& phi, int alpha, const ModelSpace& space) {
    SpaceEvaluator ev(space);
    return alpha_types_of(phi, alpha, ev);
}

}  // namespace indax
