#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/structure.hpp"

namespace indax {

/// Class of a repetition-free tuple at one refinement level. Class indices are
/// dense per level and ordered by the class signature, so they do not depend
/// on element labels.
struct TypeId {
    int level = 0;
    int class_index = 0;

    friend auto operator<=>(const TypeId&, const TypeId&) = default;
};

/// Equality pattern of a tuple plus the type of its distinct elements.
/// pattern[i] is the position of entry i among the distinct entries, in order
/// of first occurrence.
struct TupleType {
    std::vector<int> pattern;
    TypeId type;

    friend bool operator==(const TupleType&, const TupleType&) = default;
};

/// Splits a tuple into its equality pattern and its distinct entries.
inline std::pair<std::vector<int>, Tuple> reduce_tuple(std::span<const int> tuple) {
    std::vector<int> pattern;
    Tuple distinct;
    for (int e : tuple) {
        auto it = std::find(distinct.begin(), distinct.end(), e);
        if (it == distinct.end()) {
            pattern.push_back(static_cast<int>(distinct.size()));
            distinct.push_back(e);
        } else {
            pattern.push_back(static_cast<int>(it - distinct.begin()));
        }
    }
    return {std::move(pattern), std::move(distinct)};
}

/// Back-and-forth type classes of all (structure, tuple) pairs, computed jointly.
///
/// Only repetition-free tuples are refined: a tuple with repeated entries has
/// the same α-type behaviour as its distinct entries plus its equality pattern,
/// so every tuple is covered. Level 0 groups tuples by atomic type; level α+1
/// groups them by their level-α class together with the set of level-α classes
/// of their one-element extensions by a new element.
class TypePartition {
public:
    explicit TypePartition(std::vector<Structure> structures) : structures_(std::move(structures)) {
        for (std::size_t s = 1; s < structures_.size(); ++s) {
            if (!(structures_[s].signature() == structures_[0].signature())) {
                throw SignatureMismatch("joint type partition needs structures over one signature");
            }
        }
        build_tuples();
        refine();
    }

    const std::vector<Structure>& structures() const { return structures_; }

    /// First level whose partition equals the next one.
    int stabilization_level() const { return stabilization_; }

    std::size_t class_count(int level) const { return counts_[clamp(level)]; }

    std::size_t tuple_count(std::size_t s) const { return tuples_[s].size(); }
    const Tuple& tuple(std::size_t s, std::size_t k) const { return tuples_[s][k].elements; }

    /// Class of the k-th repetition-free tuple of structure s.
    TypeId class_at(std::size_t s, std::size_t k, int level) const {
        return {level, classes_[clamp(level)][offsets_[s] + k]};
    }

    /// Index of a repetition-free tuple of structure s; throws on repeats or range errors.
    std::size_t index_of(std::size_t s, std::span<const int> tuple) const {
        int node = 0;
        for (int e : tuple) {
            if (e < 0 || e >= structures_[s].size()) throw PreconditionError("tuple entry out of range");
            node = tuples_[s][static_cast<std::size_t>(node)].ext[static_cast<std::size_t>(e)];
            if (node < 0) throw PreconditionError("tuple has repeated entries");
        }
        return static_cast<std::size_t>(node);
    }

    TypeId class_of(std::size_t s, std::span<const int> tuple, int level) const {
        return class_at(s, index_of(s, tuple), level);
    }

    /// Type of an arbitrary tuple (repeats allowed).
    TupleType type_of(std::size_t s, std::span<const int> tuple, int level) const {
        auto [pattern, distinct] = reduce_tuple(tuple);
        return {std::move(pattern), class_of(s, distinct, level)};
    }

    /// Level-`level` equality of (structures[s], a) and (structures[t], b).
    bool same_type(std::size_t s, std::span<const int> a, std::size_t t, std::span<const int> b, int level) const {
        if (a.size() != b.size()) throw PreconditionError("tuples of different lengths");
        return type_of(s, a, level) == type_of(t, b, level);
    }

    /// Distinct class signatures of a level in class-index order. Level 0
    /// signatures are [length, atomic bits...]; later ones are
    /// [previous class, sorted extension classes...].
    const std::vector<std::vector<int>>& signatures(int level) const { return signatures_[clamp(level)]; }

    /// Number of stored levels (stabilization level + 2: the last one is the
    /// level that confirmed stability).
    int stored_levels() const { return static_cast<int>(classes_.size()); }

    /// Signature table of stored level i, without clamping to the stabilization level.
    const std::vector<std::vector<int>>& stored_signatures(int i) const { return signatures_.at(static_cast<std::size_t>(i)); }

private:
    struct TupleNode {
        Tuple elements;
        // ext[e] = index of elements⌢e, or -1 when e already occurs.
        std::vector<int> ext;
    };

    std::size_t clamp(int level) const {
        if (level < 0) throw PreconditionError("negative level");
        return static_cast<std::size_t>(std::min(level, stabilization_));
    }

    void build_tuples() {
        std::size_t offset = 0;
        for (const auto& m : structures_) {
            std::vector<TupleNode> nodes;
            nodes.push_back({{}, {}});
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                std::vector<int> ext(static_cast<std::size_t>(m.size()), -1);
                for (int e = 0; e < m.size(); ++e) {
                    const auto& elems = nodes[k].elements;
                    if (std::find(elems.begin(), elems.end(), e) != elems.end()) continue;
                    Tuple next = elems;
                    next.push_back(e);
                    ext[static_cast<std::size_t>(e)] = static_cast<int>(nodes.size());
                    nodes.push_back({std::move(next), {}});
                }
                nodes[k].ext = std::move(ext);
            }
            offsets_.push_back(offset);
            offset += nodes.size();
            tuples_.push_back(std::move(nodes));
        }
        total_ = offset;
    }

    std::vector<int> atomic_signature(const Structure& m, const Tuple& t) const {
        std::vector<int> sig{static_cast<int>(t.size())};
        const auto k = t.size();
        for (std::size_t r = 0; r < m.signature().size(); ++r) {
            const int arity = m.signature()[r].arity;
            std::vector<std::size_t> pos(static_cast<std::size_t>(arity), 0);
            std::vector<int> args(static_cast<std::size_t>(arity));
            if (k == 0) continue;
            while (true) {
                for (std::size_t i = 0; i < pos.size(); ++i) args[i] = t[pos[i]];
                sig.push_back(m.holds(r, args) ? 1 : 0);
                std::size_t i = pos.size();
                while (i > 0 && ++pos[i - 1] == k) pos[--i] = 0;
                if (i == 0) break;
            }
        }
        return sig;
    }

    void assign(std::vector<std::vector<int>> sigs) {
        std::map<std::vector<int>, int> ids;
        for (const auto& s : sigs) ids.emplace(s, 0);
        std::vector<std::vector<int>> table;
        table.reserve(ids.size());
        for (auto& [s, id] : ids) {
            id = static_cast<int>(table.size());
            table.push_back(s);
        }
        std::vector<int> cls(total_);
        for (std::size_t g = 0; g < total_; ++g) cls[g] = ids.at(sigs[g]);
        counts_.push_back(table.size());
        signatures_.push_back(std::move(table));
        classes_.push_back(std::move(cls));
    }

    void refine() {
        std::vector<std::vector<int>> sigs(total_);
        for (std::size_t s = 0; s < structures_.size(); ++s) {
            for (std::size_t k = 0; k < tuples_[s].size(); ++k) {
                sigs[offsets_[s] + k] = atomic_signature(structures_[s], tuples_[s][k].elements);
            }
        }
        assign(std::move(sigs));
        stabilization_ = static_cast<int>(total_) + 1;
        for (int level = 0;; ++level) {
            const auto& prev = classes_.back();
            std::vector<std::vector<int>> next(total_);
            for (std::size_t s = 0; s < structures_.size(); ++s) {
                for (std::size_t k = 0; k < tuples_[s].size(); ++k) {
                    std::vector<int> ext;
                    for (int child : tuples_[s][k].ext) {
                        if (child >= 0) ext.push_back(prev[offsets_[s] + static_cast<std::size_t>(child)]);
                    }
                    std::sort(ext.begin(), ext.end());
                    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
                    auto& sig = next[offsets_[s] + k];
                    sig.reserve(ext.size() + 1);
                    sig.push_back(prev[offsets_[s] + k]);
                    sig.insert(sig.end(), ext.begin(), ext.end());
                }
            }
            assign(std::move(next));
            if (counts_.back() == counts_[counts_.size() - 2]) {
                stabilization_ = level;
                break;
            }
        }
    }

    std::vector<Structure> structures_;
    std::vector<std::vector<TupleNode>> tuples_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    int stabilization_ = 0;
    std::vector<std::vector<int>> classes_;
    std::vector<std::size_t> counts_;
    std::vector<std::vector<std::vector<int>>> signatures_;
};

/// Joint back-and-forth type partition of a list of structures.
inline TypePartition joint_type_partition(std::vector<Structure> structures) {
    return TypePartition(std::move(structures));
}

/// Level-α type equality of (M, a) and (N, b); tuples may contain repeats.
inline bool types_equal(const Structure& m, std::span<const int> a, const Structure& n, std::span<const int> b, int alpha) {
    if (a.size() != b.size()) throw PreconditionError("tuples of different lengths");
    TypePartition p({m, n});
    return p.same_type(0, a, 1, b, alpha);
}

}  // namespace indax
