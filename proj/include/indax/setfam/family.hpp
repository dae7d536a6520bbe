#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "indax/error.hpp"
#include "indax/model/space.hpp"
#include "indax/verify/checks.hpp"

namespace indax {

using Subset = boost::dynamic_bitset<>;

/// Indexed subsets of {0, ..., universe_size-1}. Index order is significant.
class SetFamily {
public:
    explicit SetFamily(std::size_t universe_size) : universe_(universe_size) {
        if (universe_size < 1) throw PreconditionError("universe must be nonempty");
    }

    SetFamily(std::size_t universe_size, const std::vector<std::vector<std::size_t>>& sets) : SetFamily(universe_size) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            Subset s(universe_);
            for (auto e : sets[i]) {
                if (e >= universe_) throw PreconditionError("element " + std::to_string(e) + " outside the universe");
                s.set(e);
            }
            add(std::move(s), "input[" + std::to_string(i) + "]");
        }
    }

    void add(Subset s, std::string label) {
        if (s.size() != universe_) throw PreconditionError("subset over a different universe");
        sets_.push_back(std::move(s));
        labels_.push_back(std::move(label));
    }

    std::size_t universe_size() const { return universe_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    const Subset& operator[](std::size_t i) const { return sets_[i]; }
    const std::vector<Subset>& sets() const { return sets_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Subset full() const { return Subset(universe_).set(); }

    /// ⋂ of all sets; the whole universe for an empty family.
    Subset intersection() const { return intersection_except(sets_.size()); }

    /// ⋂_{j≠skip} F_j.
    Subset intersection_except(std::size_t skip) const {
        Subset out = full();
        for (std::size_t j = 0; j < sets_.size(); ++j) {
            if (j != skip) out &= sets_[j];
        }
        return out;
    }

    std::vector<std::vector<std::size_t>> elements() const {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& s : sets_) out.push_back(indices(s));
        return out;
    }

    friend bool operator==(const SetFamily& a, const SetFamily& b) {
        return a.universe_ == b.universe_ && a.sets_ == b.sets_;
    }

private:
    std::size_t universe_;
    std::vector<Subset> sets_;
    std::vector<std::string> labels_;
};

struct FamilyIndependence {
    bool independent = false;
    // An element of ⋂F.
    std::optional<std::size_t> common;
    // Per index i, an element of ⋂_{j≠i} F_j ∖ F_i.
    std::vector<std::optional<std::size_t>> omitted;
};

inline std::optional<std::size_t> first_element(const Subset& s) {
    auto k = s.find_first();
    if (k == Subset::npos) return std::nullopt;
    return k;
}

inline FamilyIndependence family_is_independent(const SetFamily& f) {
    FamilyIndependence r;
    r.common = first_element(f.intersection());
    r.independent = r.common.has_value();
    for (std::size_t i = 0; i < f.size(); ++i) {
        r.omitted.push_back(first_element(f.intersection_except(i) - f[i]));
        if (!r.omitted.back()) r.independent = false;
    }
    return r;
}

inline bool families_equivalent(const SetFamily& f, const SetFamily& g) {
    if (f.universe_size() != g.universe_size()) throw PreconditionError("families over different universes");
    return f.intersection() == g.intersection();
}

inline verify::VerificationReport check_family_independence(const SetFamily& f) {
    verify::VerificationReport r;
    r.subject = verify::Subject::family;
    r.bound = static_cast<int>(f.universe_size());
    auto ind = family_is_independent(f);
    r.pass = ind.independent;
    r.certificates.push_back({"intersection_nonempty", std::nullopt, std::nullopt, ind.common, ind.common.has_value()});
    for (std::size_t i = 0; i < f.size(); ++i) {
        verify::Certificate c{"independent", i, std::nullopt, ind.omitted[i], ind.omitted[i].has_value()};
        // A failing index cites an element of ⋂_{j≠i} F_j, all of which lie in F_i.
        if (!c.holds) c.element = first_element(f.intersection_except(i));
        r.certificates.push_back(c);
    }
    return r;
}

inline verify::VerificationReport check_families_equivalent(const SetFamily& f, const SetFamily& g) {
    verify::VerificationReport r;
    r.subject = verify::Subject::family;
    r.bound = static_cast<int>(f.universe_size());
    if (f.universe_size() != g.universe_size()) throw PreconditionError("families over different universes");
    auto diff = f.intersection() ^ g.intersection();
    r.pass = diff.none();
    r.certificates.push_back({"equivalent", std::nullopt, std::nullopt, first_element(diff), r.pass});
    return r;
}

struct CaseOneResult {
    SetFamily family;
    // C_j in output order, one per index j ≠ i0.
    std::vector<Subset> blocks;
    std::vector<std::size_t> source;
};

/// Partitions ∁F[i0] into |F|-1 blocks (singletons in element order, then the
/// remainder) and returns B′_j = ∁C_j ∩ (∁F[i0] ∪ F[j]) for j ≠ i0.
inline CaseOneResult case1_transform(const SetFamily& f, std::size_t i0) {
    if (i0 >= f.size()) throw PreconditionError("index i0 out of range");
    if (f.intersection().none()) throw PreconditionError("family has empty intersection");
    if (f.size() < 2) throw NotApplicable("case I needs at least two sets");
    const Subset comp = ~f[i0];
    const std::size_t blocks = f.size() - 1;
    if (comp.count() < blocks) {
        throw NotApplicable("complement of set " + std::to_string(i0) + " has " + std::to_string(comp.count()) +
                            " elements, needs " + std::to_string(blocks));
    }
    CaseOneResult r{SetFamily(f.universe_size()), {}, {}};
    Subset rest = comp;
    for (std::size_t b = 0; b + 1 < blocks; ++b) {
        Subset single(f.universe_size());
        single.set(rest.find_first());
        rest -= single;
        r.blocks.push_back(std::move(single));
    }
    r.blocks.push_back(rest);
    std::size_t b = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j == i0) continue;
        r.family.add(~r.blocks[b] & (comp | f[j]), "case1[" + std::to_string(j) + "]");
        r.source.push_back(j);
        ++b;
    }
    return r;
}

struct CaseTwoResult {
    SetFamily family;
    // Input index of each retained set.
    std::vector<std::size_t> kept;
    // Input indices whose B′_j was the whole universe.
    std::vector<std::size_t> dropped;
};

/// B′_j = F[j] ∪ ⋃_{i<j} ∁F[i], dropping sets equal to the universe.
inline CaseTwoResult case2_transform(const SetFamily& f) {
    if (f.intersection().none()) throw PreconditionError("family has empty intersection");
    CaseTwoResult r{SetFamily(f.universe_size()), {}, {}};
    Subset earlier(f.universe_size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        Subset b = f[j] | earlier;
        if (b.all()) {
            r.dropped.push_back(j);
        } else {
            r.family.add(std::move(b), "case2[" + std::to_string(j) + "]");
            r.kept.push_back(j);
        }
        earlier |= ~f[j];
    }
    return r;
}

struct IndependizeReport {
    CaseTwoResult result;
    verify::VerificationReport independence;
    verify::VerificationReport equivalence;
};

/// Case II followed by both checks; a failed check is a bug.
inline IndependizeReport independize_family(const SetFamily& f) {
    IndependizeReport r{case2_transform(f), {}, {}};
    r.independence = check_family_independence(r.result.family);
    r.equivalence = check_families_equivalent(f, r.result.family);
    if (!r.independence.pass || !r.equivalence.pass) throw InternalError("case II output failed verification");
    return r;
}

/// Set i = indices of the representatives satisfying T[i].
inline SetFamily theory_to_family(const Theory& t, SpaceEvaluator& ev) {
    SetFamily f(ev.space().size());
    for (std::size_t i = 0; i < t.size(); ++i) f.add(ev.truth(t[i]), "T[" + std::to_string(i) + "]");
    return f;
}

}  // namespace indax
