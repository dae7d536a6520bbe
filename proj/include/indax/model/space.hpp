#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "indax/model/enumerate.hpp"
#include "indax/model/eval.hpp"
#include "indax/model/sentence.hpp"

namespace indax {

using ModelSet = boost::dynamic_bitset<>;

/// Truth vectors of closed sentences over a ModelSpace, cached by node identity.
///
/// Boolean combinations of closed sentences are assembled from the vectors of
/// their parts, so a sentence reused across many theories (a Scott sentence,
/// say) is evaluated on each model of the space exactly once.
class SpaceEvaluator {
public:
    explicit SpaceEvaluator(const ModelSpace& space) : space_(&space) {}

    const ModelSpace& space() const { return *space_; }

    const ModelSet& truth(const Sentence& s) {
        if (auto it = cache_.find(s.node()); it != cache_.end()) return it->second.second;
        if (!s.closed()) throw MalformedSentence("sentence has free variable '" + s.free_vars().front() + "'");
        ModelSet result(space_->size());
        switch (s.kind()) {
            case NodeKind::Not:
                result = truth(s.children()[0]);
                result.flip();
                break;
            case NodeKind::And:
                result.set();
                for (const auto& c : s.children()) result &= truth(c);
                break;
            case NodeKind::Or:
                for (const auto& c : s.children()) result |= truth(c);
                break;
            default: {
                Evaluator ev(space_->signature(), s);
                for (std::size_t k = 0; k < space_->size(); ++k) result[k] = ev((*space_)[k]);
                break;
            }
        }
        return cache_.emplace(s.node(), std::make_pair(s, std::move(result))).first->second.second;
    }

    /// Models of every sentence of `t`.
    ModelSet models(const Theory& t) {
        ModelSet m(space_->size());
        m.set();
        for (const auto& s : t.sentences()) m &= truth(s);
        return m;
    }

private:
    const ModelSpace* space_;
    std::unordered_map<const SentenceNode*, std::pair<Sentence, ModelSet>> cache_;
};

inline std::vector<std::size_t> indices(const ModelSet& set) {
    std::vector<std::size_t> out;
    for (auto k = set.find_first(); k != ModelSet::npos; k = set.find_next(k)) out.push_back(k);
    return out;
}

/// Indices into the space of the representatives satisfying every sentence of `t`.
inline std::vector<std::size_t> model_indices(const Theory& t, SpaceEvaluator& ev) { return indices(ev.models(t)); }

inline std::vector<Structure> models_of(const Theory& t, const ModelSpace& space) {
    SpaceEvaluator ev(space);
    std::vector<Structure> out;
    for (auto k : model_indices(t, ev)) out.push_back(space[k]);
    return out;
}

struct Entailment {
    bool holds = false;
    // Index into the space of a model of T failing the sentence.
    std::optional<std::size_t> counter_model;
    int bound = 0;
};

/// T ⊨ φ relative to the bounded space.
inline Entailment entails(const Theory& t, const Sentence& phi, SpaceEvaluator& ev) {
    ModelSet bad = ev.models(t) - ev.truth(phi);
    Entailment e;
    e.bound = ev.space().max_size();
    e.holds = bad.none();
    if (!e.holds) e.counter_model = bad.find_first();
    return e;
}

inline Entailment entails(const Theory& t, const Sentence& phi, const ModelSpace& space) {
    SpaceEvaluator ev(space);
    return entails(t, phi, ev);
}

/// Drops sentences valid over the space; an unsatisfiable theory becomes {∃x x≠x}.
inline Theory preprocess(const Theory& t, SpaceEvaluator& ev) {
    Theory out;
    if (ev.models(t).none()) {
        out.add(Sentence::contradiction(), "contradiction");
        return out;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!ev.truth(t[i]).all()) out.add(t[i], t.labels()[i]);
    }
    return out;
}

inline Theory preprocess(const Theory& t, const ModelSpace& space) {
    SpaceEvaluator ev(space);
    return preprocess(t, ev);
}

}  // namespace indax
