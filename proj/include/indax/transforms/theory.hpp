#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/space.hpp"
#include "indax/transforms/report.hpp"
#include "indax/verify/checks.hpp"

namespace indax {

/// Outcome of checking that ψs partition φ over a space. On failure,
/// `condition` is one of "consistent", "covers", "exclusive".
struct PartitionCheck {
    bool valid = true;
    std::string condition;
    std::optional<std::size_t> index;
    std::optional<std::size_t> model;
};

class PartitionInvalid : public PreconditionError {
public:
    explicit PartitionInvalid(PartitionCheck check)
        : PreconditionError("partition condition '" + check.condition + "' violated"), check_(std::move(check)) {}
    const PartitionCheck& check() const { return check_; }

private:
    PartitionCheck check_;
};

/// The pairing hypothesis fails: C[index] follows from the rest.
class HypothesisFailure : public NotApplicable {
public:
    HypothesisFailure(std::size_t index, verify::Certificate certificate)
        : NotApplicable("C[" + std::to_string(index) + "] is entailed by the other sentences of C and D"),
          index_(index), certificate_(std::move(certificate)) {}
    std::size_t index() const { return index_; }
    const verify::Certificate& certificate() const { return certificate_; }

private:
    std::size_t index_;
    verify::Certificate certificate_;
};

/// Each ψ consistent, φ ↔ ⋁ψ, and the ψ pairwise exclusive.
inline PartitionCheck check_partition(const Sentence& phi, const std::vector<Sentence>& psis, SpaceEvaluator& ev) {
    const auto n = ev.space().size();
    for (std::size_t i = 0; i < psis.size(); ++i) {
        if (ev.truth(psis[i]).none()) return {false, "consistent", i, std::nullopt};
    }
    ModelSet any(n);
    for (const auto& p : psis) any |= ev.truth(p);
    ModelSet diff = any ^ ev.truth(phi);
    if (diff.any()) return {false, "covers", std::nullopt, diff.find_first()};
    for (std::size_t i = 0; i < psis.size(); ++i) {
        ModelSet others(n);
        for (std::size_t j = 0; j < psis.size(); ++j) {
            if (j != i) others |= ev.truth(psis[j]);
        }
        ModelSet both = ev.truth(psis[i]) & others;
        if (both.any()) return {false, "exclusive", i, both.find_first()};
    }
    return {};
}

/// φ̄_α = ¬ψ_α ∧ (¬φ₀ ∨ φ_α) for every non-pivot α, with ψs aligned to the
/// non-pivot indices in order. Witnesses are models of the ψ_α.
inline TransformReport partition_transform(const Theory& t, std::size_t pivot, const std::vector<Sentence>& psis,
                                           SpaceEvaluator& ev) {
    if (pivot >= t.size()) throw PreconditionError("pivot index out of range");
    if (t.size() < 2) throw PreconditionError("theory has no non-pivot sentences");
    if (psis.size() != t.size() - 1) {
        throw PreconditionError("expected " + std::to_string(t.size() - 1) + " partition parts, got " +
                                std::to_string(psis.size()));
    }
    const Sentence not_phi0 = Sentence::negate(t[pivot]);
    auto check = check_partition(not_phi0, psis, ev);
    if (!check.valid) throw PartitionInvalid(check);

    TransformReport r;
    r.method = Method::partition;
    r.input = t;
    std::size_t k = 0;
    for (std::size_t a = 0; a < t.size(); ++a) {
        if (a == pivot) continue;
        r.output.add(Sentence::conj({Sentence::negate(psis[k]), Sentence::disj({not_phi0, t[a]})}),
                     "partition[" + std::to_string(a) + "]");
        ++k;
    }
    verify_report(r, ev);
    // Replace generic witnesses with the ψ-models the construction predicts.
    for (std::size_t i = 0; i < psis.size(); ++i) {
        const auto m = ev.truth(psis[i]).find_first();
        bool ok = !ev.truth(r.output[i])[m];
        for (std::size_t j = 0; j < r.output.size() && ok; ++j) {
            if (j != i) ok = ev.truth(r.output[j])[m];
        }
        if (ok) {
            r.independence_witnesses[i] = ev.space()[m];
        } else {
            r.notes.push_back("psi-model of part " + std::to_string(i) + " is not a witness");
        }
    }
    return r;
}

/// (C ∖ f(D)) followed by δ ∧ f(δ), with f the index-order injection D → C.
inline TransformReport reznikoff_pairing(const Theory& c, const Theory& d, SpaceEvaluator& ev) {
    if (d.size() > c.size()) throw PreconditionError("|D| > |C|: no injection D -> C");
    for (const auto& x : c.sentences()) {
        for (const auto& y : d.sentences()) {
            if (x == y) throw PreconditionError("C and D share a sentence");
        }
    }
    TransformReport r;
    r.method = Method::reznikoff;
    r.input = c;
    for (std::size_t i = 0; i < d.size(); ++i) r.input.add(d[i], "extra[" + std::to_string(i) + "]");

    const auto all = r.input;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto e = entails(all.without(i), c[i], ev);
        if (e.holds) {
            verify::Certificate cert{"entailed", i, std::nullopt, std::nullopt, false};
            auto rest = ev.models(all.without(i));
            if (rest.any()) cert.model = rest.find_first();
            throw HypothesisFailure(i, cert);
        }
    }
    for (std::size_t i = d.size(); i < c.size(); ++i) r.output.add(c[i], c.labels()[i]);
    for (std::size_t i = 0; i < d.size(); ++i) {
        r.output.add(Sentence::conj({d[i], c[i]}), "pair[" + std::to_string(i) + "," + std::to_string(i) + "]");
    }
    verify_report(r, ev);
    return r;
}

/// {¬s(M) : M a counter-model of T}, in space order.
inline TransformReport complement_axiomatization(const Theory& t, SpaceEvaluator& ev, ScottSentences& scott) {
    const ModelSet models = ev.models(t);
    if (models.none()) throw PreconditionError("theory has no models in the space; preprocess it first");
    TransformReport r;
    r.method = Method::complement;
    r.input = t;
    for (std::size_t k = 0; k < ev.space().size(); ++k) {
        if (!models[k]) r.output.add(scott.negated(k), "complement[" + std::to_string(k) + "]");
    }
    verify_report(r, ev);
    return r;
}

/// φ̄_α = ⋀{¬s(M) : M ⊭ φ_α, M not used at an earlier index}; empty
/// conjunctions are dropped. Classes are tracked by space index, which is one
/// per isomorphism class.
inline TransformReport scott_filter_transform(const Theory& t, SpaceEvaluator& ev, ScottSentences& scott) {
    if (ev.models(t).none()) throw PreconditionError("theory has no models in the space; preprocess it first");
    TransformReport r;
    r.method = Method::scott_filter;
    r.input = t;
    ModelSet used(ev.space().size());
    for (std::size_t a = 0; a < t.size(); ++a) {
        ModelSet fresh = ~ev.truth(t[a]) - used;
        if (fresh.none()) {
            r.notes.push_back("dropped empty conjunction at index " + std::to_string(a));
            continue;
        }
        std::vector<Sentence> parts;
        for (auto k : indices(fresh)) parts.push_back(scott.negated(k));
        r.output.add(Sentence::conj(std::move(parts)), "scott_filter[" + std::to_string(a) + "]");
        used |= fresh;
    }
    verify_report(r, ev);
    return r;
}

/// Preprocess, then Scott filter, falling back to the complement
/// axiomatization when two outputs coincide over the space.
inline TransformReport independent_axiomatize(const Theory& t, SpaceEvaluator& ev, ScottSentences& scott) {
    TransformReport r;
    Theory pre = preprocess(t, ev);
    if (pre.size() <= 1) {
        r.output = pre;
        r.notes.push_back("preprocess");
    } else {
        auto filtered = scott_filter_transform(pre, ev, scott);
        bool clash = false;
        for (std::size_t i = 0; i < filtered.output.size() && !clash; ++i) {
            for (std::size_t j = i + 1; j < filtered.output.size() && !clash; ++j) {
                clash = ev.truth(filtered.output[i]) == ev.truth(filtered.output[j]);
            }
        }
        if (clash) {
            r.output = complement_axiomatization(pre, ev, scott).output;
            r.notes.push_back("complement");
        } else {
            r.output = filtered.output;
            r.notes.push_back("scott_filter");
            r.notes.insert(r.notes.end(), filtered.notes.begin(), filtered.notes.end());
        }
    }
    r.method = Method::driver;
    r.input = t;
    verify_report(r, ev);
    if (!r.verified()) throw InternalError("independent_axiomatize produced an unverified output");
    return r;
}

inline TransformReport independent_axiomatize(const Theory& t, const ModelSpace& space,
                                              int materialize_cap = kDefaultMaterializeCap) {
    SpaceEvaluator ev(space);
    ScottSentences scott(space, materialize_cap);
    return independent_axiomatize(t, ev, scott);
}

}  // namespace indax
