#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/space.hpp"
#include "indax/scott/scott.hpp"
#include "indax/verify/checks.hpp"

namespace indax {

enum class Method { partition, reznikoff, complement, scott_filter, phi_star, driver };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::partition: return "partition";
        case Method::reznikoff: return "reznikoff";
        case Method::complement: return "complement";
        case Method::scott_filter: return "scott_filter";
        case Method::phi_star: return "phi_star";
        case Method::driver: return "driver";
    }
    return "?";
}

struct TransformReport {
    Theory input;
    Theory output;
    Method method = Method::driver;
    int bound = 0;
    bool equivalence_checked = false;
    // Per output sentence: a model of the other outputs failing it.
    std::vector<std::optional<Structure>> independence_witnesses;
    verify::VerificationReport equivalence;
    verify::VerificationReport independence;
    std::vector<std::string> notes;

    bool verified() const { return equivalence_checked && equivalence.pass && independence.pass; }
};

/// Runs both bounded checks on a report and copies the independence witnesses.
inline void verify_report(TransformReport& r, SpaceEvaluator& ev) {
    r.bound = ev.space().max_size();
    r.equivalence = verify::check_theories_equivalent(r.input, r.output, ev);
    r.independence = verify::check_independence(r.output, ev);
    r.equivalence_checked = true;
    r.independence_witnesses.assign(r.output.size(), std::nullopt);
    for (const auto& c : r.independence.certificates) {
        if (c.holds && c.index && c.model) r.independence_witnesses[*c.index] = ev.space()[*c.model];
    }
}

/// Scott sentences of the representatives of one space, built on first use.
class ScottSentences {
public:
    explicit ScottSentences(const ModelSpace& space, int materialize_cap = kDefaultMaterializeCap)
        : space_(&space), cap_(materialize_cap), cache_(space.size()) {}

    const ModelSpace& space() const { return *space_; }

    const Sentence& operator[](std::size_t k) {
        if (!cache_[k]) cache_[k] = scott_sentence((*space_)[k], cap_);
        return *cache_[k];
    }

    /// ¬s(M_k), one shared node per class.
    const Sentence& negated(std::size_t k) {
        if (negated_.size() != cache_.size()) negated_.resize(cache_.size());
        if (!negated_[k]) negated_[k] = Sentence::negate((*this)[k]);
        return *negated_[k];
    }

private:
    const ModelSpace* space_;
    int cap_;
    std::vector<std::optional<Sentence>> cache_;
    std::vector<std::optional<Sentence>> negated_;
};

}  // namespace indax
