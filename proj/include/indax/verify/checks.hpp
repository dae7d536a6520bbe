#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "indax/model/space.hpp"

namespace indax::verify {

enum class Subject { theory, family, transform };

inline const char* to_string(Subject s) {
    switch (s) {
        case Subject::theory: return "theory";
        case Subject::family: return "family";
        case Subject::transform: return "transform";
    }
    return "?";
}

/// One checked condition. `model` indexes the space (theory checks); `element`
/// is a universe element (family checks).
struct Certificate {
    std::string condition;
    std::optional<std::size_t> index;
    std::optional<std::size_t> model;
    std::optional<std::size_t> element;
    bool holds = true;
};

/// Outcome of a bounded check. A failing report always names a concrete
/// counterexample among its certificates.
struct VerificationReport {
    Subject subject = Subject::theory;
    int bound = 0;
    bool pass = true;
    std::vector<Certificate> certificates;

    const Certificate* first_failure() const {
        for (const auto& c : certificates) {
            if (!c.holds) return &c;
        }
        return nullptr;
    }
};

/// For each i, a model of T∖{T[i]} that fails T[i].
inline VerificationReport check_independence(const Theory& t, SpaceEvaluator& ev) {
    VerificationReport r;
    r.bound = ev.space().max_size();
    const auto n = ev.space().size();
    std::vector<ModelSet> truth;
    truth.reserve(t.size());
    for (const auto& s : t.sentences()) truth.push_back(ev.truth(s));
    for (std::size_t i = 0; i < t.size(); ++i) {
        ModelSet rest(n);
        rest.set();
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k != i) rest &= truth[k];
        }
        rest -= truth[i];
        Certificate c{"independent", i, std::nullopt, std::nullopt, rest.any()};
        if (c.holds) {
            c.model = rest.find_first();
        } else {
            // The other sentences entail T[i]: cite a model of the rest, if any.
            ModelSet others(n);
            others.set();
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (k != i) others &= truth[k];
            }
            if (others.any()) c.model = others.find_first();
            r.pass = false;
        }
        r.certificates.push_back(c);
    }
    return r;
}

/// models_of(T) = models_of(U) over the space; on failure the certificate
/// names a model of exactly one side.
inline VerificationReport check_theories_equivalent(const Theory& t, const Theory& u, SpaceEvaluator& ev) {
    VerificationReport r;
    r.bound = ev.space().max_size();
    ModelSet diff = ev.models(t) ^ ev.models(u);
    Certificate c{"equivalent", std::nullopt, std::nullopt, std::nullopt, diff.none()};
    if (!c.holds) {
        c.model = diff.find_first();
        r.pass = false;
    }
    r.certificates.push_back(c);
    return r;
}

}  // namespace indax::verify
