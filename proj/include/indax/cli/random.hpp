#pragma once

// Seeded generators for fuzz runs. Draws use rng() % n rather than the
// standard distributions so output is identical across standard libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "indax/model/sentence.hpp"
#include "indax/model/structure.hpp"
#include "indax/setfam/family.hpp"

namespace indax {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
    bool coin(std::size_t num = 1, std::size_t den = 2) { return below(den) < num; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

struct SentenceShape {
    int max_depth = 4;
    std::vector<std::string> variables{"x", "y", "z"};
};

/// Random closed sentences over a signature, AST depth <= max_depth.
class RandomSentences {
public:
    RandomSentences(Signature sig, Rng& rng, SentenceShape shape = {}) : sig_(std::move(sig)), rng_(rng), shape_(std::move(shape)) {}

    Sentence sentence() { return gen(shape_.max_depth, {}); }

private:
    Sentence leaf(const std::vector<std::string>& bound) {
        if (bound.empty()) return rng_.coin() ? Sentence::truth() : Sentence::falsity();
        auto pick = [&] { return bound[rng_.below(bound.size())]; };
        if (sig_.empty() || rng_.coin(1, 5)) return Sentence::eq(pick(), pick());
        const auto& rel = sig_[rng_.below(sig_.size())];
        std::vector<std::string> args;
        for (int i = 0; i < rel.arity; ++i) args.push_back(pick());
        return Sentence::atom(rel.name, std::move(args));
    }

    Sentence gen(int depth, std::vector<std::string> bound) {
        if (depth <= 1) return leaf(bound);
        // Without bound variables the only useful move is a quantifier.
        std::size_t choice = bound.empty() ? 4 + rng_.below(2) : rng_.below(7);
        switch (choice) {
            case 0:
            case 1:
                return leaf(bound);
            case 2:
                return Sentence::negate(gen(depth - 1, bound));
            case 3: {
                std::vector<Sentence> kids;
                const int count = rng_.range(2, 3);
                for (int i = 0; i < count; ++i) kids.push_back(gen(depth - 1, bound));
                return rng_.coin() ? Sentence::conj(std::move(kids)) : Sentence::disj(std::move(kids));
            }
            default: {
                const auto& v = shape_.variables[rng_.below(shape_.variables.size())];
                bound.push_back(v);
                auto body = gen(depth - 1, bound);
                return choice % 2 == 0 ? Sentence::exists(v, std::move(body)) : Sentence::forall(v, std::move(body));
            }
        }
    }

    Signature sig_;
    Rng& rng_;
    SentenceShape shape_;
};

inline Structure random_structure(const Signature& sig, int size, Rng& rng, std::size_t density_num = 1,
                                  std::size_t density_den = 2) {
    Structure m(sig, size);
    for (std::size_t r = 0; r < sig.size(); ++r) {
        for (auto& bit : m.table(r)) bit = rng.coin(density_num, density_den) ? 1 : 0;
    }
    return m;
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

/// Random family whose sets share one common element, so ⋂F ≠ ∅.
inline SetFamily random_family(Rng& rng, std::size_t universe, std::size_t count) {
    Subset core(universe);
    core.set(rng.below(universe));
    SetFamily f(universe);
    for (std::size_t i = 0; i < count; ++i) {
        Subset s = core;
        for (std::size_t e = 0; e < universe; ++e) {
            if (rng.coin()) s.set(e);
        }
        f.add(std::move(s), "random[" + std::to_string(i) + "]");
    }
    return f;
}

}  // namespace indax
