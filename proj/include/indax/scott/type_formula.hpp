#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "indax/model/sentence.hpp"
#include "indax/model/structure.hpp"

namespace indax {

/// Builds the α-type formulas φ^{a⃗,M}_α of one structure.
///
///   φ_0(a⃗)   = ⋀ atomic and negated atomic formulas true of a⃗
///   φ_α+1(a⃗) = φ_α(a⃗) ∧ ⋀_b ∃y φ_α(a⃗b) ∧ ∀y ⋁_b φ_α(a⃗b)
///
/// Position i of the tuple is the variable `<prefix>i`. Identical subformulas
/// are built once and shared, and the ⋀/⋁ over extensions range over distinct
/// formulas, so the result is a DAG.
class TypeFormulaBuilder {
public:
    explicit TypeFormulaBuilder(const Structure& m, std::string prefix = "x") : m_(m), prefix_(std::move(prefix)) {}

    Sentence formula(std::span<const int> tuple, int level) { return interned_[static_cast<std::size_t>(build(Tuple(tuple.begin(), tuple.end()), level))]; }

    std::string var(std::size_t i) const { return prefix_ + std::to_string(i); }

    /// Number of distinct formula nodes built so far.
    std::size_t distinct_formulas() const { return interned_.size(); }

private:
    int intern(std::vector<int> key, const auto& make) {
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(interned_.size());
        interned_.push_back(make());
        ids_.emplace(std::move(key), id);
        return id;
    }

    int build(const Tuple& t, int level) {
        auto& memo = memo_[level];
        if (auto it = memo.find(t); it != memo.end()) return it->second;
        int id = level == 0 ? build_atomic(t) : build_successor(t, level);
        memo.emplace(t, id);
        return id;
    }

    int build_atomic(const Tuple& t) {
        const auto k = t.size();
        std::vector<int> key{0, static_cast<int>(k)};
        std::vector<Sentence> literals;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const bool same = t[i] == t[j];
                key.push_back(same);
                auto lit = Sentence::eq(var(i), var(j));
                literals.push_back(same ? lit : Sentence::negate(lit));
            }
        }
        for (std::size_t r = 0; r < m_.signature().size(); ++r) {
            if (k == 0) break;
            const int arity = m_.signature()[r].arity;
            std::vector<std::size_t> pos(static_cast<std::size_t>(arity), 0);
            std::vector<int> args(static_cast<std::size_t>(arity));
            std::vector<std::string> names(static_cast<std::size_t>(arity));
            while (true) {
                for (std::size_t i = 0; i < pos.size(); ++i) {
                    args[i] = t[pos[i]];
                    names[i] = var(pos[i]);
                }
                const bool holds = m_.holds(r, args);
                key.push_back(holds);
                auto lit = Sentence::atom(m_.signature()[r].name, names);
                literals.push_back(holds ? lit : Sentence::negate(lit));
                std::size_t i = pos.size();
                while (i > 0 && ++pos[i - 1] == k) pos[--i] = 0;
                if (i == 0) break;
            }
        }
        return intern(std::move(key), [&] { return Sentence::conj(std::move(literals)); });
    }

    int build_successor(const Tuple& t, int level) {
        const int self = build(t, level - 1);
        std::vector<int> ext;
        Tuple next = t;
        next.push_back(0);
        for (int b = 0; b < m_.size(); ++b) {
            next.back() = b;
            ext.push_back(build(next, level - 1));
        }
        std::sort(ext.begin(), ext.end());
        ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
        std::vector<int> key{level, self};
        key.insert(key.end(), ext.begin(), ext.end());
        return intern(std::move(key), [&] {
            const std::string y = var(t.size());
            std::vector<Sentence> parts{interned_[static_cast<std::size_t>(self)]};
            std::vector<Sentence> options;
            for (int e : ext) {
                parts.push_back(Sentence::exists(y, interned_[static_cast<std::size_t>(e)]));
                options.push_back(interned_[static_cast<std::size_t>(e)]);
            }
            parts.push_back(Sentence::forall(y, Sentence::disj(std::move(options))));
            return Sentence::conj(std::move(parts));
        });
    }

    const Structure& m_;
    std::string prefix_;
    std::vector<Sentence> interned_;
    std::map<std::vector<int>, int> ids_;
    std::unordered_map<int, std::map<Tuple, int>> memo_;
};

}  // namespace indax
