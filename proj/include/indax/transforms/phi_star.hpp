#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/space.hpp"
#include "indax/scott/partition.hpp"
#include "indax/scott/type_formula.hpp"

namespace indax {

/// Free variable of every type formula.
inline const std::string kTypeVariable = "x0";

/// A type given by the formulas (in kTypeVariable) that realize it.
struct InputType {
    TypeId id;
    std::vector<Sentence> formulas;
};

struct TreeNode {
    // Binary string u; the root is "".
    std::string path;
    // S_u
    std::vector<Sentence> label;
    std::vector<std::size_t> children;
    // Input type at a leaf.
    std::optional<std::size_t> leaf;
};

/// Labels S_u indexed by binary strings. A node with a single child is a
/// chain step: its child carries the full formula set of one type.
struct SeparatingTree {
    std::vector<TreeNode> nodes;

    const TreeNode& root() const { return nodes.front(); }

    int depth() const {
        int d = 0;
        for (const auto& n : nodes) d = std::max(d, static_cast<int>(n.path.size()));
        return d;
    }
};

namespace detail {

inline bool contains(const std::vector<Sentence>& set, const Sentence& s) {
    return std::any_of(set.begin(), set.end(), [&](const Sentence& x) { return x == s; });
}

inline bool same_set(const std::vector<Sentence>& a, const std::vector<Sentence>& b) {
    return std::all_of(a.begin(), a.end(), [&](const Sentence& s) { return contains(b, s); }) &&
           std::all_of(b.begin(), b.end(), [&](const Sentence& s) { return contains(a, s); });
}

inline void check_type_formula(const Sentence& s) {
    for (const auto& v : s.free_vars()) {
        if (v != kTypeVariable) throw PreconditionError("type formula has free variable '" + v + "'");
    }
}

class TreeBuilder {
public:
    TreeBuilder(const std::vector<InputType>& types, SpaceEvaluator& ev) : types_(types), ev_(ev) {}

    SeparatingTree build() {
        std::vector<std::size_t> all(types_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        tree_.nodes.push_back({"", {}, {}, std::nullopt});
        grow(0, all);
        return std::move(tree_);
    }

    /// No element of any model satisfies both formulas.
    bool incompatible(const Sentence& a, const Sentence& b) {
        const auto key = std::make_pair(a.node(), b.node());
        if (auto it = incompatible_.find(key); it != incompatible_.end()) return it->second;
        const bool r = ev_.truth(Sentence::exists(kTypeVariable, Sentence::conj({a, b}))).none();
        incompatible_.emplace(key, r);
        return r;
    }

private:
    std::size_t add_child(std::size_t parent, char bit, std::vector<Sentence> label) {
        const std::size_t id = tree_.nodes.size();
        tree_.nodes.push_back({tree_.nodes[parent].path + bit, std::move(label), {}, std::nullopt});
        tree_.nodes[parent].children.push_back(id);
        return id;
    }

    void grow(std::size_t node, const std::vector<std::size_t>& group) {
        if (group.size() == 1) {
            const auto& full = types_[group[0]].formulas;
            if (same_set(tree_.nodes[node].label, full)) {
                tree_.nodes[node].leaf = group[0];
            } else {
                auto child = add_child(node, '0', full);
                tree_.nodes[child].leaf = group[0];
            }
            return;
        }
        for (auto t : group) {
            for (const auto& psi : types_[t].formulas) {
                std::vector<std::size_t> left, right;
                for (auto u : group) (contains(types_[u].formulas, psi) ? left : right).push_back(u);
                if (right.empty()) continue;
                // ψ′ must hold in every type of the other side; negations of ψ are tried first.
                std::vector<Sentence> candidates;
                for (const auto& other : types_[right[0]].formulas) {
                    if (std::all_of(right.begin(), right.end(),
                                    [&](std::size_t u) { return contains(types_[u].formulas, other); })) {
                        candidates.push_back(other);
                    }
                }
                std::stable_partition(candidates.begin(), candidates.end(),
                                      [&](const Sentence& o) { return negation_pair(psi, o); });
                for (const auto& other : candidates) {
                    if (!incompatible(psi, other)) continue;
                    auto l_label = tree_.nodes[node].label;
                    l_label.push_back(psi);
                    auto r_label = tree_.nodes[node].label;
                    r_label.push_back(other);
                    auto l = add_child(node, '0', std::move(l_label));
                    auto r = add_child(node, '1', std::move(r_label));
                    grow(l, left);
                    grow(r, right);
                    return;
                }
            }
        }
        throw PreconditionError("types cannot be separated over the space");
    }

    static bool negation_pair(const Sentence& a, const Sentence& b) {
        return (a.kind() == NodeKind::Not && a.children()[0] == b) || (b.kind() == NodeKind::Not && b.children()[0] == a);
    }

    const std::vector<InputType>& types_;
    SpaceEvaluator& ev_;
    SeparatingTree tree_;
    std::map<std::pair<const SentenceNode*, const SentenceNode*>, bool> incompatible_;
};

}  // namespace detail

/// Builds S_u labels with incompatible siblings, monotone branches, and leaf
/// labels equal to the input types.
inline SeparatingTree build_separating_tree(const std::vector<InputType>& types, SpaceEvaluator& ev) {
    if (types.empty()) throw PreconditionError("no input types");
    for (std::size_t i = 0; i < types.size(); ++i) {
        for (const auto& f : types[i].formulas) detail::check_type_formula(f);
        for (std::size_t j = 0; j < i; ++j) {
            if (detail::same_set(types[i].formulas, types[j].formulas)) {
                throw PreconditionError("input types " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
            }
        }
        if (ev.truth(Sentence::exists(kTypeVariable, Sentence::conj(types[i].formulas))).none()) {
            throw PreconditionError("input type " + std::to_string(i) + " is not realized in the space");
        }
    }
    return detail::TreeBuilder(types, ev).build();
}

/// Empty string when the tree satisfies its three conditions, else the first violation.
inline std::string check_tree(const SeparatingTree& tree, const std::vector<InputType>& types, SpaceEvaluator& ev) {
    std::vector<bool> seen(types.size(), false);
    for (const auto& n : tree.nodes) {
        for (auto c : n.children) {
            for (const auto& s : n.label) {
                if (!detail::contains(tree.nodes[c].label, s)) return "label of '" + n.path + "' not inherited";
            }
        }
        if (n.children.size() == 2) {
            const auto& a = tree.nodes[n.children[0]].label;
            const auto& b = tree.nodes[n.children[1]].label;
            if (ev.truth(Sentence::exists(kTypeVariable, Sentence::conj({Sentence::conj(a), Sentence::conj(b)}))).any()) {
                return "children of '" + n.path + "' are compatible";
            }
        }
        if (n.children.size() > 2) return "node '" + n.path + "' has more than two children";
        if (n.leaf) {
            if (!n.children.empty()) return "leaf '" + n.path + "' has children";
            if (seen[*n.leaf]) return "type " + std::to_string(*n.leaf) + " at two leaves";
            seen[*n.leaf] = true;
            if (!detail::same_set(n.label, types[*n.leaf].formulas)) return "leaf '" + n.path + "' label differs from its type";
        } else if (n.children.empty()) {
            return "node '" + n.path + "' has no children and no type";
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) return "type " + std::to_string(i) + " has no leaf";
    }
    return {};
}

/// ∃x0 ⋀_{n ≤ depth} ⋁_{u at depth n} ⋀ S_u(x0); leaves above depth n stand
/// in for their own level.
inline Sentence phi_star(const SeparatingTree& tree) {
    const int d = tree.depth();
    std::vector<Sentence> levels;
    std::vector<std::size_t> frontier{0};
    for (int n = 0; n <= d; ++n) {
        std::vector<Sentence> options;
        for (auto id : frontier) options.push_back(Sentence::conj(tree.nodes[id].label));
        levels.push_back(Sentence::disj(std::move(options)));
        std::vector<std::size_t> next;
        for (auto id : frontier) {
            if (tree.nodes[id].children.empty()) {
                next.push_back(id);
            } else {
                next.insert(next.end(), tree.nodes[id].children.begin(), tree.nodes[id].children.end());
            }
        }
        frontier = std::move(next);
    }
    return Sentence::exists(kTypeVariable, Sentence::conj(std::move(levels)));
}

/// Input types realized by some element of each model: bit (model, type).
inline std::vector<ModelSet> realized_types(const std::vector<InputType>& types, SpaceEvaluator& ev) {
    std::vector<ModelSet> out;
    for (const auto& t : types) out.push_back(ev.truth(Sentence::exists(kTypeVariable, Sentence::conj(t.formulas))));
    return out;
}

/// Element types of (model, element) picks at a level, as formula sets: the
/// positive type formula of every level 0..level, and the negated formula of
/// every other pick whose class differs at that level. Formulas for one joint
/// class are one shared node, so equal formulas compare by identity.
inline std::vector<InputType> element_types(const std::vector<std::pair<Structure, int>>& picks, int level) {
    std::vector<Structure> models;
    for (const auto& p : picks) models.push_back(p.first);
    TypePartition joint(models);
    std::vector<TypeFormulaBuilder> builders;
    builders.reserve(picks.size());
    for (const auto& p : picks) builders.emplace_back(p.first);

    std::map<TypeId, Sentence> positive, negative;
    auto formula_of = [&](std::size_t i, int l) -> std::pair<TypeId, Sentence> {
        const Tuple a{picks[i].second};
        TypeId id = joint.class_of(i, a, l);
        id.level = l;
        auto it = positive.find(id);
        if (it == positive.end()) it = positive.emplace(id, builders[i].formula(a, l)).first;
        return {id, it->second};
    };

    std::vector<InputType> out(picks.size());
    for (std::size_t i = 0; i < picks.size(); ++i) {
        out[i].id = joint.class_of(i, Tuple{picks[i].second}, level);
        out[i].id.level = level;
        for (int l = 0; l <= level; ++l) {
            auto [id, f] = formula_of(i, l);
            out[i].formulas.push_back(f);
            for (std::size_t j = 0; j < picks.size(); ++j) {
                auto [other, g] = formula_of(j, l);
                if (other == id) continue;
                auto it = negative.find(other);
                if (it == negative.end()) it = negative.emplace(other, Sentence::negate(g)).first;
                if (!detail::contains(out[i].formulas, it->second)) out[i].formulas.push_back(it->second);
            }
        }
    }
    return out;
}

}  // namespace indax
