#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace indax {

enum class NodeKind { Atom, Eq, Not, And, Or, Exists, Forall };

class Sentence;

struct SentenceNode {
    NodeKind kind;
    // Relation name for Atom, bound variable for Exists/Forall.
    std::string name;
    // Arguments of Atom and Eq.
    std::vector<std::string> vars;
    std::vector<Sentence> children;
    // Sorted, unique.
    std::vector<std::string> free_vars;
};

/// Immutable handle to a formula. Subformulas are shared, so a Sentence may be
/// a DAG; equal pointers mean identical formulas.
class Sentence {
public:
    static Sentence atom(std::string relation, std::vector<std::string> args) {
        auto n = make(NodeKind::Atom);
        n->name = std::move(relation);
        n->vars = std::move(args);
        n->free_vars = n->vars;
        normalize(n->free_vars);
        return Sentence(std::move(n));
    }

    static Sentence eq(std::string x, std::string y) {
        auto n = make(NodeKind::Eq);
        n->vars = {std::move(x), std::move(y)};
        n->free_vars = n->vars;
        normalize(n->free_vars);
        return Sentence(std::move(n));
    }

    static Sentence negate(Sentence child) {
        auto n = make(NodeKind::Not);
        n->free_vars = child.free_vars();
        n->children.push_back(std::move(child));
        return Sentence(std::move(n));
    }

    static Sentence conj(std::vector<Sentence> children) { return junction(NodeKind::And, std::move(children)); }
    static Sentence disj(std::vector<Sentence> children) { return junction(NodeKind::Or, std::move(children)); }

    static Sentence exists(std::string var, Sentence body) { return quantifier(NodeKind::Exists, std::move(var), std::move(body)); }
    static Sentence forall(std::string var, Sentence body) { return quantifier(NodeKind::Forall, std::move(var), std::move(body)); }

    static Sentence truth() { return conj({}); }
    static Sentence falsity() { return disj({}); }

    /// ∃x x≠x, the canonical contradiction.
    static Sentence contradiction() { return exists("x", negate(eq("x", "x"))); }

    NodeKind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    const std::vector<std::string>& vars() const { return node_->vars; }
    const std::vector<Sentence>& children() const { return node_->children; }
    const std::vector<std::string>& free_vars() const { return node_->free_vars; }
    bool closed() const { return node_->free_vars.empty(); }

    const SentenceNode* node() const { return node_.get(); }

    /// Structural equality (not just pointer identity).
    friend bool operator==(const Sentence& a, const Sentence& b) {
        if (a.node_ == b.node_) return true;
        const auto& x = *a.node_;
        const auto& y = *b.node_;
        return x.kind == y.kind && x.name == y.name && x.vars == y.vars && x.children == y.children;
    }

private:
    explicit Sentence(std::shared_ptr<const SentenceNode> node) : node_(std::move(node)) {}

    static std::shared_ptr<SentenceNode> make(NodeKind k) {
        auto n = std::make_shared<SentenceNode>();
        n->kind = k;
        return n;
    }

    static void normalize(std::vector<std::string>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    static Sentence junction(NodeKind k, std::vector<Sentence> children) {
        auto n = make(k);
        for (const auto& c : children) {
            n->free_vars.insert(n->free_vars.end(), c.free_vars().begin(), c.free_vars().end());
        }
        normalize(n->free_vars);
        n->children = std::move(children);
        return Sentence(std::move(n));
    }

    static Sentence quantifier(NodeKind k, std::string var, Sentence body) {
        auto n = make(k);
        n->free_vars = body.free_vars();
        std::erase(n->free_vars, var);
        n->name = std::move(var);
        n->children.push_back(std::move(body));
        return Sentence(std::move(n));
    }

    std::shared_ptr<const SentenceNode> node_;
};

/// Nesting depth of the AST (an atom has depth 1).
inline int depth(const Sentence& s) {
    int d = 0;
    for (const auto& c : s.children()) d = std::max(d, depth(c));
    return d + 1;
}

/// An ordered list of sentences with per-sentence provenance labels.
class Theory {
public:
    Theory() = default;

    explicit Theory(std::vector<Sentence> sentences) {
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            add(std::move(sentences[i]), "input[" + std::to_string(i) + "]");
        }
    }

    void add(Sentence s, std::string label) {
        sentences_.push_back(std::move(s));
        labels_.push_back(std::move(label));
    }

    const std::vector<Sentence>& sentences() const { return sentences_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return sentences_.size(); }
    bool empty() const { return sentences_.empty(); }
    const Sentence& operator[](std::size_t i) const { return sentences_[i]; }

    /// This theory without the sentence at index i.
    Theory without(std::size_t i) const {
        Theory t;
        for (std::size_t k = 0; k < size(); ++k) {
            if (k != i) t.add(sentences_[k], labels_[k]);
        }
        return t;
    }

private:
    std::vector<Sentence> sentences_;
    std::vector<std::string> labels_;
};

}  // namespace indax
