#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/sentence.hpp"
#include "indax/model/signature.hpp"
#include "indax/model/structure.hpp"

namespace indax {

using Assignment = std::map<std::string, int>;

/// A sentence compiled against a signature for repeated evaluation.
///
/// Variables are resolved to slots by name, so a subformula shared between
/// several parents evaluates identically in each of them; shared subformulas
/// are memoized per evaluation on the values of their free variables.
class Evaluator {
public:
    Evaluator(const Signature& sig, Sentence sentence) : root_sentence_(std::move(sentence)) {
        root_ = compile(root_sentence_, sig);
        for (auto& n : nodes_) {
            n.memo = n.refs > 1 && n.kind != NodeKind::Atom && n.kind != NodeKind::Eq;
        }
    }

    const Sentence& sentence() const { return root_sentence_; }

    /// Free variables the assignment must bind.
    const std::vector<std::string>& free_vars() const { return root_sentence_.free_vars(); }

    bool operator()(const Structure& m, const Assignment& assignment = {}) {
        values_.assign(slot_names_.size(), -1);
        for (const auto& v : root_sentence_.free_vars()) {
            auto it = assignment.find(v);
            if (it == assignment.end()) throw MalformedSentence("unbound variable '" + v + "'");
            if (it->second < 0 || it->second >= m.size()) {
                throw MalformedSentence("variable '" + v + "' assigned out-of-range element " + std::to_string(it->second));
            }
            values_[slot_of_.at(v)] = it->second;
        }
        m_ = &m;
        memo_.resize(nodes_.size());
        bool result = eval(root_);
        for (int idx : touched_) memo_[static_cast<std::size_t>(idx)].clear();
        touched_.clear();
        m_ = nullptr;
        return result;
    }

private:
    struct Node {
        NodeKind kind;
        std::size_t rel = 0;
        std::vector<int> args;
        std::vector<int> children;
        int bound = -1;
        std::vector<int> free;
        int refs = 0;
        bool memo = false;
    };

    int slot(const std::string& name) {
        auto it = slot_of_.find(name);
        if (it != slot_of_.end()) return it->second;
        int s = static_cast<int>(slot_names_.size());
        slot_of_.emplace(name, s);
        slot_names_.push_back(name);
        return s;
    }

    int compile(const Sentence& s, const Signature& sig) {
        auto found = index_of_.find(s.node());
        if (found != index_of_.end()) {
            ++nodes_[static_cast<std::size_t>(found->second)].refs;
            return found->second;
        }
        Node n;
        n.kind = s.kind();
        n.refs = 1;
        switch (s.kind()) {
            case NodeKind::Atom: {
                auto rel = sig.index_of(s.name());
                if (!rel) throw MalformedSentence("unknown relation '" + s.name() + "'");
                if (static_cast<int>(s.vars().size()) != sig[*rel].arity) {
                    throw MalformedSentence("relation '" + s.name() + "' has arity " + std::to_string(sig[*rel].arity) +
                                            " but atom has " + std::to_string(s.vars().size()) + " arguments");
                }
                n.rel = *rel;
                for (const auto& v : s.vars()) n.args.push_back(slot(v));
                break;
            }
            case NodeKind::Eq:
                for (const auto& v : s.vars()) n.args.push_back(slot(v));
                break;
            case NodeKind::Exists:
            case NodeKind::Forall:
                n.bound = slot(s.name());
                break;
            default:
                break;
        }
        for (const auto& v : s.free_vars()) n.free.push_back(slot(v));
        std::vector<int> kids;
        kids.reserve(s.children().size());
        for (const auto& c : s.children()) kids.push_back(compile(c, sig));
        n.children = std::move(kids);
        int idx = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(n));
        index_of_.emplace(s.node(), idx);
        return idx;
    }

    bool eval(int idx) {
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (!n.memo) return compute(n);
        const auto size = static_cast<std::size_t>(m_->size());
        std::size_t key = 0;
        std::size_t cells = 1;
        for (int f : n.free) {
            key = key * size + static_cast<std::size_t>(values_[static_cast<std::size_t>(f)]);
            cells *= size;
            if (cells > kMaxMemoCells) return compute(n);
        }
        auto& table = memo_[static_cast<std::size_t>(idx)];
        if (table.empty()) {
            table.assign(cells, 0);
            touched_.push_back(idx);
        }
        if (table[key] != 0) return table[key] == 2;
        bool r = compute(n);
        memo_[static_cast<std::size_t>(idx)][key] = r ? 2 : 1;
        return r;
    }

    bool compute(const Node& n) {
        switch (n.kind) {
            case NodeKind::Atom: {
                scratch_.clear();
                for (int a : n.args) scratch_.push_back(values_[static_cast<std::size_t>(a)]);
                return m_->holds(n.rel, scratch_);
            }
            case NodeKind::Eq:
                return values_[static_cast<std::size_t>(n.args[0])] == values_[static_cast<std::size_t>(n.args[1])];
            case NodeKind::Not:
                return !eval(n.children[0]);
            case NodeKind::And:
                for (int c : n.children) {
                    if (!eval(c)) return false;
                }
                return true;
            case NodeKind::Or:
                for (int c : n.children) {
                    if (eval(c)) return true;
                }
                return false;
            case NodeKind::Exists:
            case NodeKind::Forall: {
                const bool want = n.kind == NodeKind::Exists;
                auto& slot_value = values_[static_cast<std::size_t>(n.bound)];
                const int saved = slot_value;
                bool result = !want;
                for (int e = 0; e < m_->size(); ++e) {
                    values_[static_cast<std::size_t>(n.bound)] = e;
                    if (eval(n.children[0]) == want) {
                        result = want;
                        break;
                    }
                }
                values_[static_cast<std::size_t>(n.bound)] = saved;
                return result;
            }
        }
        return false;
    }

    static constexpr std::size_t kMaxMemoCells = std::size_t{1} << 16;

    Sentence root_sentence_;
    int root_ = 0;
    std::vector<Node> nodes_;
    std::unordered_map<const SentenceNode*, int> index_of_;
    std::unordered_map<std::string, int> slot_of_;
    std::vector<std::string> slot_names_;

    const Structure* m_ = nullptr;
    std::vector<int> values_;
    std::vector<int> scratch_;
    std::vector<std::vector<std::uint8_t>> memo_;
    std::vector<int> touched_;
};

/// Truth of `sentence` in `m` under `assignment` (Tarskian semantics; empty
/// conjunction is true, empty disjunction false).
inline bool eval(const Structure& m, const Sentence& sentence, const Assignment& assignment = {}) {
    Evaluator ev(m.signature(), sentence);
    return ev(m, assignment);
}

/// Throws MalformedSentence unless `s` is a closed sentence over `sig`.
inline void check_well_formed(const Signature& sig, const Sentence& s) {
    Evaluator ev(sig, s);
    if (!s.closed()) throw MalformedSentence("sentence has free variable '" + s.free_vars().front() + "'");
}

}  // namespace indax
