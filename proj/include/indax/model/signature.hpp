#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indax/error.hpp"

namespace indax {

struct RelationSymbol {
    std::string name;
    int arity = 1;

    friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

/// A finite relational signature. Order of relations is significant: it fixes
/// the bit layout used by canonical forms and enumeration.
class Signature {
public:
    Signature() = default;

    explicit Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            if (relations_[i].arity < 1) {
                throw InvalidStructure("relation '" + relations_[i].name + "' has arity < 1");
            }
            if (relations_[i].name.empty()) {
                throw InvalidStructure("relation with empty name");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (relations_[j].name == relations_[i].name) {
                    throw InvalidStructure("duplicate relation '" + relations_[i].name + "'");
                }
            }
        }
    }

    const std::vector<RelationSymbol>& relations() const { return relations_; }
    std::size_t size() const { return relations_.size(); }
    bool empty() const { return relations_.empty(); }
    const RelationSymbol& operator[](std::size_t i) const { return relations_[i]; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            if (relations_[i].name == name) return i;
        }
        return std::nullopt;
    }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<RelationSymbol> relations_;
};

}  // namespace indax
