#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/signature.hpp"

namespace indax {

using Tuple = std::vector<int>;

namespace detail {

inline std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace detail

/// A finite relational structure with universe {0, ..., size-1}.
///
/// Relations are stored as dense truth tables indexed in lexicographic tuple
/// order, so two structures are equal exactly when their signatures, sizes and
/// tables agree.
class Structure {
public:
    Structure(Signature sig, int size)
        : Structure(std::make_shared<const Signature>(std::move(sig)), size) {}

    Structure(std::shared_ptr<const Signature> sig, int size) : sig_(std::move(sig)), size_(size) {
        if (size_ < 1) throw InvalidStructure("structure size must be >= 1");
        tables_.reserve(sig_->size());
        for (const auto& rel : sig_->relations()) {
            tables_.emplace_back(detail::ipow(static_cast<std::size_t>(size_), rel.arity), 0);
        }
    }

    /// Builds a structure from explicit tuple lists, one list per relation in
    /// signature order. Rejects out-of-range entries, wrong arities and duplicates.
    Structure(Signature sig, int size, const std::vector<std::vector<Tuple>>& tables)
        : Structure(std::move(sig), size) {
        if (tables.size() != sig_->size()) {
            throw InvalidStructure("expected " + std::to_string(sig_->size()) + " relation tables, got " +
                                   std::to_string(tables.size()));
        }
        for (std::size_t r = 0; r < tables.size(); ++r) {
            for (const auto& t : tables[r]) {
                if (static_cast<int>(t.size()) != (*sig_)[r].arity) {
                    throw InvalidStructure("tuple of wrong arity in relation '" + (*sig_)[r].name + "'");
                }
                for (int e : t) {
                    if (e < 0 || e >= size_) {
                        throw InvalidStructure("tuple entry " + std::to_string(e) + " out of range in relation '" +
                                               (*sig_)[r].name + "'");
                    }
                }
                auto idx = index_of(t);
                if (tables_[r][idx]) {
                    throw InvalidStructure("duplicate tuple in relation '" + (*sig_)[r].name + "'");
                }
                tables_[r][idx] = 1;
            }
        }
    }

    const Signature& signature() const { return *sig_; }
    const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
    int size() const { return size_; }

    bool holds(std::size_t rel, std::span<const int> args) const { return tables_[rel][index_of(args)] != 0; }

    void set(std::size_t rel, std::span<const int> args, bool value) { tables_[rel][index_of(args)] = value ? 1 : 0; }

    /// Raw table for one relation; entry k is the k-th tuple in lexicographic order.
    const std::vector<std::uint8_t>& table(std::size_t rel) const { return tables_[rel]; }
    std::vector<std::uint8_t>& table(std::size_t rel) { return tables_[rel]; }

    std::vector<Tuple> tuples(std::size_t rel) const {
        std::vector<Tuple> out;
        const int arity = (*sig_)[rel].arity;
        for (std::size_t k = 0; k < tables_[rel].size(); ++k) {
            if (!tables_[rel][k]) continue;
            Tuple t(static_cast<std::size_t>(arity));
            std::size_t rest = k;
            for (int i = arity - 1; i >= 0; --i) {
                t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(size_));
                rest /= static_cast<std::size_t>(size_);
            }
            out.push_back(std::move(t));
        }
        return out;
    }

    /// The image of this structure under the bijection element e -> perm[e].
    Structure permuted(std::span<const int> perm) const {
        Structure out(sig_, size_);
        for (std::size_t r = 0; r < sig_->size(); ++r) {
            for (auto t : tuples(r)) {
                for (auto& e : t) e = perm[static_cast<std::size_t>(e)];
                out.set(r, t, true);
            }
        }
        return out;
    }

    friend bool operator==(const Structure& a, const Structure& b) {
        return a.size_ == b.size_ && (a.sig_ == b.sig_ || *a.sig_ == *b.sig_) && a.tables_ == b.tables_;
    }

private:
    std::size_t index_of(std::span<const int> args) const {
        std::size_t idx = 0;
        for (int e : args) idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(e);
        return idx;
    }

    std::shared_ptr<const Signature> sig_;
    int size_;
    std::vector<std::vector<std::uint8_t>> tables_;
};

}  // namespace indax
