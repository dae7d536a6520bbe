#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/signature.hpp"
#include "indax/model/structure.hpp"

namespace indax {

struct EnumerationLimits {
    std::size_t max_classes = 200000;
    // Upper bound on the number of relation-table bits of a single structure.
    int max_table_bits = 24;
};

/// One representative per isomorphism class of structures of size 1..max_size.
class ModelSpace {
public:
    ModelSpace(Signature sig, int max_size, std::vector<Structure> representatives)
        : sig_(std::move(sig)), max_size_(max_size), reps_(std::move(representatives)) {}

    const Signature& signature() const { return sig_; }
    int max_size() const { return max_size_; }
    const std::vector<Structure>& representatives() const { return reps_; }
    std::size_t size() const { return reps_.size(); }
    const Structure& operator[](std::size_t i) const { return reps_[i]; }

private:
    Signature sig_;
    int max_size_;
    std::vector<Structure> reps_;
};

namespace detail {

/// Bit layout of structures of one size: relation tables concatenated in
/// signature order, tuples in lexicographic order. Encoding position i lives at
/// integer bit (bits-1-i), so integer order is lexicographic order.
class TableLayout {
public:
    TableLayout(const Signature& sig, int n) : n_(n) {
        for (const auto& r : sig.relations()) {
            offsets_.push_back(bits_);
            bits_ += ipow(static_cast<std::size_t>(n), r.arity);
            arities_.push_back(r.arity);
        }
    }

    std::size_t bits() const { return bits_; }

    std::uint64_t encode(const Structure& m) const {
        std::uint64_t code = 0;
        for (std::size_t r = 0; r < arities_.size(); ++r) {
            const auto& t = m.table(r);
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (t[k]) code |= std::uint64_t{1} << (bits_ - 1 - (offsets_[r] + k));
            }
        }
        return code;
    }

    Structure decode(const std::shared_ptr<const Signature>& sig, std::uint64_t code) const {
        Structure m(sig, n_);
        for (std::size_t r = 0; r < arities_.size(); ++r) {
            auto& t = m.table(r);
            for (std::size_t k = 0; k < t.size(); ++k) {
                t[k] = (code >> (bits_ - 1 - (offsets_[r] + k))) & 1u;
            }
        }
        return m;
    }

    /// For a permutation of the universe, the image position of every encoding position.
    std::vector<std::size_t> position_map(std::span<const int> perm) const {
        std::vector<std::size_t> map(bits_);
        for (std::size_t r = 0; r < arities_.size(); ++r) {
            const std::size_t count = ipow(static_cast<std::size_t>(n_), arities_[r]);
            for (std::size_t k = 0; k < count; ++k) {
                std::size_t rest = k;
                std::size_t image = 0;
                std::size_t place = 1;
                for (int i = 0; i < arities_[r]; ++i) {
                    image += static_cast<std::size_t>(perm[rest % static_cast<std::size_t>(n_)]) * place;
                    rest /= static_cast<std::size_t>(n_);
                    place *= static_cast<std::size_t>(n_);
                }
                map[offsets_[r] + k] = offsets_[r] + image;
            }
        }
        return map;
    }

private:
    int n_;
    std::size_t bits_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<int> arities_;
};

inline std::uint64_t apply_map(std::uint64_t code, std::size_t bits, const std::vector<std::size_t>& map) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < bits; ++i) {
        if ((code >> (bits - 1 - i)) & 1u) out |= std::uint64_t{1} << (bits - 1 - map[i]);
    }
    return out;
}

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

}  // namespace detail

/// Lexicographically minimal table encoding over all permutations of the universe.
inline std::uint64_t canonical_code(const Structure& m) {
    if (m.size() > 8) throw CapExceeded("canonical form limited to size <= 8");
    detail::TableLayout layout(m.signature(), m.size());
    if (layout.bits() > 63) throw CapExceeded("structure too large for canonical code");
    const std::uint64_t code = layout.encode(m);
    std::uint64_t best = code;
    for (const auto& p : detail::all_permutations(m.size())) {
        best = std::min(best, detail::apply_map(code, layout.bits(), layout.position_map(p)));
    }
    return best;
}

/// Enumerates one representative (the minimal-encoding labeling) per isomorphism
/// class, ordered by size and then by encoding.
inline ModelSpace enumerate_models(const Signature& sig, int max_size, const EnumerationLimits& limits = {}) {
    if (max_size < 1) throw PreconditionError("max_size must be >= 1");
    if (max_size > 8) throw EnumerationOverflow("enumeration limited to max_size <= 8");
    const auto widest = detail::TableLayout(sig, max_size).bits();
    if (widest > static_cast<std::size_t>(limits.max_table_bits)) {
        throw EnumerationOverflow("size " + std::to_string(max_size) + " needs " + std::to_string(widest) +
                                  " table bits (limit " + std::to_string(limits.max_table_bits) + ")");
    }
    auto shared = std::make_shared<const Signature>(sig);
    std::vector<Structure> reps;
    for (int n = 1; n <= max_size; ++n) {
        detail::TableLayout layout(sig, n);
        std::vector<std::vector<std::size_t>> maps;
        for (const auto& p : detail::all_permutations(n)) maps.push_back(layout.position_map(p));
        const std::uint64_t count = std::uint64_t{1} << layout.bits();
        for (std::uint64_t code = 0; code < count; ++code) {
            bool minimal = true;
            for (const auto& map : maps) {
                if (detail::apply_map(code, layout.bits(), map) < code) {
                    minimal = false;
                    break;
                }
            }
            if (!minimal) continue;
            if (reps.size() >= limits.max_classes) {
                throw EnumerationOverflow("more than " + std::to_string(limits.max_classes) + " isomorphism classes");
            }
            reps.push_back(layout.decode(shared, code));
        }
    }
    return ModelSpace(sig, max_size, std::move(reps));
}

}  // namespace indax
