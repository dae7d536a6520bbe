#pragma once

// Brute-force ground truth. Nothing here depends on the scott module: the
// α-type oracle is the literal recursion, isomorphism is permutation search.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "indax/error.hpp"
#include "indax/model/structure.hpp"

namespace indax::verify {

struct OracleLimits {
    int max_level = 6;
    int max_size = 4;
};

/// Memoized direct recursion on the α-type conditions:
///   α = 0:   same atomic and negated atomic formulas (equalities included);
///   α + 1:   ∀c∈M ∃d∈N (a⃗c ≡_α b⃗d) and ∀d∈N ∃c∈M (a⃗c ≡_α b⃗d).
/// One instance serves every query on a fixed pair of structures.
class TypeOracle {
public:
    TypeOracle(const Structure& m, const Structure& n, OracleLimits limits = {}) : m_(m), n_(n), limits_(limits) {
        if (m.size() > limits_.max_size || n.size() > limits_.max_size) {
            throw CapExceeded("type oracle limited to structures of size <= " + std::to_string(limits_.max_size));
        }
        if (!(m.signature() == n.signature())) throw SignatureMismatch("oracle needs structures over one signature");
        dense_.resize(static_cast<std::size_t>(std::max(limits_.max_level, 0) + 1) * (kMaxLength + 1));
    }

    bool equal(std::span<const int> a, std::span<const int> b, int level) {
        if (a.size() != b.size()) throw PreconditionError("tuples of different lengths");
        if (level < 0 || level > limits_.max_level) {
            throw CapExceeded("type oracle level cap " + std::to_string(limits_.max_level) + " exceeded");
        }
        if (a.size() + static_cast<std::size_t>(level) > kMaxLength) throw CapExceeded("type oracle tuple length cap exceeded");
        for (int e : a) {
            if (e < 0 || e >= m_.size()) throw PreconditionError("tuple entry out of range");
        }
        for (int e : b) {
            if (e < 0 || e >= n_.size()) throw PreconditionError("tuple entry out of range");
        }
        Tuple x(a.begin(), a.end());
        Tuple y(b.begin(), b.end());
        return rec(x, y, level);
    }

private:
    static constexpr std::size_t kMaxLength = 9;
    static constexpr std::size_t kDenseCells = std::size_t{1} << 20;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Fixed layout: level, length, then kMaxLength 3-bit slots for each tuple.
    static std::uint64_t key(const Tuple& a, const Tuple& b, int level) {
        std::uint64_t ka = 0, kb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            ka |= static_cast<std::uint64_t>(a[i]) << (3 * i);
            kb |= static_cast<std::uint64_t>(b[i]) << (3 * i);
        }
        return (static_cast<std::uint64_t>(level) << 58) | (static_cast<std::uint64_t>(a.size()) << 54) | (ka << 27) | kb;
    }

    /// Slot in the dense table for (level, length), or npos when that table would be too large.
    std::size_t dense_index(const Tuple& a, const Tuple& b, int level) {
        const std::size_t radix = static_cast<std::size_t>(m_.size() * n_.size());
        std::size_t cells = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            cells *= radix;
            if (cells > kDenseCells) return npos;
        }
        auto& table = dense_[static_cast<std::size_t>(level) * (kMaxLength + 1) + a.size()];
        if (table.empty()) table.assign(cells, -1);
        std::size_t idx = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            idx = idx * radix + static_cast<std::size_t>(a[i] * n_.size() + b[i]);
        }
        return idx;
    }

    bool atomic_agree(const Tuple& a, const Tuple& b) const {
        const std::size_t len = a.size();
        for (std::size_t i = 0; i < len; ++i) {
            for (std::size_t j = 0; j < len; ++j) {
                if ((a[i] == a[j]) != (b[i] == b[j])) return false;
            }
        }
        if (len == 0) return true;
        for (std::size_t r = 0; r < m_.signature().size(); ++r) {
            const auto arity = static_cast<std::size_t>(m_.signature()[r].arity);
            std::size_t combos = 1;
            for (std::size_t i = 0; i < arity; ++i) combos *= len;
            Tuple x(arity), y(arity);
            for (std::size_t c = 0; c < combos; ++c) {
                std::size_t rest = c;
                for (std::size_t i = 0; i < arity; ++i) {
                    x[i] = a[rest % len];
                    y[i] = b[rest % len];
                    rest /= len;
                }
                if (m_.holds(r, x) != n_.holds(r, y)) return false;
            }
        }
        return true;
    }

    bool rec(Tuple& a, Tuple& b, int level) {
        if (level == 0) return atomic_agree(a, b);
        const auto slot = dense_index(a, b, level);
        if (slot != npos) {
            auto& cell = dense_[static_cast<std::size_t>(level) * (kMaxLength + 1) + a.size()][slot];
            if (cell < 0) cell = (forth(a, b, level) && back(a, b, level)) ? 1 : 0;
            return cell == 1;
        }
        const auto k = key(a, b, level);
        if (auto it = memo_.find(k); it != memo_.end()) return it->second;
        bool result = forth(a, b, level) && back(a, b, level);
        memo_.emplace(k, result);
        return result;
    }

    bool forth(Tuple& a, Tuple& b, int level) {
        for (int c = 0; c < m_.size(); ++c) {
            a.push_back(c);
            bool found = false;
            for (int d = 0; d < n_.size() && !found; ++d) {
                b.push_back(d);
                found = rec(a, b, level - 1);
                b.pop_back();
            }
            a.pop_back();
            if (!found) return false;
        }
        return true;
    }

    bool back(Tuple& a, Tuple& b, int level) {
        for (int d = 0; d < n_.size(); ++d) {
            b.push_back(d);
            bool found = false;
            for (int c = 0; c < m_.size() && !found; ++c) {
                a.push_back(c);
                found = rec(a, b, level - 1);
                a.pop_back();
            }
            b.pop_back();
            if (!found) return false;
        }
        return true;
    }

    const Structure& m_;
    const Structure& n_;
    OracleLimits limits_;
    std::unordered_map<std::uint64_t, bool> memo_;
    // Per (level, length): -1 unknown, else the answer.
    std::vector<std::vector<std::int8_t>> dense_;
};

inline bool oracle_types_equal(const Structure& m, std::span<const int> a, const Structure& n, std::span<const int> b,
                               int level, OracleLimits limits = {}) {
    return TypeOracle(m, n, limits).equal(a, b, level);
}

/// Exhaustive permutation search. Returns f with R^M(x⃗) ⇔ R^N(f(x⃗)).
inline std::optional<std::vector<int>> oracle_isomorphism(const Structure& m, const Structure& n, int max_size = 8) {
    if (m.size() > max_size || n.size() > max_size) {
        throw CapExceeded("isomorphism oracle limited to size <= " + std::to_string(max_size));
    }
    if (!(m.signature() == n.signature())) throw SignatureMismatch("isomorphism test across signatures");
    if (m.size() != n.size()) return std::nullopt;
    std::vector<int> f(static_cast<std::size_t>(m.size()));
    std::iota(f.begin(), f.end(), 0);
    const auto size = static_cast<std::size_t>(m.size());
    do {
        bool ok = true;
        for (std::size_t r = 0; r < m.signature().size() && ok; ++r) {
            const auto arity = static_cast<std::size_t>(m.signature()[r].arity);
            std::size_t combos = 1;
            for (std::size_t i = 0; i < arity; ++i) combos *= size;
            Tuple x(arity), y(arity);
            for (std::size_t c = 0; c < combos && ok; ++c) {
                std::size_t rest = c;
                for (std::size_t i = 0; i < arity; ++i) {
                    x[i] = static_cast<int>(rest % size);
                    y[i] = f[static_cast<std::size_t>(x[i])];
                    rest /= size;
                }
                ok = m.holds(r, x) == n.holds(r, y);
            }
        }
        if (ok) return f;
    } while (std::next_permutation(f.begin(), f.end()));
    return std::nullopt;
}

inline bool oracle_isomorphic(const Structure& m, const Structure& n, int max_size = 8) {
    return oracle_isomorphism(m, n, max_size).has_value();
}

}  // namespace indax::verify
