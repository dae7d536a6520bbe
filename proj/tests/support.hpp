#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "indax/model/sexpr.hpp"
#include "indax/model/structure.hpp"

namespace indax::testing {

inline Signature binary_sig() { return Signature({{"R", 2}}); }
inline Signature unary_sig() { return Signature({{"P", 1}}); }
inline Signature mixed_sig() { return Signature({{"P", 1}, {"R", 2}}); }

/// Directed n-cycle i -> i+1.
inline Structure cycle(int n) {
    std::vector<Tuple> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Structure(binary_sig(), n, {edges});
}

/// Directed path 0 -> 1 -> ... -> n-1.
inline Structure path(int n) {
    std::vector<Tuple> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Structure(binary_sig(), n, {edges});
}

/// Strict linear order i < j.
inline Structure linear_order(int n) {
    std::vector<Tuple> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    }
    return Structure(binary_sig(), n, {pairs});
}

inline Structure unary(int n, std::vector<int> members) {
    std::vector<Tuple> rows;
    for (int e : members) rows.push_back({e});
    return Structure(unary_sig(), n, {rows});
}

/// Every labeled structure of size n, in table-encoding order.
inline std::vector<Structure> all_labeled(const Signature& sig, int n) {
    Structure blank(sig, n);
    std::size_t bits = 0;
    for (std::size_t r = 0; r < sig.size(); ++r) bits += blank.table(r).size();
    std::vector<Structure> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
        Structure m = blank;
        std::size_t b = 0;
        for (std::size_t r = 0; r < sig.size(); ++r) {
            for (auto& cell : m.table(r)) cell = (code >> b++) & 1u;
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline Sentence S(const std::string& text) { return parse_sentence(text); }

}  // namespace indax::testing
