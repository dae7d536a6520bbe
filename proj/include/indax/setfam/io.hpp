#pragma once

// Family file: {"universe": 8, "sets": [[0,1,2],[2,3]]}

#include <cstddef>
#include <vector>

#include "indax/model/io.hpp"
#include "indax/setfam/family.hpp"

namespace indax {

inline json family_to_json(const SetFamily& f) {
    json sets = json::array();
    for (const auto& s : f.elements()) sets.push_back(s);
    return {{"universe", f.universe_size()}, {"sets", std::move(sets)}};
}

inline SetFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("universe") || !j.contains("sets")) {
        throw ParseError("family needs 'universe' and 'sets'", 1, 1);
    }
    if (!j["universe"].is_number_integer() || j["universe"].get<long long>() < 1) {
        throw ParseError("'universe' must be a positive integer", 1, 1);
    }
    if (!j["sets"].is_array()) throw ParseError("'sets' must be an array", 1, 1);
    std::vector<std::vector<std::size_t>> sets;
    for (const auto& s : j["sets"]) {
        if (!s.is_array()) throw ParseError("each set must be an array", 1, 1);
        std::vector<std::size_t> elems;
        for (const auto& e : s) {
            if (!e.is_number_integer() || e.get<long long>() < 0) throw ParseError("set elements must be integers >= 0", 1, 1);
            elems.push_back(e.get<std::size_t>());
        }
        sets.push_back(std::move(elems));
    }
    try {
        return SetFamily(j["universe"].get<std::size_t>(), sets);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

}  // namespace indax
