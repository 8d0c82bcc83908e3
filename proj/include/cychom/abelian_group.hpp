#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace cychom {

// Isomorphism type of a finitely generated abelian group:
// Z^free_rank (+) Z/d_1 (+) ... with d_1 | d_2 | ..., all d_i > 1.
struct AbelianGroupStructure {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    std::size_t generator_count() const { return free_rank + torsion.size(); }

    bool operator==(const AbelianGroupStructure& o) const = default;

    std::string format() const {
        if (trivial()) return "0";
        std::string s;
        auto append = [&s](const std::string& part) {
            if (!s.empty()) s += " \xE2\x8A\x95 "; // " ⊕ "
            s += part;
        };
        if (free_rank == 1) append("\xE2\x84\xA4"); // "ℤ"
        else if (free_rank > 1) append("\xE2\x84\xA4^" + std::to_string(free_rank));
        for (const Int& d : torsion) append("\xE2\x84\xA4/" + d.str());
        return s;
    }
};

} // namespace cychom
