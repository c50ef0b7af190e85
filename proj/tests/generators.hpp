#pragma once

// Small seeded generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "cyclofree/cyclotomic.hpp"

namespace testgen {

inline const std::vector<unsigned>& conductors() {
    static const std::vector<unsigned> all{3, 4, 5, 7, 8, 9, 12, 15, 16};
    return all;
}

inline cyclofree::CycInt random_element(const cyclofree::Conductor& cond, std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<cyclofree::BigInt> c(cond.degree());
    for (auto& v : c) v = dist(rng);
    return {cond, std::move(c)};
}

inline cyclofree::CycInt random_nonzero(const cyclofree::Conductor& cond, std::mt19937_64& rng, long bound) {
    for (;;) {
        auto x = random_element(cond, rng, bound);
        if (!x.is_zero()) return x;
    }
}

}  // namespace testgen
