#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "srr/lp_oracle.hpp"
#include "srr/routing.hpp"
#include "srr/storage_model.hpp"

namespace srr::test {

// The four-node two-file system from the worked two-file example, in the
// original node order: two systematic-a nodes, one coded, one systematic-b.
inline StorageSystem example1_system() {
    return StorageSystem(
        2,
        {NodeKind::systematic(0), NodeKind::systematic(0), NodeKind::coded(),
         NodeKind::systematic(1)},
        1);
}

// Random rational in [0, hi] with the given denominator grid.
inline Rat random_rat(std::mt19937_64& rng, const Rat& hi, long den = 16) {
    const Rat steps = rat_floor(hi * den);
    const long n = steps.get_num().get_si();
    if (n <= 0) return Rat(0);
    std::uniform_int_distribution<long> dist(0, n);
    return frac(dist(rng), den);
}

// Random point inside the all-coded simplex sum(l) <= (C/K) mu.
inline std::vector<Rat> random_simplex_point(std::mt19937_64& rng, int dims,
                                             const Rat& budget, long den = 16) {
    std::vector<Rat> out(dims, Rat(0));
    Rat left = budget;
    for (int i = 0; i < dims; ++i) {
        out[i] = random_rat(rng, left, den);
        left -= out[i];
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

inline std::vector<Rat> rats(std::initializer_list<const char*> vals) {
    std::vector<Rat> out;
    for (const char* v : vals) out.push_back(parse_rational(v));
    return out;
}

}  // namespace srr::test
