#pragma once

#include "mask.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace boollat {

// SplitMix64: tiny, fast, and fully specified, so seeded runs produce
// identical streams on every platform. Standard-library distributions are
// deliberately not used anywhere results reach a report.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("below(0)");
        std::uint64_t zone = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            std::uint64_t x = next();
            if (x < zone) return x % bound;
        }
    }

    // Derive an independent stream, e.g. per trial index.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
        return g.next();
    }
};

// 0-based permutation: element at position i maps to perm[i].
using Permutation = std::vector<int>;

inline bool is_valid_permutation(const Permutation& pi) {
    std::vector<bool> seen(pi.size(), false);
    for (int v : pi) {
        if (v < 0 || static_cast<std::size_t>(v) >= pi.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

// Uniform permutation of {0,...,n-1} by Fisher-Yates, deterministic per seed.
inline Permutation sample_permutation(int n, std::uint64_t seed) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    SplitMix64 g(seed);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(g.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

// Image of a subset under the induced action on ground elements.
inline SetMask apply_permutation(const Permutation& pi, SetMask a) {
    SetMask r = 0;
    for (std::size_t i = 0; i < pi.size(); ++i)
        if ((a >> i) & 1u) r |= SetMask{1} << pi[i];
    if ((a >> pi.size()) != 0) throw std::invalid_argument("mask exceeds permutation ground set");
    return r;
}

} // namespace boollat
