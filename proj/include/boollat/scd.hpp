#pragma once

#include "mask.hpp"
#include "numeric.hpp"
#include "rng.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace boollat {

// A partition of P(n) into symmetric saturated chains: each chain has exactly
// one set of every size between k and n-k for some k, ordered by inclusion.
struct SCD {
    int n = 0;
    std::vector<std::vector<SetMask>> chains;
};

namespace detail {

// Bracket matching behind the chain rule. Position i (element i+1) reads as
// '(' when the element is absent and ')' when present; matching scans left to
// right. Moving up a chain flips the leftmost unmatched '(' (inserting an
// element), moving down flips the rightmost unmatched ')'.
struct BracketState {
    SetMask unmatched_open = 0;  // absent elements still open
    SetMask unmatched_close = 0; // present elements never matched
};

inline BracketState match_brackets(SetMask a, int n) {
    BracketState st;
    SetMask stack = 0; // open positions, as a mask (top = highest set bit)
    for (int i = 0; i < n; ++i) {
        if (((a >> i) & 1u) == 0) {
            stack |= SetMask{1} << i;
        } else if (stack != 0) {
            // pop the most recent open position
            int top = 63 - std::countl_zero(stack);
            stack &= ~(SetMask{1} << top);
        } else {
            st.unmatched_close |= SetMask{1} << i;
        }
    }
    st.unmatched_open = stack;
    return st;
}

} // namespace detail

// Next set up the chain through A, if any.
inline std::optional<SetMask> chain_successor(SetMask a, int n) {
    SetMask open = detail::match_brackets(a, n).unmatched_open;
    if (open == 0) return std::nullopt;
    return a | (open & -open); // leftmost unmatched '(' = lowest set bit
}

// Previous set down the chain through A, if any.
inline std::optional<SetMask> chain_predecessor(SetMask a, int n) {
    SetMask close = detail::match_brackets(a, n).unmatched_close;
    if (close == 0) return std::nullopt;
    int top = 63 - std::countl_zero(close); // rightmost unmatched ')'
    return a & ~(SetMask{1} << top);
}

// Canonical symmetric chain decomposition of P(n) via the bracketing rule.
// Chains are listed by ascending bottom mask; deterministic for fixed n.
inline SCD build_scd(int n) {
    SCD scd;
    scd.n = n;
    SetMask all = full_mask(n);
    for (SetMask m = 0;; ++m) {
        if (!chain_predecessor(m, n).has_value()) {
            std::vector<SetMask> chain{m};
            SetMask cur = m;
            while (auto up = chain_successor(cur, n)) {
                cur = *up;
                chain.push_back(cur);
            }
            scd.chains.push_back(std::move(chain));
        }
        if (m == all) break;
    }
    return scd;
}

// Full invariant audit: exact partition of P(n), binomial(n, floor(n/2))
// chains, and every chain saturated, inclusion-ordered, and symmetric.
inline bool validate_scd(const SCD& scd) {
    int n = scd.n;
    if (n < 0 || n > 25) return false;
    std::vector<char> seen(std::size_t{1} << n, 0);
    for (const auto& chain : scd.chains) {
        if (chain.empty()) return false;
        int lo = popcount(chain.front());
        int hi = popcount(chain.back());
        if (lo + hi != n) return false; // symmetric around n/2
        for (std::size_t i = 0; i < chain.size(); ++i) {
            SetMask m = chain[i];
            if (!mask_in_ground(m, n)) return false;
            if (popcount(m) != lo + static_cast<int>(i)) return false; // saturated
            if (i > 0 && !subset_of(chain[i - 1], m)) return false;    // inclusion-ordered
            if (seen[m]) return false;
            seen[m] = 1;
        }
    }
    for (char c : seen)
        if (!c) return false;
    return binomial(static_cast<unsigned>(n), static_cast<unsigned>(n / 2)) ==
           BigCount(scd.chains.size());
}

inline SCD apply_permutation(const Permutation& pi, const SCD& scd) {
    SCD out;
    out.n = scd.n;
    out.chains.reserve(scd.chains.size());
    for (const auto& chain : scd.chains) {
        std::vector<SetMask> image;
        image.reserve(chain.size());
        for (SetMask m : chain) image.push_back(apply_permutation(pi, m));
        out.chains.push_back(std::move(image));
    }
    return out;
}

} // namespace boollat
