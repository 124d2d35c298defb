#pragma once

#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/mask.hpp"
#include "boollat/numeric.hpp"

#include <stdexcept>
#include <vector>

namespace boollat {

namespace detail {

// All size-u submasks of s, in combination order of the bit positions.
inline std::vector<SetMask> subsets_of_size(SetMask s, int u) {
    std::vector<int> bits;
    for (int i = 0; i < 64; ++i)
        if (s >> i & 1) bits.push_back(i);
    std::vector<SetMask> out;
    if (u < 0 || u > static_cast<int>(bits.size())) return out;
    std::vector<int> idx(u);
    for (int i = 0; i < u; ++i) idx[i] = i;
    while (true) {
        SetMask m = 0;
        for (int i : idx) m |= SetMask{1} << bits[i];
        out.push_back(m);
        int pos = u - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(bits.size()) - u + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < u; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

} // namespace detail

// Volume of a Hamming ball of radius t in P(n).
inline BigCount ball_volume(int n, int t) {
    BigCount v = 0;
    for (int k = 0; k <= t; ++k) v += binomial(n, k);
    return v;
}

// Sphere-packing bound 2^n / V(n,t), exact.
inline Rational hamming_bound(int n, int t) {
    return Rational(pow2(static_cast<unsigned>(n)), ball_volume(n, t));
}

inline Family ball(SetMask center, int r, int n) {
    if (r > n) throw std::invalid_argument("radius exceeds ground set");
    if (!mask_in_ground(center, n)) throw std::invalid_argument("center outside ground set");
    Family f;
    f.n = n;
    for (SetMask m = 0; m <= full_mask(n); ++m) {
        if (hamming_distance(center, m) <= r) f.members.push_back(m);
        if (m == full_mask(n)) break;
    }
    return f;
}

// Pairwise distance at least d.
inline bool is_code(const Family& f, int d) {
    for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = i + 1; j < f.members.size(); ++j)
            if (hamming_distance(f.members[i], f.members[j]) < d) return false;
    return true;
}

// A t-error-correcting code whose radius-t balls tile the whole cube.
inline bool is_perfect(const Family& f, int t) {
    if (!is_code(f, 2 * t + 1)) return false;
    if (Rational(BigCount(f.members.size())) != hamming_bound(f.n, t)) return false;
    std::vector<char> covered(std::size_t{1} << f.n, 0);
    for (SetMask c : f.members)
        for (SetMask m : ball(c, t, f.n).members) {
            if (covered[m]) return false;
            covered[m] = 1;
        }
    for (char x : covered)
        if (!x) return false;
    return true;
}

// The [7,4] single-error-correcting code with parity checks on positions
// 1, 2 and 4: data bits at positions 3, 5, 6, 7.
inline Family hamming_code_7_4() {
    Family f;
    f.n = 7;
    for (unsigned data = 0; data < 16; ++data) {
        SetMask word = 0;
        const int data_pos[] = {3, 5, 6, 7};
        for (int i = 0; i < 4; ++i)
            if (data >> i & 1) word = with_element(word, data_pos[i]);
        for (int p : {1, 2, 4}) {
            int parity = 0;
            for (int pos = 1; pos <= 7; ++pos)
                if ((pos & p) && has_element(word, pos)) parity ^= 1;
            if (parity) word = with_element(word, p);
        }
        f.members.push_back(word);
    }
    f.sort_canonical();
    return f;
}

// Upper bound on 2-(n,k,d) codes: half the falling product n...(n-2k+d)
// over the two descending factorials of the radius split.
inline Rational transport_bound(int n, int k, int d) {
    if (2 * k > n) throw std::invalid_argument("needs 2k <= n");
    if (d < 1 || d > 2 * k) throw std::invalid_argument("distance out of range");
    BigCount num = 1;
    for (int v = n; v >= n - 2 * k + d; --v) num *= v;
    BigCount den = 1;
    for (int v = k; v >= (d + 2) / 2; --v) den *= v; // down to ceil((d+1)/2)
    for (int v = k; v >= (d + 1) / 2; --v) den *= v; // down to floor((d+1)/2)
    return Rational(num, 2 * den);
}

// Number of unordered disjoint k-set pairs whose sides have size u.
inline BigCount pair_space_size(int n, int u) {
    return binomial(n, u) * binomial(n - u, u) / 2;
}

// All unordered pairs (U, V) with |U| = |V| = u, one side inside each side
// of x. The unordered convention identifies (U,V) with (V,U).
inline std::vector<DisjointPair> pair_ball(const DisjointPair& x, int u) {
    int k = popcount(x.first);
    if (u > k) throw std::invalid_argument("sub-pair size exceeds side size");
    if (u == 0) throw std::invalid_argument("sub-pair size must be positive");
    std::vector<DisjointPair> out;
    auto lefts = detail::subsets_of_size(x.first, u);
    auto rights = detail::subsets_of_size(x.second, u);
    for (SetMask a : lefts)
        for (SetMask b : rights) out.push_back(make_disjoint_pair(a, b));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Rational alpha(int n, int t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    return Rational(BigCount(n)) / (Rational(10 * t) * hamming_bound(n, t));
}

inline Rational alpha_transport(int n, int k, int t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    return Rational(BigCount(k)) / (Rational(10 * t) * transport_bound(n, k, 2 * t + 1));
}

// Size of the intersection of two radius-t balls at centre distance d,
// computed by brute force; 0 when the balls are disjoint.
inline BigCount ball_intersection(int n, int t, int d) {
    if (d > n) throw std::invalid_argument("distance exceeds ground set");
    SetMask a = 0, b = full_mask(d);
    BigCount size = 0;
    for (SetMask m = 0;; ++m) {
        if (hamming_distance(a, m) <= t && hamming_distance(b, m) <= t) ++size;
        if (m == full_mask(n)) break;
    }
    return size;
}

} // namespace boollat
