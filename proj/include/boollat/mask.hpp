#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace boollat {

// A subset of [n] = {1, ..., n} as a bit vector: element i <-> bit i-1.
// Ground sets are limited to n <= 63 so a subset always fits one word.
using SetMask = std::uint64_t;

inline constexpr int kMaxGroundSize = 63;

inline int popcount(SetMask m) { return std::popcount(m); }

inline SetMask full_mask(int n) {
    if (n < 0 || n > kMaxGroundSize) throw std::invalid_argument("ground size out of range");
    return n == 0 ? 0 : (~SetMask{0} >> (64 - n));
}

inline bool mask_in_ground(SetMask m, int n) { return (m & ~full_mask(n)) == 0; }

// |A triangle B|, the Hamming distance between subsets.
inline int hamming_distance(SetMask a, SetMask b) { return popcount(a ^ b); }

inline bool subset_of(SetMask a, SetMask b) { return (a & ~b) == 0; }

inline bool comparable(SetMask a, SetMask b) { return subset_of(a, b) || subset_of(b, a); }

inline bool has_element(SetMask m, int element) { return (m >> (element - 1)) & 1u; }

inline SetMask with_element(SetMask m, int element) { return m | (SetMask{1} << (element - 1)); }

inline SetMask without_element(SetMask m, int element) { return m & ~(SetMask{1} << (element - 1)); }

// Lowercase hex rendering without a 0x prefix (the family file format).
inline std::string mask_to_hex(SetMask m) {
    if (m == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    while (m != 0) {
        s.insert(s.begin(), digits[m & 0xf]);
        m >>= 4;
    }
    return s;
}

inline SetMask hex_to_mask(const std::string& s) {
    if (s.empty() || s.size() > 16) throw std::invalid_argument("bad hex mask: '" + s + "'");
    SetMask m = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw std::invalid_argument("bad hex mask: '" + s + "'");
        m = (m << 4) | static_cast<SetMask>(d);
    }
    return m;
}

// Human-readable set notation, e.g. "{1,3}"; used in error messages only.
inline std::string mask_to_set_string(SetMask m) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 64; ++i) {
        if ((m >> i) & 1u) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

// Next mask with the same popcount (Gosper's hack); returns 0 when exhausted
// within the ground set, caller checks containment.
inline SetMask next_same_popcount(SetMask v) {
    if (v == 0) return 0;
    SetMask c = v & -v;
    SetMask r = v + c;
    return r | (((v ^ r) >> 2) / c);
}

} // namespace boollat
