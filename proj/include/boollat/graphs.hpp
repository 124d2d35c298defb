#pragma once

#include "boollat/family.hpp"
#include "boollat/mask.hpp"
#include "boollat/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace boollat {

enum class GraphKind {
    comparability,
    tilt,
    hamming,
    intersection,
    transport,
    mono_diff,
    bnk,
};

inline const char* kind_name(GraphKind k) {
    switch (k) {
        case GraphKind::comparability: return "comparability";
        case GraphKind::tilt: return "tilt";
        case GraphKind::hamming: return "hamming";
        case GraphKind::intersection: return "intersection";
        case GraphKind::transport: return "transport";
        case GraphKind::mono_diff: return "mono_diff";
        case GraphKind::bnk: return "bnk";
    }
    throw std::logic_error("unknown graph kind");
}

// Unordered pair of disjoint k-sets, stored with first < second.
struct DisjointPair {
    SetMask first = 0;
    SetMask second = 0;
    auto operator<=>(const DisjointPair&) const = default;
};

inline DisjointPair make_disjoint_pair(SetMask a, SetMask b) {
    if (a == b) throw std::invalid_argument("pair members must differ");
    if ((a & b) != 0) throw std::invalid_argument("pair members must be disjoint");
    if (popcount(a) != popcount(b)) throw std::invalid_argument("pair members must have equal size");
    if (a > b) std::swap(a, b);
    return DisjointPair{a, b};
}

inline int transport_distance(const DisjointPair& x, const DisjointPair& y) {
    int same = popcount(x.first & ~y.first) + popcount(x.second & ~y.second);
    int crossed = popcount(x.first & ~y.second) + popcount(x.second & ~y.first);
    return std::min(same, crossed);
}

class ImplicitGraph {
public:
    GraphKind kind;
    int n = 0;
    int p = 0, q = 0;  // tilt
    int t = 0;         // hamming, intersection, transport
    int k = 0;         // transport, bnk
    SetMask R = 0;     // mono_diff

    std::size_t num_vertices() const {
        if (kind == GraphKind::transport) return pairs_.size();
        if (kind == GraphKind::bnk) return verts_.size();
        return std::size_t{1} << n;
    }

    bool is_pair_graph() const { return kind == GraphKind::transport; }

    SetMask mask_of(std::size_t u) const {
        if (kind == GraphKind::transport) throw std::logic_error("pair graph has no mask vertices");
        if (kind == GraphKind::bnk) return verts_[u];
        return static_cast<SetMask>(u);
    }

    const DisjointPair& pair_of(std::size_t u) const {
        if (kind != GraphKind::transport) throw std::logic_error("not a pair graph");
        return pairs_[u];
    }

    std::optional<std::size_t> index_of_mask(SetMask m) const {
        if (kind == GraphKind::transport) return std::nullopt;
        if (kind == GraphKind::bnk) {
            auto it = std::lower_bound(verts_.begin(), verts_.end(), m);
            if (it == verts_.end() || *it != m) return std::nullopt;
            return static_cast<std::size_t>(it - verts_.begin());
        }
        if (!mask_in_ground(m, n)) return std::nullopt;
        return static_cast<std::size_t>(m);
    }

    std::optional<std::size_t> index_of_pair(const DisjointPair& x) const {
        if (kind != GraphKind::transport) return std::nullopt;
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x);
        if (it == pairs_.end() || *it != x) return std::nullopt;
        return static_cast<std::size_t>(it - pairs_.begin());
    }

    bool adjacent(std::size_t u, std::size_t v) const {
        if (u == v) return false;
        switch (kind) {
            case GraphKind::comparability:
                return comparable(mask_of(u), mask_of(v));
            case GraphKind::tilt: {
                SetMask a = mask_of(u), b = mask_of(v);
                int x = popcount(a & ~b), y = popcount(b & ~a);
                return p * x == q * y || q * x == p * y;
            }
            case GraphKind::hamming: {
                int d = hamming_distance(mask_of(u), mask_of(v));
                return d >= 1 && d <= 2 * t;
            }
            case GraphKind::intersection:
                return popcount(mask_of(u) & mask_of(v)) < t;
            case GraphKind::transport:
                return transport_distance(pairs_[u], pairs_[v]) <= 2 * t;
            case GraphKind::mono_diff: {
                SetMask a = mask_of(u), b = mask_of(v);
                if (!comparable(a, b)) return false;
                SetMask diff = a ^ b;
                return subset_of(diff, R) || subset_of(diff, full_mask(n) & ~R);
            }
            case GraphKind::bnk:
                return comparable(verts_[u], verts_[v]);
        }
        throw std::logic_error("unknown graph kind");
    }

    std::size_t degree(std::size_t u) const {
        std::size_t d = 0;
        for (std::size_t v = 0; v < num_vertices(); ++v)
            if (adjacent(u, v)) ++d;
        return d;
    }

    std::vector<std::size_t> neighbors(std::size_t u) const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < num_vertices(); ++v)
            if (adjacent(u, v)) out.push_back(v);
        return out;
    }

    std::string vertex_name(std::size_t u) const {
        if (kind == GraphKind::transport)
            return mask_to_hex(pairs_[u].first) + "|" + mask_to_hex(pairs_[u].second);
        return mask_to_hex(mask_of(u));
    }

    std::string spec_string() const {
        std::string s = std::string(kind_name(kind)) + ":n=" + std::to_string(n);
        switch (kind) {
            case GraphKind::comparability: break;
            case GraphKind::tilt: s += ",p=" + std::to_string(p) + ",q=" + std::to_string(q); break;
            case GraphKind::hamming:
            case GraphKind::intersection: s += ",t=" + std::to_string(t); break;
            case GraphKind::transport:
                s += ",k=" + std::to_string(k) + ",t=" + std::to_string(t);
                break;
            case GraphKind::mono_diff: s += ",R=0x" + mask_to_hex(R); break;
            case GraphKind::bnk: s += ",k=" + std::to_string(k); break;
        }
        return s;
    }

    friend ImplicitGraph comparability_graph(int n);
    friend ImplicitGraph tilt_graph(int n, int p, int q);
    friend ImplicitGraph hamming_graph(int n, int t);
    friend ImplicitGraph intersection_graph(int n, int t);
    friend ImplicitGraph transport_graph(int n, int k, int t);
    friend ImplicitGraph mono_diff_graph(int n, SetMask R);
    friend ImplicitGraph bnk_graph(int n, int k);

private:
    std::vector<SetMask> verts_;       // bnk only
    std::vector<DisjointPair> pairs_;  // transport only

    explicit ImplicitGraph(GraphKind kd, int nn) : kind(kd), n(nn) {
        if (nn < 0 || nn > kMaxGroundSize) throw std::invalid_argument("ground set size out of range");
    }
};

namespace detail {

inline void check_universe_size(const BigCount& count) {
    if (count > BigCount(1) << 24) throw std::invalid_argument("vertex universe too large to materialize");
}

inline std::vector<SetMask> masks_of_size(int n, int k) {
    std::vector<SetMask> out;
    if (k > n) return out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    const SetMask top = full_mask(n) & ~full_mask(n - k);
    for (SetMask m = full_mask(k);; m = next_same_popcount(m)) {
        out.push_back(m);
        if (m == top) break;
    }
    return out;
}

}  // namespace detail

inline ImplicitGraph comparability_graph(int n) { return ImplicitGraph(GraphKind::comparability, n); }

inline ImplicitGraph tilt_graph(int n, int p, int q) {
    if (p < 1 || p >= q) throw std::invalid_argument("tilt requires 1 <= p < q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("tilt requires coprime p, q");
    ImplicitGraph g(GraphKind::tilt, n);
    g.p = p;
    g.q = q;
    return g;
}

inline ImplicitGraph hamming_graph(int n, int t) {
    if (t < 1) throw std::invalid_argument("hamming requires t >= 1");
    ImplicitGraph g(GraphKind::hamming, n);
    g.t = t;
    return g;
}

inline ImplicitGraph intersection_graph(int n, int t) {
    if (t < 1) throw std::invalid_argument("intersection requires t >= 1");
    ImplicitGraph g(GraphKind::intersection, n);
    g.t = t;
    return g;
}

inline ImplicitGraph transport_graph(int n, int k, int t) {
    if (t < 1) throw std::invalid_argument("transport requires t >= 1");
    if (k < 1 || 2 * k > n) throw std::invalid_argument("transport requires 1 <= k and 2k <= n");
    detail::check_universe_size(binomial(n, k) * binomial(n - k, k) / 2);
    ImplicitGraph g(GraphKind::transport, n);
    g.k = k;
    g.t = t;
    auto ksets = detail::masks_of_size(n, k);
    for (std::size_t i = 0; i < ksets.size(); ++i)
        for (std::size_t j = i + 1; j < ksets.size(); ++j)
            if ((ksets[i] & ksets[j]) == 0) g.pairs_.push_back(DisjointPair{ksets[i], ksets[j]});
    std::sort(g.pairs_.begin(), g.pairs_.end());
    return g;
}

inline ImplicitGraph mono_diff_graph(int n, SetMask R) {
    if (!mask_in_ground(R, n)) throw std::invalid_argument("colour class R must lie inside the ground set");
    ImplicitGraph g(GraphKind::mono_diff, n);
    g.R = R;
    return g;
}

inline ImplicitGraph bnk_graph(int n, int k) {
    if (k < 0 || k >= n) throw std::invalid_argument("bnk requires 0 <= k < n");
    detail::check_universe_size(binomial(n, k) + binomial(n, k + 1));
    ImplicitGraph g(GraphKind::bnk, n);
    g.k = k;
    auto lower = detail::masks_of_size(n, k);
    auto upper = detail::masks_of_size(n, k + 1);
    g.verts_ = lower;
    g.verts_.insert(g.verts_.end(), upper.begin(), upper.end());
    std::sort(g.verts_.begin(), g.verts_.end());
    return g;
}

// Parses strings like "tilt:n=5,p=1,q=2" or "mono_diff:n=4,R=0x3".
inline ImplicitGraph parse_graph_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("graph spec needs kind:params");
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);

    int n = -1, p = -1, q = -1, t = -1, k = -1;
    std::optional<SetMask> R;
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? rest.size() : comma + 1;
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad graph param '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (val.empty()) throw std::invalid_argument("bad graph param '" + item + "'");
        std::size_t used = 0;
        if (key == "R") {
            R = static_cast<SetMask>(std::stoull(val, &used, 0));
            if (used != val.size()) throw std::invalid_argument("bad value in '" + item + "'");
            continue;
        }
        int value = std::stoi(val, &used);
        if (used != val.size()) throw std::invalid_argument("bad value in '" + item + "'");
        if (key == "n") n = value;
        else if (key == "p") p = value;
        else if (key == "q") q = value;
        else if (key == "t") t = value;
        else if (key == "k") k = value;
        else throw std::invalid_argument("unknown graph param '" + key + "'");
    }
    if (n < 0) throw std::invalid_argument("graph spec needs n");

    auto require = [&](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("graph spec for ") + kind + " needs " + what);
    };
    if (kind == "comparability") return comparability_graph(n);
    if (kind == "tilt") {
        require(p >= 0 && q >= 0, "p and q");
        return tilt_graph(n, p, q);
    }
    if (kind == "hamming") {
        require(t >= 0, "t");
        return hamming_graph(n, t);
    }
    if (kind == "intersection") {
        require(t >= 0, "t");
        return intersection_graph(n, t);
    }
    if (kind == "transport") {
        require(k >= 0 && t >= 0, "k and t");
        return transport_graph(n, k, t);
    }
    if (kind == "mono_diff") {
        require(R.has_value(), "R");
        return mono_diff_graph(n, *R);
    }
    if (kind == "bnk") {
        require(k >= 0, "k");
        return bnk_graph(n, k);
    }
    throw std::invalid_argument("unknown graph kind '" + kind + "'");
}

inline std::vector<std::size_t> family_to_vertices(const ImplicitGraph& g, const Family& f) {
    std::vector<std::size_t> out;
    out.reserve(f.members.size());
    for (SetMask m : f.members) {
        auto idx = g.index_of_mask(m);
        if (!idx) throw std::invalid_argument("family member is not a vertex of the graph");
        out.push_back(*idx);
    }
    return out;
}

}  // namespace boollat
