#pragma once

#include "boollat/codes.hpp"
#include "boollat/enumerate.hpp"
#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace boollat {

struct SetPair {
    SetMask first = 0;
    SetMask second = 0;
    auto operator<=>(const SetPair&) const = default;
};

// Ordered list of set pairs over the ground set [N]. The order matters: the
// skew condition only constrains pairs (i, j) with i < j.
struct SetPairFamily {
    int N = 0;
    std::vector<SetPair> pairs;
    auto operator<=>(const SetPairFamily&) const = default;
};

inline void validate_set_pair_family(const SetPairFamily& f) {
    for (const SetPair& p : f.pairs)
        if (!mask_in_ground(p.first, f.N) || !mask_in_ground(p.second, f.N))
            throw std::invalid_argument("set pair escapes the ground set");
}

// Same text format as single families, with two hex masks per line.
inline void write_set_pair_family(std::ostream& os, const SetPairFamily& f) {
    os << "n=" << f.N << "\n";
    for (const SetPair& p : f.pairs) os << mask_to_hex(p.first) << " " << mask_to_hex(p.second) << "\n";
}

inline SetPairFamily read_set_pair_family(std::istream& is) {
    SetPairFamily f;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t");
        std::string tok = line.substr(start, end - start + 1);
        if (tok[0] == '#') continue;
        if (!have_header) {
            if (tok.rfind("n=", 0) != 0) throw FamilyFormatError("first line must be n=<int>");
            try {
                std::size_t pos = 0;
                f.N = std::stoi(tok.substr(2), &pos);
                if (pos != tok.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw FamilyFormatError("bad ground size line: '" + tok + "'");
            }
            have_header = true;
            continue;
        }
        std::istringstream parts(tok);
        std::string a, b, extra;
        if (!(parts >> a >> b) || (parts >> extra))
            throw FamilyFormatError("expected two hex masks per line, got '" + tok + "'");
        f.pairs.push_back({hex_to_mask(a), hex_to_mask(b)});
    }
    if (!have_header) throw FamilyFormatError("missing n=<int> header");
    try {
        validate_set_pair_family(f);
    } catch (const std::invalid_argument& e) {
        throw FamilyFormatError(e.what());
    }
    return f;
}

inline std::string set_pair_family_to_string(const SetPairFamily& f) {
    std::ostringstream os;
    write_set_pair_family(os, f);
    return os.str();
}

inline SetPairFamily set_pair_family_from_string(const std::string& s) {
    std::istringstream is(s);
    return read_set_pair_family(is);
}

// Ordered violations: pairs (j, k) with j != k and A_j meeting B_k empty.
inline std::size_t count_isp_violations(const SetPairFamily& f) {
    std::size_t bad = 0;
    for (std::size_t j = 0; j < f.pairs.size(); ++j)
        for (std::size_t k = 0; k < f.pairs.size(); ++k)
            if (j != k && (f.pairs[j].first & f.pairs[k].second) == 0) ++bad;
    return bad;
}

inline bool is_isp(const SetPairFamily& f, int n) {
    validate_set_pair_family(f);
    for (const SetPair& p : f.pairs) {
        if ((p.first & p.second) != 0) return false;
        if (popcount(p.first) + popcount(p.second) > n) return false;
    }
    return count_isp_violations(f) == 0;
}

// One-sided violations: pairs i < j with A_i meeting B_j empty.
inline std::size_t count_skew_violations(const SetPairFamily& f) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < f.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < f.pairs.size(); ++j)
            if ((f.pairs[i].first & f.pairs[j].second) == 0) ++bad;
    return bad;
}

inline bool is_skew(const SetPairFamily& f, int a, int b) {
    validate_set_pair_family(f);
    for (const SetPair& p : f.pairs) {
        if (popcount(p.first) > a || popcount(p.second) > b) return false;
        if ((p.first & p.second) != 0) return false;
    }
    return count_skew_violations(f) == 0;
}

// Minimum number of ordered cross-intersection violations over all unordered
// m-element families of disjoint pairs (A, B) in P([N]) with |A|+|B| <= n.
// Exhaustive, tiny instances only.
inline std::size_t min_isp_violations(int N, int n, std::size_t m, const EnumBudget& budget = {}) {
    std::vector<SetPair> universe;
    for (SetMask a = 0; a <= full_mask(N); ++a)
        for (SetMask b = 0; b <= full_mask(N); ++b)
            if ((a & b) == 0 && popcount(a) + popcount(b) <= n) universe.push_back({a, b});
    if (m > universe.size()) throw std::invalid_argument("family larger than the pair universe");
    if (binomial(universe.size(), m) > budget.max_nodes)
        throw BudgetExceeded("pair family scan exceeds budget", 0);

    std::size_t best = SIZE_MAX;
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    for (;;) {
        SetPairFamily f;
        f.N = N;
        for (std::size_t i : idx) f.pairs.push_back(universe[i]);
        best = std::min(best, count_isp_violations(f));
        std::size_t pos = m;
        while (pos > 0 && idx[pos - 1] == universe.size() - m + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    return best;
}

namespace detail {

struct HalfSplitParts {
    std::vector<SetPair> f1;       // (A, {2..n+1} \ A) for A in the top half of {2..n}
    std::vector<SetPair> f2;       // (A, [n] \ A) for all half-sized A in [n]
    std::vector<std::size_t> bad;  // indices into f2 of the pairs shadowed by f1
};

inline HalfSplitParts half_split_parts(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("needs an even ground size of at least 2");
    if (n + 1 > kMaxGroundSize) throw std::invalid_argument("ground set too large");
    HalfSplitParts parts;
    SetMask tail = full_mask(n) & ~SetMask{1};  // elements 2..n
    for (SetMask a : detail::subsets_of_size(tail, n / 2))
        parts.f1.push_back({a, full_mask(n + 1) & ~SetMask{1} & ~a});
    std::sort(parts.f1.begin(), parts.f1.end());
    for (SetMask a : detail::subsets_of_size(full_mask(n), n / 2))
        parts.f2.push_back({a, full_mask(n) & ~a});
    std::sort(parts.f2.begin(), parts.f2.end());
    for (std::size_t i = 0; i < parts.f2.size(); ++i)
        if (!has_element(parts.f2[i].first, 1)) parts.bad.push_back(i);
    return parts;
}

}  // namespace detail

// The full two-block family over [n+1]: all of f1 followed by all of f2.
// It misses being skew on exactly the shadowed pairs.
inline SetPairFamily half_split_family(int n) {
    auto parts = detail::half_split_parts(n);
    SetPairFamily f;
    f.N = n + 1;
    f.pairs = parts.f1;
    f.pairs.insert(f.pairs.end(), parts.f2.begin(), parts.f2.end());
    return f;
}

inline BigCount half_split_count(int n) {
    BigCount m = binomial(n, n / 2);
    BigCount half = m / 2;
    BigCount total = pow2(half.convert_to<unsigned>());
    for (BigCount i = 0; i < half; ++i) total *= 3;
    return total;
}

// Enumerates every skew family obtained from the two-block family by keeping
// an arbitrary subset of the pairs containing element 1 in their first set and
// at most one pair out of each shadowed couple. Calls fn on each family;
// returns how many were emitted.
template <class Fn>
BigCount for_each_half_split_family(int n, Fn&& fn, const EnumBudget& budget = {}) {
    auto parts = detail::half_split_parts(n);
    if (binomial(n, n / 2) / 2 > 62 || half_split_count(n) > budget.max_nodes)
        throw BudgetExceeded("half-split enumeration exceeds budget", 0);

    std::vector<std::size_t> keep1;  // indices into f2 of pairs with 1 in the first set
    for (std::size_t i = 0; i < parts.f2.size(); ++i)
        if (has_element(parts.f2[i].first, 1)) keep1.push_back(i);

    BigCount emitted = 0;
    std::vector<int> digit(parts.bad.size(), 0);  // 0 drop both, 1 keep f1 copy, 2 keep f2 copy
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << keep1.size()); ++sub) {
        for (;;) {
            SetPairFamily g;
            g.N = n + 1;
            for (std::size_t i = 0; i < parts.bad.size(); ++i)
                if (digit[i] == 1) g.pairs.push_back(parts.f1[i]);
            std::vector<char> take(parts.f2.size(), 0);
            for (std::size_t i = 0; i < parts.bad.size(); ++i)
                if (digit[i] == 2) take[parts.bad[i]] = 1;
            for (std::size_t i = 0; i < keep1.size(); ++i)
                if (sub >> i & 1) take[keep1[i]] = 1;
            for (std::size_t i = 0; i < parts.f2.size(); ++i)
                if (take[i]) g.pairs.push_back(parts.f2[i]);
            fn(std::as_const(g));
            ++emitted;

            std::size_t pos = 0;
            while (pos < digit.size() && digit[pos] == 2) digit[pos++] = 0;
            if (pos == digit.size()) break;
            ++digit[pos];
        }
    }
    return emitted;
}

// A triple (B, r, s) describing a local patch of the k-th and (k+1)-st layers:
// B is a k-set avoiding 1 and r, r != 1, and s lies in B.
struct GoodTriple {
    SetMask B = 0;
    int r = 0;
    int s = 0;
    auto operator<=>(const GoodTriple&) const = default;
};

inline bool is_good_triple(const GoodTriple& t, int n, int k) {
    return t.r >= 2 && t.r <= n && t.s >= 1 && t.s <= n && mask_in_ground(t.B, n) &&
           popcount(t.B) == k && !has_element(t.B, 1) && !has_element(t.B, t.r) &&
           has_element(t.B, t.s);
}

inline BigCount good_triple_count(int n, int k) {
    return binomial(n - 1, k) * k * (n - k - 1);
}

inline std::vector<GoodTriple> good_triples(int n, int k) {
    if (k < 1 || k > n - 2) throw std::invalid_argument("needs 1 <= k <= n-2");
    std::vector<GoodTriple> out;
    for (SetMask b : detail::subsets_of_size(full_mask(n) & ~SetMask{1}, k))
        for (int r = 2; r <= n; ++r) {
            if (has_element(b, r)) continue;
            for (int s = 1; s <= n; ++s)
                if (has_element(b, s)) out.push_back({b, r, s});
        }
    std::sort(out.begin(), out.end());
    return out;
}

// The unique other triple that patches the same edges: swap the roles of r and
// s around the shifted base set.
inline GoodTriple partner_triple(const GoodTriple& t) {
    return {without_element(with_element(t.B, t.r), t.s), t.s, t.r};
}

namespace detail {

// The perfect matching between layers k and k+1 induced by element i: one edge
// (C, C + i) per k-set C avoiding i, sorted by lower endpoint.
inline std::vector<std::pair<SetMask, SetMask>> matching_edges(int n, int k, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("matching element outside the ground set");
    if (k < 1 || k > n - 1) throw std::invalid_argument("needs 1 <= k <= n-1");
    std::vector<std::pair<SetMask, SetMask>> out;
    for (SetMask c : detail::subsets_of_size(full_mask(n) & ~(SetMask{1} << (i - 1)), k))
        out.emplace_back(c, with_element(c, i));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

inline std::vector<std::pair<SetMask, SetMask>> matching_edges(int n, int k, int i) {
    return detail::matching_edges(n, k, i);
}

inline BigCount patch_family_count(int n, int k) {
    BigCount free_edges = binomial(n - 1, k) - (n - 1);
    return pow2(free_edges.convert_to<unsigned>());
}

// Builds one independent set of the two-layer graph from the triple: anchor
// B + r and B + 1 - s, walk the element-1 matching, and resolve each edge.
// Edges whose lower endpoint sits under B + r keep the upper endpoint, edges
// whose upper endpoint sits over B + 1 - s keep the lower one, the two edges
// at B and at B + r - s are dropped entirely, and every untouched edge
// consumes one bit of choices (set bit keeps the upper endpoint).
inline Family construct_patch_family(const GoodTriple& t, int n, int k,
                                     const std::vector<bool>& choices) {
    if (!is_good_triple(t, n, k)) throw std::invalid_argument("triple is not good");
    SetMask br = with_element(t.B, t.r);
    SetMask b1s = without_element(with_element(t.B, 1), t.s);
    SetMask dropped_low = without_element(br, t.s);  // B + r - s

    Family out;
    out.n = n;
    out.members = {br, b1s};
    std::size_t used = 0;
    for (const auto& [lo, hi] : detail::matching_edges(n, k, 1)) {
        if (lo == t.B || lo == dropped_low) continue;
        if (subset_of(lo, br)) {
            out.members.push_back(hi);
        } else if (subset_of(b1s, hi)) {
            out.members.push_back(lo);
        } else {
            if (used >= choices.size()) throw std::invalid_argument("choices vector too short");
            out.members.push_back(choices[used] ? hi : lo);
            ++used;
        }
    }
    if (used != choices.size()) throw std::invalid_argument("choices vector too long");
    out.sort_canonical();
    return out;
}

// Enumerates the transversals of the element-i matching: one endpoint per
// edge, 2^(#edges) families in total, streamed through fn.
template <class Fn>
BigCount for_each_matching_transversal(int n, int k, int i, Fn&& fn,
                                       const EnumBudget& budget = {}) {
    auto edges = detail::matching_edges(n, k, i);
    if (edges.size() >= 63 || (std::uint64_t{1} << edges.size()) > budget.max_nodes)
        throw BudgetExceeded("transversal enumeration exceeds budget", 0);
    BigCount emitted = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << edges.size()); ++code) {
        Family f;
        f.n = n;
        f.members.reserve(edges.size());
        for (std::size_t j = 0; j < edges.size(); ++j)
            f.members.push_back(code >> j & 1 ? edges[j].second : edges[j].first);
        f.sort_canonical();
        fn(std::as_const(f));
        ++emitted;
    }
    return emitted;
}

// Greedy first-fit completion to a maximal independent set, scanning vertices
// in the graph's canonical order. Rejects dependent seeds.
inline Family extend_to_maximal(const ImplicitGraph& g, const Family& f) {
    if (g.is_pair_graph()) throw std::invalid_argument("pair graphs have no family encoding");
    auto vs = family_to_vertices(g, f);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) throw std::invalid_argument("seed is not independent");

    std::vector<char> in(g.num_vertices(), 0);
    for (std::size_t v : vs) in[v] = 1;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (in[v]) continue;
        bool free = true;
        for (std::size_t u = 0; u < g.num_vertices() && free; ++u)
            if (in[u] && g.adjacent(v, u)) free = false;
        if (free) in[v] = 1;
    }
    Family out;
    out.n = g.n;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (in[v]) out.members.push_back(g.mask_of(v));
    out.sort_canonical();
    return out;
}

inline bool triples_far_apart(const std::vector<GoodTriple>& ts, int radius) {
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            if (hamming_distance(ts[i].B, ts[j].B) < radius) return false;
    return true;
}

enum class EdgeDemand { none, lower, upper, drop };

namespace detail {

// What each matching edge must contribute once all triple patches are applied.
// Agreeing demands from different triples are fine; contradictory ones throw.
inline std::vector<EdgeDemand> multi_patch_demands(
    int n, int k, const std::vector<GoodTriple>& ts,
    const std::vector<std::pair<SetMask, SetMask>>& edges) {
    std::vector<EdgeDemand> demand(edges.size(), EdgeDemand::none);
    for (const GoodTriple& t : ts) {
        if (!is_good_triple(t, n, k)) throw std::invalid_argument("triple is not good");
        SetMask br = with_element(t.B, t.r);
        SetMask b1s = without_element(with_element(t.B, 1), t.s);
        SetMask dropped_low = without_element(br, t.s);
        for (std::size_t j = 0; j < edges.size(); ++j) {
            const auto& [lo, hi] = edges[j];
            EdgeDemand want = EdgeDemand::none;
            if (lo == t.B || lo == dropped_low)
                want = EdgeDemand::drop;
            else if (subset_of(lo, br))
                want = EdgeDemand::upper;
            else if (subset_of(b1s, hi))
                want = EdgeDemand::lower;
            if (want == EdgeDemand::none) continue;
            if (demand[j] != EdgeDemand::none && demand[j] != want)
                throw std::invalid_argument("triples make contradictory demands on an edge");
            demand[j] = want;
        }
    }
    return demand;
}

}  // namespace detail

// Number of matching edges no triple patch touches, hence the choices length
// construct_multi_patch expects.
inline std::size_t count_free_matching_edges(int n, int k, const std::vector<GoodTriple>& ts) {
    auto edges = detail::matching_edges(n, k, 1);
    auto demand = detail::multi_patch_demands(n, k, ts, edges);
    return std::count(demand.begin(), demand.end(), EdgeDemand::none);
}

// Applies several triple patches to the element-1 matching at once. Triples
// whose demands contradict each other, or whose combined result fails
// independence, throw. Untouched edges consume choices bits as in the
// single-triple construction.
inline Family construct_multi_patch(int n, int k, const std::vector<GoodTriple>& ts,
                                    const std::vector<bool>& choices) {
    auto edges = detail::matching_edges(n, k, 1);
    auto demand = detail::multi_patch_demands(n, k, ts, edges);

    Family out;
    out.n = n;
    for (const GoodTriple& t : ts) {
        out.members.push_back(with_element(t.B, t.r));
        out.members.push_back(without_element(with_element(t.B, 1), t.s));
    }
    std::size_t used = 0;
    for (std::size_t j = 0; j < edges.size(); ++j) {
        switch (demand[j]) {
            case EdgeDemand::drop: break;
            case EdgeDemand::upper: out.members.push_back(edges[j].second); break;
            case EdgeDemand::lower: out.members.push_back(edges[j].first); break;
            case EdgeDemand::none:
                if (used >= choices.size()) throw std::invalid_argument("choices vector too short");
                out.members.push_back(choices[used] ? edges[j].second : edges[j].first);
                ++used;
        }
    }
    if (used != choices.size()) throw std::invalid_argument("choices vector too long");
    out.sort_canonical();
    if (std::adjacent_find(out.members.begin(), out.members.end()) != out.members.end())
        throw std::invalid_argument("triples interfere on an anchor");

    ImplicitGraph g = bnk_graph(n, k);
    auto vs = family_to_vertices(g, out);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) throw std::invalid_argument("triples interfere");
    return out;
}

}  // namespace boollat
