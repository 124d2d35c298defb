#pragma once

#include "boollat/codes.hpp"
#include "boollat/enumerate.hpp"
#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/numeric.hpp"
#include "boollat/rng.hpp"
#include "boollat/scd.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace boollat {

inline BigCount count_edges_in_induced(const ImplicitGraph& g, const std::vector<std::size_t>& vs) {
    BigCount edges = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) ++edges;
    return edges;
}

inline BigCount count_edges_in_induced(const ImplicitGraph& g, const Family& f) {
    return count_edges_in_induced(g, family_to_vertices(g, f));
}

struct InducedDegree {
    std::size_t vertex = 0;
    std::size_t degree = 0;
};

// Max induced degree over F, ties broken towards the lowest vertex index.
inline InducedDegree max_degree_induced(const ImplicitGraph& g, const std::vector<std::size_t>& vs) {
    if (vs.empty()) throw std::invalid_argument("family is empty");
    InducedDegree best;
    bool first = true;
    for (std::size_t u : vs) {
        std::size_t d = 0;
        for (std::size_t v : vs)
            if (g.adjacent(u, v)) ++d;
        if (first || d > best.degree || (d == best.degree && u < best.vertex)) {
            best = {u, d};
            first = false;
        }
    }
    return best;
}

inline InducedDegree max_degree_induced(const ImplicitGraph& g, const Family& f) {
    return max_degree_induced(g, family_to_vertices(g, f));
}

enum class SearchMode { exhaustive, random };

struct MinEdgesResult {
    BigCount edges;
    std::vector<std::size_t> witness; // sorted vertex indices
    bool exhaustive = false;          // true when `edges` is a proven minimum
};

namespace detail {

inline BigCount edges_of(const DenseGraph& d, const VertexSet& f) {
    std::size_t twice = 0;
    f.for_each([&](std::size_t u) { twice += d.row(u).intersection_count(f); });
    return BigCount(twice / 2);
}

inline MinEdgesResult min_edges_exhaustive(const DenseGraph& d, std::size_t size,
                                           const EnumBudget& budget) {
    std::size_t nv = d.num_vertices();
    if (size > nv) throw std::invalid_argument("family size exceeds vertex count");
    if (binomial(nv, size) > budget.max_nodes)
        throw BudgetExceeded("family space exceeds budget", 0);

    MinEdgesResult best;
    bool have = false;
    std::vector<std::size_t> comb(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    NodeTicker ticker(budget);
    for (;;) {
        ticker.tick();
        VertexSet f(nv);
        for (auto v : comb) f.set(v);
        BigCount e = edges_of(d, f);
        if (!have || e < best.edges) {
            best.edges = e;
            best.witness = comb;
            have = true;
        }
        if (size == 0) break;
        std::size_t i = size;
        while (i > 0 && comb[i - 1] == nv - size + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
    best.exhaustive = true;
    return best;
}

// Steepest-descent swap search. Trial 0 starts from a greedy fewest-new-edges
// family; later trials start from seeded uniform samples.
inline MinEdgesResult min_edges_local_search(const DenseGraph& d, std::size_t size,
                                             std::uint64_t trials, std::uint64_t seed,
                                             const EnumBudget& budget) {
    std::size_t nv = d.num_vertices();
    if (size > nv) throw std::invalid_argument("family size exceeds vertex count");
    NodeTicker ticker(budget);

    MinEdgesResult best;
    bool have = false;
    for (std::uint64_t trial = 0; trial < std::max<std::uint64_t>(trials, 1); ++trial) {
        VertexSet f(nv);
        if (trial == 0) {
            for (std::size_t picked = 0; picked < size; ++picked) {
                std::size_t arg = nv, argdeg = 0;
                for (std::size_t v = 0; v < nv; ++v) {
                    if (f.test(v)) continue;
                    std::size_t deg = d.row(v).intersection_count(f);
                    if (arg == nv || deg < argdeg) {
                        arg = v;
                        argdeg = deg;
                    }
                }
                f.set(arg);
            }
        } else {
            SplitMix64 rng(SplitMix64::mix(seed, trial));
            std::vector<std::size_t> idx(nv);
            for (std::size_t i = 0; i < nv; ++i) idx[i] = i;
            for (std::size_t i = 0; i < size; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng.below(nv - i));
                std::swap(idx[i], idx[j]);
                f.set(idx[i]);
            }
        }

        for (;;) {
            ticker.tick();
            // best strictly-improving swap, ties towards smallest (out, in)
            long long best_delta = 0;
            std::size_t best_out = nv, best_in = nv;
            f.for_each([&](std::size_t out) {
                long long out_deg = static_cast<long long>(d.row(out).intersection_count(f));
                for (std::size_t in = 0; in < nv; ++in) {
                    if (f.test(in)) continue;
                    long long in_deg = static_cast<long long>(d.row(in).intersection_count(f)) -
                                       (d.adjacent(in, out) ? 1 : 0);
                    long long delta = in_deg - out_deg;
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_out = out;
                        best_in = in;
                    }
                }
            });
            if (best_out == nv) break;
            f.reset(best_out);
            f.set(best_in);
        }

        BigCount e = edges_of(d, f);
        if (!have || e < best.edges) {
            best.edges = e;
            best.witness = f.to_indices();
            have = true;
        }
    }
    return best;
}

} // namespace detail

inline MinEdgesResult min_edges_over_families(const DenseGraph& d, std::size_t size,
                                              SearchMode mode, std::uint64_t trials = 32,
                                              std::uint64_t seed = 0,
                                              const EnumBudget& budget = {}) {
    if (mode == SearchMode::exhaustive) return detail::min_edges_exhaustive(d, size, budget);
    return detail::min_edges_local_search(d, size, trials, seed, budget);
}

// Pairs of family members lying on a common chain.
inline BigCount scd_bad_pairs(const Family& f, const SCD& scd) {
    if (scd.n != f.n) throw std::invalid_argument("chain decomposition is for a different ground set");
    if (!validate_scd(scd)) throw std::invalid_argument("invalid chain decomposition");
    if (scd.n > 20) throw std::invalid_argument("bad-pair counting capped at n <= 20");
    validate_family(f);
    std::vector<std::size_t> chain_of(std::size_t{1} << scd.n);
    for (std::size_t c = 0; c < scd.chains.size(); ++c)
        for (SetMask m : scd.chains[c]) chain_of[m] = c;
    std::vector<BigCount> per_chain(scd.chains.size(), 0);
    for (SetMask m : f.members) per_chain[chain_of[m]] += 1;
    BigCount bad = 0;
    for (const auto& c : per_chain) bad += c * (c - 1) / 2;
    return bad;
}

struct DifferenceProfile {
    int n = 0;
    std::vector<BigCount> B; // B[i] = comparable pairs A ⊂ B with |B\A| = i; B[0] unused

    BigCount b_geq(std::size_t N) const {
        BigCount s = 0;
        for (std::size_t i = N; i < B.size(); ++i) s += B[i];
        return s;
    }

    // Left side of the weighted pigeonhole inequality at threshold N.
    Rational weighted_value(std::size_t N) const {
        if (N < 1) throw std::invalid_argument("threshold must be at least 1");
        std::size_t half = static_cast<std::size_t>(n) / 2;
        Rational value(b_geq(N), binomial(half + (N + 1) / 2, N));
        for (std::size_t k = 1; k < N; ++k)
            value += Rational(B[k], binomial(half + (k + 1) / 2, k));
        return value;
    }
};

inline DifferenceProfile difference_profile(const Family& f) {
    validate_family(f);
    DifferenceProfile p;
    p.n = f.n;
    p.B.assign(static_cast<std::size_t>(f.n) + 1, BigCount(0));
    for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = i + 1; j < f.members.size(); ++j) {
            SetMask a = f.members[i], b = f.members[j];
            if (!comparable(a, b) || a == b) continue;
            p.B[static_cast<std::size_t>(popcount(a ^ b))] += 1;
        }
    return p;
}

inline BigCount count_mono_pairs(const Family& f, SetMask R) {
    return count_edges_in_induced(mono_diff_graph(f.n, R), f);
}

// The middle layer plus x sets of the layer above: the equality witness for
// the comparable-pair supersaturation bound.
inline Family middle_layer_plus(int n, std::size_t x) {
    Family f;
    f.n = n;
    for (SetMask m : detail::masks_of_size(n, n / 2)) f.members.push_back(m);
    auto upper = detail::masks_of_size(n, n / 2 + 1);
    if (x > upper.size()) throw std::invalid_argument("not enough sets in the adjacent layer");
    f.members.insert(f.members.end(), upper.begin(), upper.begin() + static_cast<long>(x));
    f.sort_canonical();
    return f;
}

// Minimum induced-edge counts of the disjointness graph per family size,
// from one sweep over all subsets of P(n). Requires n <= 4.
inline std::vector<BigCount> min_disjoint_pairs_by_size(int n) {
    if (n < 0 || n > 4) throw std::invalid_argument("subset sweep requires n <= 4");
    std::size_t nv = std::size_t{1} << n;
    std::vector<std::uint32_t> partners(nv, 0);
    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = 0; b < nv; ++b)
            if (a != b && (a & b) == 0) partners[a] |= std::uint32_t{1} << b;
    std::vector<BigCount> best(nv + 1, -1);
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << nv); ++sub) {
        unsigned pairs = 0, size = 0;
        for (std::size_t v = 0; v < nv; ++v)
            if (sub >> v & 1) {
                ++size;
                pairs += static_cast<unsigned>(std::popcount(partners[v] & static_cast<std::uint32_t>(sub)));
            }
        BigCount e = pairs / 2;
        if (best[size] < 0 || e < best[size]) best[size] = e;
    }
    return best;
}

// Minimum disjoint-pair count over "top layers plus one partial layer"
// families of the given size (the shape the minimiser is known to take).
inline BigCount layered_disjoint_min(int n, std::size_t size) {
    if (size > (std::size_t{1} << n)) throw std::invalid_argument("size exceeds the power set");
    // complete layers from the top, then j sets in the next layer down
    std::size_t total = 0;
    int l = n + 1;
    while (l > 0 && total + binomial(n, l - 1).convert_to<std::size_t>() <= size)
        total += binomial(n, --l).convert_to<std::size_t>();
    std::size_t j = size - total;

    auto in_complete = [&](SetMask m) { return popcount(m) >= l; };
    std::size_t nv = std::size_t{1} << n;
    BigCount fixed = 0;
    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = a + 1; b < nv; ++b)
            if ((a & b) == 0 && in_complete(a) && in_complete(b)) ++fixed;
    if (j == 0) return fixed;

    int pl = l - 1; // partial layer
    auto layer = detail::masks_of_size(n, pl);
    if (binomial(layer.size(), j) > (std::size_t{1} << 20))
        throw BudgetExceeded("partial-layer scan exceeds budget", 0);
    BigCount cross_per_member = 0;
    for (int b = l; b <= n - pl; ++b) cross_per_member += binomial(n - pl, b);

    // choose the j partial-layer sets minimising their internal disjoint pairs
    BigCount best_internal = -1;
    std::vector<std::size_t> comb(j);
    for (std::size_t i = 0; i < j; ++i) comb[i] = i;
    for (;;) {
        BigCount internal = 0;
        for (std::size_t i = 0; i < j; ++i)
            for (std::size_t k = i + 1; k < j; ++k)
                if ((layer[comb[i]] & layer[comb[k]]) == 0) ++internal;
        if (best_internal < 0 || internal < best_internal) best_internal = internal;
        std::size_t i = j;
        while (i > 0 && comb[i - 1] == layer.size() - j + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t k = i; k < j; ++k) comb[k] = comb[k - 1] + 1;
    }
    return fixed + BigCount(j) * cross_per_member + best_internal;
}

// One verdict shared by every supersaturation check the CLI exposes.
struct SupersatCheck {
    std::string lemma;
    std::size_t family_size = 0;
    Rational bound;        // required minimum number of pairs
    BigCount observed_min; // exhaustive minimum or best found by search
    std::vector<std::size_t> witness;
    bool exhaustive = false;
    bool pass = false;
};

namespace detail {

inline SupersatCheck min_edges_check(const ImplicitGraph& g, std::string lemma, std::size_t size,
                                     Rational bound, SearchMode mode, std::uint64_t trials,
                                     std::uint64_t seed, const EnumBudget& budget) {
    DenseGraph d = DenseGraph::of(g, budget);
    MinEdgesResult r = min_edges_over_families(d, size, mode, trials, seed, budget);
    SupersatCheck c;
    c.lemma = std::move(lemma);
    c.family_size = size;
    c.bound = std::move(bound);
    c.observed_min = r.edges;
    c.witness = std::move(r.witness);
    c.exhaustive = r.exhaustive;
    c.pass = Rational(c.observed_min) >= c.bound;
    return c;
}

} // namespace detail

// Comparable-pair supersaturation: families of binom(n, n/2) + x sets.
inline SupersatCheck kleitman_check(int n, std::size_t x, SearchMode mode,
                                    std::uint64_t trials = 32, std::uint64_t seed = 0,
                                    const EnumBudget& budget = {}) {
    std::size_t half = binomial(n, n / 2).convert_to<std::size_t>();
    return detail::min_edges_check(comparability_graph(n), "kleitman", half + x,
                                   Rational((n / 2 + 1) * BigCount(x)), mode, trials, seed, budget);
}

// Close-pair supersaturation for codes: families above the packing bound.
inline SupersatCheck hamming_supersat_check(int n, int t, std::size_t x, SearchMode mode,
                                            std::uint64_t trials = 32, std::uint64_t seed = 0,
                                            const EnumBudget& budget = {}) {
    std::size_t size = (ceil_rational(hamming_bound(n, t)) + x).convert_to<std::size_t>();
    Rational bound = Rational(BigCount(x) * n, BigCount(2) * t);
    return detail::min_edges_check(hamming_graph(n, t), "hamming", size, bound, mode, trials, seed,
                                   budget);
}

// Tilted-pair supersaturation in the monotone form testable at small n:
// the threshold is the exact independence number, not the asymptotic one.
inline SupersatCheck tilt_supersat_check(int n, int p, int q, std::size_t x, SearchMode mode,
                                         std::uint64_t trials = 32, std::uint64_t seed = 0,
                                         const EnumBudget& budget = {}) {
    ImplicitGraph g = tilt_graph(n, p, q);
    std::size_t alpha = max_independent_set(g, budget).size;
    return detail::min_edges_check(g, "tilt", alpha + x, Rational(BigCount(x)), mode, trials, seed,
                                   budget);
}

// Transportation analogue over the disjoint-pair space.
inline SupersatCheck transport_supersat_check(int n, int k, int t, std::size_t x, SearchMode mode,
                                              std::uint64_t trials = 32, std::uint64_t seed = 0,
                                              const EnumBudget& budget = {}) {
    Rational H = transport_bound(n, k, 2 * t + 1);
    std::size_t size = (ceil_rational(H) + x).convert_to<std::size_t>();
    Rational bound = Rational(BigCount(x) * k, BigCount(t));
    return detail::min_edges_check(transport_graph(n, k, t), "transport", size, bound, mode, trials,
                                   seed, budget);
}

// Two-coloured comparable pairs above the two-coloured Sperner bound.
inline SupersatCheck mono_supersat_check(int n, SetMask R, std::size_t x, SearchMode mode,
                                         std::uint64_t trials = 32, std::uint64_t seed = 0,
                                         const EnumBudget& budget = {}) {
    std::size_t half = binomial(n, n / 2).convert_to<std::size_t>();
    return detail::min_edges_check(mono_diff_graph(n, R), "mono", half + x, Rational(BigCount(x)),
                                   mode, trials, seed, budget);
}

// Disjoint-pair minimiser shape: the true minimum must equal the best
// top-layers-plus-partial-layer family.
inline SupersatCheck claim_cd_check(int n, std::size_t size, SearchMode mode,
                                    std::uint64_t trials = 32, std::uint64_t seed = 0,
                                    const EnumBudget& budget = {}) {
    SupersatCheck c = detail::min_edges_check(intersection_graph(n, 1), "claim-cd", size,
                                              Rational(layered_disjoint_min(n, size)), mode, trials,
                                              seed, budget);
    c.pass = c.exhaustive ? Rational(c.observed_min) == c.bound : Rational(c.observed_min) >= c.bound;
    return c;
}

struct WeightedCheck {
    std::size_t family_size = 0;
    std::size_t threshold = 0; // the N in the size window [N, n-N]
    Rational bound;
    Rational observed_min;
    Family witness;
    bool exhaustive = false;
    bool pass = false;
};

// Weighted comparable-pair inequality: every family of binom(n, n/2) + x sets
// whose member sizes lie in [N, n-N] has weighted difference value >= x.
inline WeightedCheck weighted_difference_check(int n, std::size_t N, std::size_t x,
                                               SearchMode mode, std::uint64_t trials = 32,
                                               std::uint64_t seed = 0,
                                               const EnumBudget& budget = {}) {
    if (N < 1 || 2 * N > static_cast<std::size_t>(n))
        throw std::invalid_argument("size window threshold outside [1, n/2]");
    if (x == 0) throw std::invalid_argument("excess must be positive");
    std::vector<SetMask> pool;
    for (SetMask m = 0; m <= full_mask(n); ++m) {
        auto c = static_cast<std::size_t>(popcount(m));
        if (c >= N && c + N <= static_cast<std::size_t>(n)) pool.push_back(m);
    }
    WeightedCheck check;
    check.family_size = binomial(n, n / 2).convert_to<std::size_t>() + x;
    check.threshold = N;
    check.bound = Rational(BigCount(x));
    if (check.family_size > pool.size())
        throw std::invalid_argument("family larger than the size-restricted pool");

    bool have = false;
    auto consider = [&](const Family& f) {
        Rational v = difference_profile(f).weighted_value(N);
        if (!have || v < check.observed_min) {
            check.observed_min = v;
            check.witness = f;
            have = true;
        }
    };
    std::size_t size = check.family_size;
    if (mode == SearchMode::exhaustive) {
        if (binomial(pool.size(), size) > budget.max_nodes)
            throw BudgetExceeded("family scan exceeds budget", 0);
        std::vector<std::size_t> comb(size);
        for (std::size_t i = 0; i < size; ++i) comb[i] = i;
        for (;;) {
            Family f;
            f.n = n;
            for (std::size_t i : comb) f.members.push_back(pool[i]);
            consider(f);
            std::size_t i = size;
            while (i > 0 && comb[i - 1] == pool.size() - size + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
        check.exhaustive = true;
    } else {
        SplitMix64 rng(seed);
        std::vector<SetMask> deck = pool;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            for (std::size_t i = 0; i < size; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng.below(deck.size() - i));
                std::swap(deck[i], deck[j]);
            }
            Family f;
            f.n = n;
            f.members.assign(deck.begin(), deck.begin() + static_cast<std::ptrdiff_t>(size));
            f.sort_canonical();
            consider(f);
        }
    }
    check.pass = check.observed_min >= check.bound;
    return check;
}

} // namespace boollat
