#pragma once

#include "boollat/enumerate.hpp"
#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/numeric.hpp"
#include "boollat/rng.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace boollat {

// Maximum size of a t-intersecting family in P(n), by parity of n+t.
inline BigCount katona_K(int n, int t) {
    if (t < 1 || t > n) throw std::invalid_argument("needs 1 <= t <= n");
    if ((n + t) % 2 == 0) return binom_at_least(n, (n + t) / 2);
    return 2 * binom_at_least(n - 1, (n + t - 1) / 2);
}

struct RandomSample {
    int n = 0;
    Rational p;
    std::uint64_t seed = 0;
    Family members;
};

// Keeps each mask independently with exact probability p. The same
// (n, p, seed) always regenerates the same sample.
inline RandomSample sample_lattice(int n, const Rational& p, std::uint64_t seed) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability out of range");
    detail::check_universe_size(BigCount(pow2(static_cast<unsigned>(n))));
    BigCount den_big = boost::multiprecision::denominator(p);
    if (den_big > std::numeric_limits<std::uint64_t>::max())
        throw std::invalid_argument("probability denominator too large");
    std::uint64_t num = boost::multiprecision::numerator(p).convert_to<std::uint64_t>();
    std::uint64_t den = den_big.convert_to<std::uint64_t>();

    RandomSample s;
    s.n = n;
    s.p = p;
    s.seed = seed;
    s.members.n = n;
    SplitMix64 rng(seed);
    for (SetMask m = 0; m < (SetMask{1} << n); ++m)
        if (rng.below(den) < num) s.members.members.push_back(m);
    return s;
}

inline bool is_t_intersecting(const Family& f, int t) {
    for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = i + 1; j < f.members.size(); ++j)
            if (popcount(f.members[i] & f.members[j]) < t) return false;
    return true;
}

struct TIntersectResult {
    std::size_t size = 0;
    Family witness;
};

// Exact maximum t-intersecting subfamily, as a maximum independent set of
// the pairwise small-intersection graph restricted to F.
inline TIntersectResult max_t_intersecting(const Family& f, int t, const EnumBudget& budget = {}) {
    validate_family(f);
    if (f.members.size() > budget.max_vertices)
        throw BudgetExceeded("family too large for exact search", 0);
    DenseGraph d = DenseGraph::build(f.members.size(), [&](std::size_t i, std::size_t j) {
        return popcount(f.members[i] & f.members[j]) < t;
    });
    MaxISResult r = max_independent_set(d, budget);
    TIntersectResult out;
    out.size = r.size;
    out.witness.n = f.n;
    for (auto v : r.witness) out.witness.members.push_back(f.members[v]);
    out.witness.sort_canonical();
    return out;
}

namespace detail {

inline void check_family_budget(const BigCount& count) {
    if (count > (BigCount(1) << 25))
        throw BudgetExceeded("explicit family too large to materialize", 0);
}

} // namespace detail

// All sets with 2|A| >= n+t; any two such sets share at least t elements.
inline Family build_A_ex(int n, int t) {
    if (t < 0 || t > n) throw std::invalid_argument("needs 0 <= t <= n");
    int smin = (n + t + 1) / 2;
    detail::check_family_budget(binom_at_least(n, smin));
    Family f;
    f.n = n;
    f.members.reserve(binom_at_least(n, smin).convert_to<std::size_t>());
    for (int s = smin; s <= n; ++s)
        for (SetMask m : detail::masks_of_size(n, s)) f.members.push_back(m);
    f.sort_canonical();
    return f;
}

namespace detail {

// s >= n/2 - (a/2) sqrt(n), compared exactly by squaring.
inline bool lower_window_ok(int n, int s, const Rational& a) {
    BigCount gap = BigCount(n) - 2 * s;
    if (gap <= 0) return true;
    return a * a * n >= Rational(gap * gap);
}

// s <= n/2 - (a/4) sqrt(n), compared exactly by squaring.
inline bool upper_window_ok(int n, int s, const Rational& a) {
    BigCount gap = BigCount(n) - 2 * s;
    if (gap < 0) return false;
    return a * a * n <= Rational(4 * gap * gap);
}

} // namespace detail

// Sets slightly below the middle layer whose majority lies in the first
// half of the ground set: |A| in [n/2 - a sqrt(n)/2, n/2 - a sqrt(n)/4]
// and |A intersect [floor(n/2)]| >= n/4 + t/2. The window may be empty,
// in which case the family is empty.
inline Family build_A_lower(int n, int t, const Rational& a) {
    if (t < 0 || t > n) throw std::invalid_argument("needs 0 <= t <= n");
    if (a <= 0) throw std::invalid_argument("window parameter must be positive");
    SetMask first_half = full_mask(n / 2);
    Family f;
    f.n = n;
    BigCount budget_count = 0;
    for (int s = 0; s <= n; ++s)
        if (detail::lower_window_ok(n, s, a) && detail::upper_window_ok(n, s, a))
            budget_count += binomial(n, s);
    detail::check_family_budget(budget_count);
    for (int s = 0; s <= n; ++s) {
        if (!detail::lower_window_ok(n, s, a) || !detail::upper_window_ok(n, s, a)) continue;
        for (SetMask m : detail::masks_of_size(n, s))
            if (4 * popcount(m & first_half) >= n + 2 * t) f.members.push_back(m);
    }
    f.sort_canonical();
    return f;
}

// Window members that t-intersect every member of base; adding them keeps
// a t-intersecting base t-intersecting.
inline Family compatible_extension(const Family& base, const Family& window, int t) {
    if (base.n != window.n) throw std::invalid_argument("families live in different ground sets");
    Family out;
    out.n = window.n;
    for (SetMask w : window.members) {
        bool ok = true;
        for (SetMask b : base.members)
            if (popcount(w & b) < t) {
                ok = false;
                break;
            }
        if (ok) out.members.push_back(w);
    }
    return out;
}

struct TrialStat {
    std::uint64_t trial = 0;
    std::size_t sample_size = 0;
    std::size_t max_intersecting = 0;
    Rational ratio; // max_intersecting / (p 2^n)
};

struct MonteCarloReport {
    int n = 0;
    int t = 0;
    Rational p;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<TrialStat> per_trial;
    Rational mean_ratio;
    Rational max_ratio;
    BigCount K;
    Rational p2n;
};

// Exact per-trial maxima in independently sampled sublattices. Trial i uses
// the generator seeded by mix(seed, i), so reports are reproducible and
// independent of evaluation order.
inline MonteCarloReport monte_carlo_katona(int n, int t, const Rational& p, std::uint64_t trials,
                                           std::uint64_t seed, const EnumBudget& budget = {}) {
    if (trials == 0) throw std::invalid_argument("needs at least one trial");
    MonteCarloReport rep;
    rep.n = n;
    rep.t = t;
    rep.p = p;
    rep.trials = trials;
    rep.seed = seed;
    rep.K = katona_K(n, t);
    rep.p2n = p * Rational(pow2(static_cast<unsigned>(n)));

    Rational sum = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        RandomSample s = sample_lattice(n, p, SplitMix64::mix(seed, trial));
        TIntersectResult best = max_t_intersecting(s.members, t, budget);
        TrialStat st;
        st.trial = trial;
        st.sample_size = s.members.size();
        st.max_intersecting = best.size;
        st.ratio = rep.p2n == 0 ? Rational(0) : Rational(BigCount(best.size)) / rep.p2n;
        sum += st.ratio;
        if (st.ratio > rep.max_ratio) rep.max_ratio = st.ratio;
        rep.per_trial.push_back(std::move(st));
    }
    rep.mean_ratio = sum / Rational(BigCount(trials));
    return rep;
}

} // namespace boollat
