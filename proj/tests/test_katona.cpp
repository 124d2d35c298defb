#include <catch2/catch_amalgamated.hpp>

#include "boollat/katona.hpp"

#include <algorithm>

using namespace boollat;

TEST_CASE("maximum t-intersecting family size formula", "[katona]") {
    CHECK(katona_K(3, 1) == 4);
    CHECK(katona_K(4, 1) == 8);
    CHECK(katona_K(4, 2) == 5);
    CHECK(katona_K(5, 2) == 10);
    CHECK_THROWS_AS(katona_K(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(katona_K(4, 5), std::invalid_argument);

    // the 1-intersecting maximum is exactly half the cube for every n
    for (int n = 1; n <= 20; ++n) CHECK(katona_K(n, 1) == pow2(static_cast<unsigned>(n - 1)));
}

TEST_CASE("formula equals the exhaustive maximum", "[katona]") {
    for (int n = 1; n <= 5; ++n)
        for (int t = 1; t <= n; ++t) {
            MaxISResult best = max_independent_set(intersection_graph(n, t));
            INFO("n=" << n << " t=" << t);
            CHECK(BigCount(best.size) == katona_K(n, t));
        }
}

TEST_CASE("seeded sublattice sampling", "[katona]") {
    CHECK(sample_lattice(4, Rational(1), 7).members.size() == 16);
    CHECK(sample_lattice(4, Rational(0), 7).members.size() == 0);
    CHECK_THROWS_AS(sample_lattice(4, Rational(3, 2), 7), std::invalid_argument);

    RandomSample a = sample_lattice(8, Rational(1, 3), 99);
    RandomSample b = sample_lattice(8, Rational(1, 3), 99);
    CHECK(a.members == b.members);
    RandomSample c = sample_lattice(8, Rational(1, 3), 100);
    CHECK(a.members.members != c.members.members);

    // sample sizes concentrate around p 2^n
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::size_t size = sample_lattice(10, Rational(1, 2), seed).members.size();
        if (size >= 412 && size <= 612) ++inside;
    }
    CHECK(inside >= 990);
}

TEST_CASE("exact maximum within a family", "[katona]") {
    Family cube;
    cube.n = 3;
    for (SetMask m = 0; m < 8; ++m) cube.members.push_back(m);
    TIntersectResult r = max_t_intersecting(cube, 1);
    CHECK(r.size == 4);
    CHECK(is_t_intersecting(r.witness, 1));
    for (SetMask m : r.witness.members) CHECK(cube.contains(m));

    Family empty_only;
    empty_only.n = 3;
    empty_only.members = {0};
    CHECK(max_t_intersecting(empty_only, 1).size == 1);

    // a chain of supersets of [2] is trivially 2-intersecting
    Family chain;
    chain.n = 5;
    chain.members = {0b00011, 0b00111, 0b01111, 0b11111};
    CHECK(max_t_intersecting(chain, 2).size == 4);

    EnumBudget tiny;
    tiny.max_vertices = 4;
    CHECK_THROWS_AS(max_t_intersecting(cube, 1, tiny), BudgetExceeded);
}

TEST_CASE("explicit family above the middle", "[katona]") {
    Family ex = build_A_ex(4, 2);
    CHECK(ex.members.size() == 5);
    for (SetMask m : ex.members) CHECK(2 * popcount(m) >= 4 + 2);
    CHECK(is_t_intersecting(ex, 2));

    Family big = build_A_ex(12, 1);
    CHECK(BigCount(big.members.size()) == binom_at_least(12, 7));
    CHECK(is_t_intersecting(big, 1));
}

TEST_CASE("explicit family below the middle", "[katona]") {
    // at n=9, a=1 the window admits only size 3, majority >= 3 of [4]
    Family lo = build_A_lower(9, 1, Rational(1));
    REQUIRE(lo.members.size() == 4);
    for (SetMask m : lo.members) {
        CHECK(popcount(m) == 3);
        CHECK(popcount(m & full_mask(4)) >= 3);
    }
    CHECK(is_t_intersecting(lo, 1));

    // the majority threshold can empty the family even when the window is not
    CHECK(build_A_lower(9, 2, Rational(1)).members.empty());
    // and the window itself can be empty
    CHECK(build_A_lower(4, 1, Rational(10)).members.empty());

    CHECK_THROWS_AS(build_A_lower(4, 1, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(build_A_lower(4, 1, Rational(-1)), std::invalid_argument);
}

TEST_CASE("compatible extension keeps the union intersecting", "[katona]") {
    Family ex = build_A_ex(9, 1);
    RandomSample sample = sample_lattice(9, Rational(1, 2), 2024);
    Family base = intersect_families(ex, sample.members);
    Family window = intersect_families(build_A_lower(9, 1, Rational(1)), sample.members);
    Family added = compatible_extension(base, window, 1);
    Family whole = merge_families(base, added);
    CHECK(is_t_intersecting(whole, 1));
    CHECK(whole.members.size() >= base.members.size());

    // any window member outside the extension misses some base member
    for (SetMask w : window.members) {
        if (added.contains(w)) continue;
        bool misses = false;
        for (SetMask b : base.members)
            if (popcount(w & b) < 1) misses = true;
        CHECK(misses);
    }
}

TEST_CASE("family set operations", "[katona]") {
    Family a;
    a.n = 3;
    a.members = {0b001, 0b010, 0b100};
    Family b;
    b.n = 3;
    b.members = {0b100, 0b001, 0b111};
    CHECK(intersect_families(a, b).members == std::vector<SetMask>{0b001, 0b100});
    CHECK(merge_families(a, b).members == std::vector<SetMask>{0b001, 0b010, 0b100, 0b111});
    Family other;
    other.n = 4;
    CHECK_THROWS_AS(intersect_families(a, other), std::invalid_argument);
}

TEST_CASE("monte carlo report under degenerate sampling", "[katona]") {
    MonteCarloReport full = monte_carlo_katona(4, 1, Rational(1), 3, 5);
    CHECK(full.p2n == Rational(16));
    for (const TrialStat& st : full.per_trial) {
        CHECK(st.sample_size == 16);
        CHECK(st.ratio == Rational(1, 2));
    }
    CHECK(full.mean_ratio == Rational(1, 2));
    CHECK(full.max_ratio == Rational(1, 2));
    CHECK(full.K == 8);

    MonteCarloReport none = monte_carlo_katona(4, 1, Rational(0), 2, 5);
    for (const TrialStat& st : none.per_trial) {
        CHECK(st.sample_size == 0);
        CHECK(st.ratio == Rational(0));
    }
    CHECK(none.mean_ratio == Rational(0));

    CHECK_THROWS_AS(monte_carlo_katona(4, 1, Rational(1), 0, 5), std::invalid_argument);
}

TEST_CASE("monte carlo reproducibility and calibration", "[katona]") {
    MonteCarloReport a = monte_carlo_katona(6, 1, Rational(1, 2), 10, 77);
    MonteCarloReport b = monte_carlo_katona(6, 1, Rational(1, 2), 10, 77);
    REQUIRE(a.per_trial.size() == b.per_trial.size());
    for (std::size_t i = 0; i < a.per_trial.size(); ++i) {
        CHECK(a.per_trial[i].sample_size == b.per_trial[i].sample_size);
        CHECK(a.per_trial[i].max_intersecting == b.per_trial[i].max_intersecting);
        CHECK(a.per_trial[i].ratio == b.per_trial[i].ratio);
    }
    CHECK(a.mean_ratio == b.mean_ratio);

    // finite-n regime sits between the asymptotic half and the trivial 1
    MonteCarloReport cal = monte_carlo_katona(10, 1, Rational(1, 2), 50, 123);
    CHECK(cal.mean_ratio >= Rational(1, 2));
    CHECK(cal.mean_ratio <= Rational(3, 4));
}
