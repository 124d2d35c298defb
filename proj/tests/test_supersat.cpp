#include <catch2/catch_amalgamated.hpp>

#include "boollat/supersat.hpp"

#include <algorithm>
#include <set>

using namespace boollat;

namespace {

Family whole_cube(int n) {
    Family f;
    f.n = n;
    for (SetMask m = 0; m < (SetMask{1} << n); ++m) f.members.push_back(m);
    return f;
}

Family family_of_masks(int n, std::vector<SetMask> ms) {
    Family f;
    f.n = n;
    f.members = std::move(ms);
    return f;
}

} // namespace

TEST_CASE("induced edge counts on known families", "[supersat]") {
    ImplicitGraph comp2 = comparability_graph(2);
    CHECK(count_edges_in_induced(comp2, whole_cube(2)) == 5);
    CHECK(count_edges_in_induced(comp2, family_of_masks(2, {0b01})) == 0);

    ImplicitGraph ham = hamming_graph(3, 1);
    CHECK(count_edges_in_induced(ham, family_of_masks(3, {0b000, 0b011, 0b101})) == 3);

    // members must be vertices of the graph at hand
    ImplicitGraph layers = bnk_graph(3, 1);
    CHECK_THROWS_AS(count_edges_in_induced(layers, family_of_masks(3, {0b111})),
                    std::invalid_argument);
}

TEST_CASE("max induced degree picks the lowest witness", "[supersat]") {
    ImplicitGraph comp2 = comparability_graph(2);
    InducedDegree d = max_degree_induced(comp2, family_of_masks(2, {0b00, 0b01, 0b10}));
    CHECK(d.vertex == 0);
    CHECK(d.degree == 2);

    // regular graph: ties resolve to vertex 0
    InducedDegree r = max_degree_induced(hamming_graph(3, 1), whole_cube(3));
    CHECK(r.vertex == 0);
    CHECK(r.degree == 6);

    // triangle of disjoint pair vertices
    ImplicitGraph tri = transport_graph(4, 2, 1);
    std::vector<std::size_t> all_pairs{0, 1, 2};
    InducedDegree t = max_degree_induced(tri, all_pairs);
    CHECK(t.vertex == 0);
    CHECK(t.degree == 2);

    CHECK_THROWS_AS(max_degree_induced(comp2, Family{2, {}}), std::invalid_argument);
}

TEST_CASE("exhaustive minimum edge search", "[supersat]") {
    DenseGraph comp2 = DenseGraph::of(comparability_graph(2));
    MinEdgesResult r = min_edges_over_families(comp2, 3, SearchMode::exhaustive);
    CHECK(r.edges == 2);
    CHECK(r.exhaustive);
    CHECK(r.witness.size() == 3);

    DenseGraph ham = DenseGraph::of(hamming_graph(3, 1));
    CHECK(min_edges_over_families(ham, 3, SearchMode::exhaustive).edges == 2);

    // an antichain-sized family can be edge-free in the comparability graph
    DenseGraph comp3 = DenseGraph::of(comparability_graph(3));
    CHECK(min_edges_over_families(comp3, 3, SearchMode::exhaustive).edges == 0);

    EnumBudget tiny;
    tiny.max_nodes = 4;
    CHECK_THROWS_AS(min_edges_over_families(ham, 4, SearchMode::exhaustive, 32, 0, tiny),
                    BudgetExceeded);
}

TEST_CASE("local search matches the exhaustive minimum on small graphs", "[supersat]") {
    for (int n : {2, 3}) {
        DenseGraph d = DenseGraph::of(comparability_graph(n));
        for (std::size_t size : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
            BigCount truth = min_edges_over_families(d, size, SearchMode::exhaustive).edges;
            MinEdgesResult found = min_edges_over_families(d, size, SearchMode::random, 8, 1);
            CHECK_FALSE(found.exhaustive);
            CHECK(found.edges == truth);
        }
    }

    // byte-for-byte determinism in the seeded search
    DenseGraph d = DenseGraph::of(hamming_graph(4, 1));
    MinEdgesResult a = min_edges_over_families(d, 5, SearchMode::random, 8, 42);
    MinEdgesResult b = min_edges_over_families(d, 5, SearchMode::random, 8, 42);
    CHECK(a.edges == b.edges);
    CHECK(a.witness == b.witness);

    // the greedy start alone already solves the matching-plus-isolated case
    DenseGraph tilt = DenseGraph::of(tilt_graph(3, 1, 2));
    CHECK(min_edges_over_families(tilt, 6, SearchMode::random, 1, 0).edges == 1);
}

TEST_CASE("bad pairs against a chain decomposition", "[supersat]") {
    SCD scd3 = build_scd(3);
    // two members of one chain
    CHECK(scd_bad_pairs(family_of_masks(3, {0b000, 0b111}), scd3) == 1);

    // a full chain of length L contributes L choose 2
    std::size_t longest = 0;
    for (std::size_t c = 0; c < scd3.chains.size(); ++c)
        if (scd3.chains[c].size() > scd3.chains[longest].size()) longest = c;
    Family chain = family_of_masks(3, scd3.chains[longest]);
    std::size_t L = chain.members.size();
    CHECK(scd_bad_pairs(chain, scd3) == binomial(L, 2));

    // the middle layer is a transversal
    CHECK(scd_bad_pairs(middle_layer_plus(4, 0), build_scd(4)) == 0);

    CHECK_THROWS_AS(scd_bad_pairs(family_of_masks(2, {0b01}), scd3), std::invalid_argument);
}

TEST_CASE("chain pigeonhole: x extra sets force x bad pairs", "[supersat]") {
    // exhaustively at n=3: every 4-subset of the cube meets some chain twice
    SCD scd3 = build_scd(3);
    for (std::uint32_t sub = 0; sub < 256; ++sub) {
        if (std::popcount(sub) != 4) continue;
        Family f;
        f.n = 3;
        for (int m = 0; m < 8; ++m)
            if (sub >> m & 1) f.members.push_back(static_cast<SetMask>(m));
        CHECK(scd_bad_pairs(f, scd3) >= 1);
    }

    // random families and random symmetric decompositions at n = 4, 5
    for (int n : {4, 5}) {
        std::size_t width = binomial(n, n / 2).convert_to<std::size_t>();
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
            SplitMix64 rng(SplitMix64::mix(1234, trial * 8 + static_cast<std::uint64_t>(n)));
            std::size_t x = 1 + static_cast<std::size_t>(rng.below(3));
            std::vector<SetMask> all;
            for (SetMask m = 0; m < (SetMask{1} << n); ++m) all.push_back(m);
            for (std::size_t i = 0; i < width + x; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
                std::swap(all[i], all[j]);
            }
            all.resize(width + x);
            Family f = family_of_masks(n, all);
            SCD scd = apply_permutation(sample_permutation(n, rng.next()), build_scd(n));
            CHECK(scd_bad_pairs(f, scd) >= x);
        }
    }
}

TEST_CASE("difference profile of the whole 2-cube", "[supersat]") {
    DifferenceProfile p = difference_profile(whole_cube(2));
    REQUIRE(p.B.size() == 3);
    CHECK(p.B[1] == 4);
    CHECK(p.B[2] == 1);
    CHECK(p.b_geq(1) == 5);
    CHECK(p.b_geq(2) == 1);

    DifferenceProfile flat = difference_profile(middle_layer_plus(4, 0));
    for (std::size_t i = 1; i < flat.B.size(); ++i) CHECK(flat.B[i] == 0);
}

TEST_CASE("weighted difference inequality, exhaustively at n=4", "[supersat]") {
    // all families of 6+x sets with member sizes between 1 and 3
    std::vector<SetMask> pool;
    for (SetMask m = 0; m < 16; ++m)
        if (popcount(m) >= 1 && popcount(m) <= 3) pool.push_back(m);
    REQUIRE(pool.size() == 14);

    for (std::size_t x : {std::size_t{1}, std::size_t{2}}) {
        std::size_t size = 6 + x;
        std::vector<std::size_t> comb(size);
        for (std::size_t i = 0; i < size; ++i) comb[i] = i;
        bool all_hold = true;
        Rational slack_min;
        bool have_min = false;
        for (;;) {
            Family f;
            f.n = 4;
            for (auto i : comb) f.members.push_back(pool[i]);
            Rational lhs = difference_profile(f).weighted_value(1);
            if (lhs < Rational(BigCount(x))) all_hold = false;
            Rational slack = lhs - Rational(BigCount(x));
            if (!have_min || slack < slack_min) {
                slack_min = slack;
                have_min = true;
            }
            std::size_t i = size;
            while (i > 0 && comb[i - 1] == pool.size() - size + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
        CHECK(all_hold);
        // the bound is tight at the middle-layer-plus witness
        if (x == 1) CHECK(slack_min == Rational(0));
    }
}

TEST_CASE("two-coloured comparable pair counting", "[supersat]") {
    CHECK(count_mono_pairs(whole_cube(2), 0b01) == 4);

    // an empty colour class degenerates to plain comparability
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Family f;
        f.n = 4;
        for (SetMask m = 0; m < 16; ++m)
            if (rng.next() & 1) f.members.push_back(m);
        CHECK(count_mono_pairs(f, 0) == count_edges_in_induced(comparability_graph(4), f));
    }

    // a maximum independent family has no such pairs
    MaxISResult is = max_independent_set(mono_diff_graph(2, 0b01));
    REQUIRE(is.size == 2);
    Family f;
    f.n = 2;
    for (auto v : is.witness) f.members.push_back(static_cast<SetMask>(v));
    CHECK(count_mono_pairs(f, 0b01) == 0);
}

TEST_CASE("middle layer plus a partial upper layer", "[supersat]") {
    Family f = middle_layer_plus(4, 2);
    CHECK(f.members.size() == 8);
    CHECK(std::is_sorted(f.members.begin(), f.members.end()));
    for (SetMask m : f.members) CHECK((popcount(m) == 2 || popcount(m) == 3));
    CHECK_THROWS_AS(middle_layer_plus(3, 4), std::invalid_argument);
}

TEST_CASE("comparable pair supersaturation", "[supersat]") {
    // exhaustive at n = 2 and 3 for every feasible excess
    for (int n : {2, 3}) {
        std::size_t width = binomial(n, n / 2).convert_to<std::size_t>();
        std::size_t room = (std::size_t{1} << n) - width;
        for (std::size_t x = 1; x <= room; ++x) {
            SupersatCheck c = kleitman_check(n, x, SearchMode::exhaustive);
            INFO("n=" << n << " x=" << x);
            CHECK(c.exhaustive);
            CHECK(c.pass);
        }
    }

    // equality witness: each extra set one layer up adds exactly n/2+1 pairs
    for (std::size_t x : {std::size_t{1}, std::size_t{2}}) {
        Family f = middle_layer_plus(4, x);
        CHECK(count_edges_in_induced(comparability_graph(4), f) == BigCount(3 * x));
    }
    SupersatCheck tight = kleitman_check(4, 1, SearchMode::exhaustive);
    CHECK(tight.pass);
    CHECK(Rational(tight.observed_min) == tight.bound);

    // seeded search at n = 4 stays above the bound
    SupersatCheck r = kleitman_check(4, 2, SearchMode::random, 8, 3);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.pass);
}

TEST_CASE("close pair supersaturation above the packing bound", "[supersat]") {
    // at the packing bound itself a perfect code has no close pairs
    SupersatCheck base = hamming_supersat_check(3, 1, 0, SearchMode::exhaustive);
    CHECK(base.family_size == 2);
    CHECK(base.observed_min == 0);
    CHECK(base.pass);

    for (std::size_t x = 1; x <= 3; ++x) {
        SupersatCheck c = hamming_supersat_check(3, 1, x, SearchMode::exhaustive);
        INFO("x=" << x);
        CHECK(c.bound == Rational(BigCount(3 * x), BigCount(2)));
        CHECK(c.pass);
    }
}

TEST_CASE("tilted pair supersaturation is tight on the small matching", "[supersat]") {
    for (std::size_t x = 1; x <= 3; ++x) {
        SupersatCheck c = tilt_supersat_check(3, 1, 2, x, SearchMode::exhaustive);
        INFO("x=" << x);
        CHECK(c.family_size == 5 + x);
        CHECK(c.pass);
        CHECK(Rational(c.observed_min) == Rational(BigCount(x)));
    }
}

TEST_CASE("transport pair supersaturation", "[supersat]") {
    SupersatCheck tri = transport_supersat_check(4, 2, 1, 1, SearchMode::exhaustive);
    CHECK(tri.family_size == 3);
    CHECK(tri.observed_min == 3);
    CHECK(tri.bound == Rational(2));
    CHECK(tri.pass);

    SupersatCheck c = transport_supersat_check(5, 2, 1, 1, SearchMode::exhaustive);
    CHECK(c.family_size == 4);
    CHECK(c.pass);
}

TEST_CASE("two-coloured supersaturation", "[supersat]") {
    for (std::size_t x = 1; x <= 2; ++x) {
        SupersatCheck c = mono_supersat_check(3, 0b001, x, SearchMode::exhaustive);
        INFO("x=" << x);
        CHECK(c.pass);
    }
}

TEST_CASE("disjoint pair minimisers are layered", "[supersat]") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<BigCount> truth = min_disjoint_pairs_by_size(n);
        for (std::size_t size = 0; size < truth.size(); ++size) {
            INFO("n=" << n << " size=" << size);
            CHECK(truth[size] == layered_disjoint_min(n, size));
        }
    }

    SupersatCheck c = claim_cd_check(3, 5, SearchMode::exhaustive);
    CHECK(c.exhaustive);
    CHECK(c.pass);
    CHECK(Rational(c.observed_min) == c.bound);
}

TEST_CASE("max induced degree above twice the packing bound", "[supersat]") {
    ImplicitGraph g = hamming_graph(3, 1);
    Rational a = alpha(3, 1);
    CHECK(a == Rational(3, 20));
    for (std::uint32_t sub = 0; sub < 256; ++sub) {
        if (std::popcount(sub) < 4) continue; // 2 * packing bound
        Family f;
        f.n = 3;
        for (int m = 0; m < 8; ++m)
            if (sub >> m & 1) f.members.push_back(static_cast<SetMask>(m));
        InducedDegree d = max_degree_induced(g, f);
        CHECK(Rational(BigCount(d.degree)) >= a * Rational(BigCount(f.members.size())));
    }
}

TEST_CASE("weighted difference inequality", "[supersat]") {
    WeightedCheck c = weighted_difference_check(4, 1, 1, SearchMode::exhaustive);
    CHECK(c.exhaustive);
    CHECK(c.family_size == 7);
    CHECK(c.bound == Rational(1));
    CHECK(c.pass);
    CHECK(difference_profile(c.witness).weighted_value(1) == c.observed_min);
    for (SetMask m : c.witness.members) {
        int s = popcount(m);
        CHECK((1 <= s && s <= 3));
    }

    WeightedCheck r1 = weighted_difference_check(4, 1, 2, SearchMode::random, 8, 3);
    WeightedCheck r2 = weighted_difference_check(4, 1, 2, SearchMode::random, 8, 3);
    CHECK_FALSE(r1.exhaustive);
    CHECK(r1.observed_min == r2.observed_min);
    CHECK(r1.witness == r2.witness);
    CHECK(r1.pass);

    CHECK_THROWS_AS(weighted_difference_check(4, 3, 1, SearchMode::exhaustive),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_difference_check(4, 1, 0, SearchMode::exhaustive),
                    std::invalid_argument);
}
