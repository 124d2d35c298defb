#include <catch2/catch_amalgamated.hpp>

#include "boollat/containers.hpp"

using namespace boollat;

namespace {

Family fam(int n, std::initializer_list<SetMask> ms) { return Family{n, ms}; }

} // namespace

TEST_CASE("hand-traced run on the 2-cube", "[containers]") {
    ImplicitGraph g = comparability_graph(2);
    DenseGraph d = DenseGraph::of(g, {});
    ContainerRun run = run_kw(g, d, fam(2, {0b01, 0b10}), single_stage(3));

    REQUIRE(run.trace.size() == 3);
    CHECK(run.trace[0].vertex == 0b00);
    CHECK(run.trace[0].branch == Branch::skip);
    CHECK(run.trace[1].vertex == 0b11);
    CHECK(run.trace[1].branch == Branch::skip);
    CHECK(run.trace[2].vertex == 0b01);
    CHECK(run.trace[2].branch == Branch::terminate);
    CHECK(run.terminated);
    CHECK(run.fingerprint == std::vector<std::size_t>{1});
    CHECK(run.container == std::vector<std::size_t>{1, 2});

    CHECK(replay(d, run.fingerprint, single_stage(3)).container == run.container);
}

TEST_CASE("empty input set only skips", "[containers]") {
    ImplicitGraph g = comparability_graph(2);
    DenseGraph d = DenseGraph::of(g, {});
    ContainerRun run = run_kw(g, d, Family{2, {}}, single_stage(3));
    CHECK(run.fingerprint.empty());
    CHECK_FALSE(run.terminated);
    for (const auto& step : run.trace) CHECK(step.branch == Branch::skip);
}

TEST_CASE("unrealizable fingerprints are rejected", "[containers]") {
    DenseGraph d = DenseGraph::of(comparability_graph(2), {});
    // expanding at ∅ (degree 3 >= 2) wipes the cube before {1,2} can be consumed
    CHECK_THROWS_AS(replay(d, {0, 3}, single_stage(2)), InvalidFingerprint);
    CHECK_THROWS_AS(replay(d, {0, 4}, single_stage(2)), std::invalid_argument);
    CHECK_THROWS_AS(replay(d, {1, 1}, single_stage(2)), std::invalid_argument);
    CHECK_THROWS_AS(run_kw(d, [] {
                        VertexSet s(4);
                        s.set(0);
                        s.set(1);
                        return s;
                    }(),
                    single_stage(2)),
                    std::invalid_argument); // ∅ and {1} are comparable
}

TEST_CASE("every antichain of the 3-cube lies in its container", "[containers]") {
    ImplicitGraph g = comparability_graph(3);
    DenseGraph d = DenseGraph::of(g, {});
    ContainerReport rep = verify_container_property(d, single_stage(4));
    CHECK(rep.n_independent_sets == 20);
    CHECK(rep.covered);
    CHECK(rep.fingerprint_subset);
    CHECK(rep.replay_deterministic);
    CHECK(rep.fingerprint_bound_ok);
}

TEST_CASE("huge delta terminates on the first selected member", "[containers]") {
    DenseGraph d = DenseGraph::of(hamming_graph(3, 1), {});
    ContainerReport rep = verify_container_property(d, single_stage(7));
    CHECK(rep.n_independent_sets == 13);
    CHECK(rep.covered);
    CHECK(rep.max_fingerprint <= 1);
}

TEST_CASE("container size bound on the 3-cube at delta 2", "[containers]") {
    DenseGraph d = DenseGraph::of(comparability_graph(3), {});
    ContainerReport rep = verify_container_property(d, single_stage(2));
    CHECK(rep.covered);
    CHECK(rep.max_container <= 6);
}

TEST_CASE("enumerated containers cover every antichain of the 2-cube", "[containers]") {
    ImplicitGraph g = comparability_graph(2);
    DenseGraph d = DenseGraph::of(g, {});
    Schedule sched = single_stage(3);
    auto produced = enumerate_containers(d, sched, 2);
    REQUIRE_FALSE(produced.empty());

    std::size_t checked = 0;
    for_each_independent_set(d, {}, [&](const VertexSet& I) {
        ContainerRun run = run_kw(d, I, sched);
        bool found = false;
        for (const auto& fc : produced)
            if (fc.container == run.container && fc.fingerprint == run.fingerprint) found = true;
        CHECK(found);
        ++checked;
    });
    CHECK(checked == 6);

    // max_s=0: only the empty fingerprint, exactly one container
    auto trivial = enumerate_containers(d, sched, 0);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].fingerprint.empty());

    // thread count must not change output
    auto threaded = enumerate_containers(d, sched, 2, {}, 3);
    REQUIRE(threaded.size() == produced.size());
    for (std::size_t i = 0; i < produced.size(); ++i) {
        CHECK(threaded[i].fingerprint == produced[i].fingerprint);
        CHECK(threaded[i].container == produced[i].container);
    }
}

TEST_CASE("two-stage schedules switch on the live vertex count", "[containers]") {
    DenseGraph d = DenseGraph::of(comparability_graph(4), {});
    Schedule sched = parse_schedule("8,2", "12");
    REQUIRE(sched.stages.size() == 2);
    ContainerReport rep = verify_container_property(d, sched);
    CHECK(rep.n_independent_sets == 168);
    CHECK(rep.covered);
    CHECK(rep.fingerprint_subset);
    CHECK(rep.replay_deterministic);
    CHECK(rep.fingerprint_bound_ok);
}

TEST_CASE("schedule validation", "[containers]") {
    CHECK_THROWS_AS(parse_schedule("2,8", "12"), std::invalid_argument); // increasing
    CHECK_THROWS_AS(parse_schedule("8,2", ""), std::invalid_argument);   // missing switch
    CHECK_THROWS_AS(parse_schedule("0", ""), std::invalid_argument);     // non-positive
    CHECK_THROWS_AS(parse_schedule("", ""), std::invalid_argument);      // empty
    Schedule s = parse_schedule("7/2,1.5", "6");
    CHECK(s.stages[0].delta == Rational(7, 2));
    CHECK(s.stages[1].delta == Rational(3, 2));
    CHECK(schedule_to_string(s) == "delta=7/2 until |V|<6; delta=3/2");
}

TEST_CASE("runs with equal fingerprints give equal containers", "[containers]") {
    DenseGraph d = DenseGraph::of(comparability_graph(3), {});
    Schedule sched = single_stage(2);
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> seen;
    for_each_independent_set(d, {}, [&](const VertexSet& I) {
        ContainerRun run = run_kw(d, I, sched);
        auto [it, fresh] = seen.emplace(run.fingerprint, run.container);
        if (!fresh) CHECK(it->second == run.container);
    });
}
