#pragma once

#include "boollat/enumerate.hpp"
#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/numeric.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace boollat {

struct Stage {
    std::optional<std::size_t> switch_threshold; // on |V(G_i)|; absent only for the final stage
    Rational delta;
};

struct Schedule {
    std::vector<Stage> stages;
};

inline void validate_schedule(const Schedule& s) {
    if (s.stages.empty()) throw std::invalid_argument("schedule needs at least one stage");
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        if (s.stages[i].delta <= 0) throw std::invalid_argument("stage delta must be positive");
        if (i + 1 < s.stages.size()) {
            if (!s.stages[i].switch_threshold)
                throw std::invalid_argument("only the final stage may omit switch_threshold");
            if (s.stages[i + 1].delta >= s.stages[i].delta)
                throw std::invalid_argument("stage deltas must strictly decrease");
        }
    }
}

inline Schedule single_stage(Rational delta) { return Schedule{{Stage{std::nullopt, std::move(delta)}}}; }

// Parses "8,2" + "6" into a two-stage schedule: stage i gets deltas[i] and,
// for non-final stages, switches[i].
inline Schedule parse_schedule(const std::string& delta_csv, const std::string& switch_csv) {
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            auto comma = s.find(',', pos);
            if (comma == std::string::npos) {
                if (pos < s.size()) out.push_back(s.substr(pos));
                break;
            }
            out.push_back(s.substr(pos, comma - pos));
            pos = comma + 1;
        }
        return out;
    };
    auto deltas = split(delta_csv);
    auto switches = split(switch_csv);
    if (deltas.empty()) throw std::invalid_argument("schedule needs at least one delta");
    if (switches.size() + 1 != deltas.size() && switches.size() != deltas.size())
        throw std::invalid_argument("need one switch threshold per non-final stage");
    Schedule s;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        Stage st;
        st.delta = parse_rational(deltas[i]);
        if (i < switches.size()) st.switch_threshold = std::stoull(switches[i]);
        s.stages.push_back(std::move(st));
    }
    validate_schedule(s);
    return s;
}

inline std::string schedule_to_string(const Schedule& s) {
    std::string out;
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        if (i) out += "; ";
        out += "delta=" + s.stages[i].delta.str();
        if (s.stages[i].switch_threshold)
            out += " until |V|<" + std::to_string(*s.stages[i].switch_threshold);
    }
    return out;
}

enum class Branch { skip, expand, terminate };

struct TraceStep {
    std::size_t step;
    std::size_t vertex;
    Branch branch;
};

struct ContainerRun {
    std::vector<std::size_t> fingerprint; // sorted vertex indices
    std::vector<std::size_t> container;   // sorted; fingerprint ∪ f(S)
    std::vector<TraceStep> trace;
    bool terminated = false; // low-degree termination reached (vs. graph exhausted)
};

class InvalidFingerprint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Live subgraph with incremental degrees and (degree desc, index asc) selection.
class KWState {
public:
    explicit KWState(const DenseGraph& g)
        : g_(g), alive_(VertexSet::all(g.num_vertices())), deg_(g.num_vertices()) {
        for (std::size_t u = 0; u < g.num_vertices(); ++u) {
            deg_[u] = g.row(u).count();
            order_.insert({deg_[u], u});
        }
    }

    bool empty() const { return order_.empty(); }
    std::size_t alive_count() const { return order_.size(); }
    const VertexSet& alive() const { return alive_; }

    // (vertex, degree) of the max-degree vertex, ties by lowest index.
    std::pair<std::size_t, std::size_t> top() const {
        auto [deg, idx] = *order_.begin();
        return {idx, deg};
    }

    template <class Hook>
    void remove(std::size_t v, Hook&& on_removed) {
        alive_.reset(v);
        order_.erase({deg_[v], v});
        VertexSet nb = g_.row(v);
        nb &= alive_;
        nb.for_each([&](std::size_t w) {
            order_.erase({deg_[w], w});
            order_.insert({--deg_[w], w});
        });
        on_removed(v);
    }

private:
    struct MaxDegMinIdx {
        bool operator()(const std::pair<std::size_t, std::size_t>& a,
                        const std::pair<std::size_t, std::size_t>& b) const {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        }
    };

    const DenseGraph& g_;
    VertexSet alive_;
    std::vector<std::size_t> deg_;
    std::set<std::pair<std::size_t, std::size_t>, MaxDegMinIdx> order_;
};

// One pass of the container algorithm. `member` answers the independent-set
// membership query for the selected vertex; `on_removed` fires for every
// removal that is not the consumption of a selected member.
template <class MemberFn, class RemoveHook>
ContainerRun kw_core(const DenseGraph& g, const Schedule& sched, MemberFn&& member,
                     RemoveHook&& on_removed) {
    validate_schedule(sched);
    KWState st(g);
    ContainerRun run;
    std::size_t stage = 0, step = 0;
    auto noop = [](std::size_t) {};
    for (;;) {
        while (stage + 1 < sched.stages.size() && sched.stages[stage].switch_threshold &&
               st.alive_count() < *sched.stages[stage].switch_threshold)
            ++stage;
        if (st.empty()) break; // graph exhausted: f(S) = ∅
        auto [u, deg] = st.top();
        if (!member(u)) {
            run.trace.push_back({step, u, Branch::skip});
            st.remove(u, on_removed);
        } else if (Rational(static_cast<std::uint64_t>(deg)) >= sched.stages[stage].delta) {
            run.trace.push_back({step, u, Branch::expand});
            run.fingerprint.push_back(u);
            st.remove(u, noop);
            // neighborhood in the ORIGINAL graph, not the current one
            VertexSet nb = g.row(u);
            nb &= st.alive();
            nb.for_each([&](std::size_t w) { st.remove(w, on_removed); });
        } else {
            run.trace.push_back({step, u, Branch::terminate});
            run.fingerprint.push_back(u);
            st.remove(u, noop);
            run.terminated = true;
            break;
        }
        ++step;
    }
    run.container = run.fingerprint;
    st.alive().for_each([&](std::size_t v) { run.container.push_back(v); });
    std::sort(run.fingerprint.begin(), run.fingerprint.end());
    std::sort(run.container.begin(), run.container.end());
    return run;
}

} // namespace detail

inline ContainerRun run_kw(const DenseGraph& g, const VertexSet& I, const Schedule& sched) {
    if (!g.independent(I)) throw std::invalid_argument("input set is not independent");
    return detail::kw_core(
        g, sched, [&](std::size_t u) { return I.test(u); }, [](std::size_t) {});
}

inline ContainerRun run_kw(const ImplicitGraph& g, const DenseGraph& d, const Family& I,
                           const Schedule& sched) {
    VertexSet vs(d.num_vertices());
    for (SetMask m : I.members) {
        auto idx = g.index_of_mask(m);
        if (!idx) throw std::invalid_argument("family member is not a vertex of the graph");
        vs.set(*idx);
    }
    return run_kw(d, vs, sched);
}

// Deterministic reconstruction of the container from a fingerprint alone.
// Throws InvalidFingerprint when S cannot have been produced by run_kw.
inline ContainerRun replay(const DenseGraph& g, const std::vector<std::size_t>& S,
                           const Schedule& sched) {
    VertexSet sset(g.num_vertices());
    for (auto v : S) {
        if (v >= g.num_vertices()) throw std::invalid_argument("fingerprint vertex out of range");
        if (sset.test(v)) throw std::invalid_argument("fingerprint has a repeated vertex");
        sset.set(v);
    }
    std::size_t consumed = 0;
    ContainerRun run = detail::kw_core(
        g, sched,
        [&](std::size_t u) {
            bool in = sset.test(u);
            if (in) ++consumed;
            return in;
        },
        [&](std::size_t w) {
            if (sset.test(w))
                throw InvalidFingerprint("fingerprint member removed before selection");
        });
    if (consumed != S.size())
        throw InvalidFingerprint("run ended before consuming the whole fingerprint");
    return run;
}

struct FingerprintContainer {
    std::vector<std::size_t> fingerprint;
    std::vector<std::size_t> container;
};

// All realizable fingerprints with |S| <= max_s, in canonical candidate order
// (by size, then lexicographic). Output is independent of the thread count.
inline std::vector<FingerprintContainer> enumerate_containers(const DenseGraph& g,
                                                              const Schedule& sched,
                                                              std::size_t max_s,
                                                              const EnumBudget& budget = {},
                                                              unsigned threads = 1) {
    std::size_t nv = g.num_vertices();
    BigCount candidates = 0;
    for (std::size_t s = 0; s <= max_s; ++s) candidates += binomial(nv, s);
    if (candidates > budget.max_nodes)
        throw BudgetExceeded("fingerprint candidate space exceeds budget", 0);

    std::vector<std::vector<std::size_t>> cand;
    for (std::size_t s = 0; s <= max_s && s <= nv; ++s) {
        std::vector<std::size_t> comb(s);
        for (std::size_t i = 0; i < s; ++i) comb[i] = i;
        for (;;) {
            cand.push_back(comb);
            if (s == 0) break;
            // next lexicographic s-combination of {0..nv-1}
            std::size_t i = s;
            while (i > 0 && comb[i - 1] == nv - s + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < s; ++j) comb[j] = comb[j - 1] + 1;
        }
    }

    std::vector<std::optional<FingerprintContainer>> results(cand.size());
    auto worker = [&](unsigned w) {
        for (std::size_t i = w; i < cand.size(); i += threads) {
            try {
                ContainerRun run = replay(g, cand[i], sched);
                results[i] = FingerprintContainer{run.fingerprint, run.container};
            } catch (const InvalidFingerprint&) {
            }
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    std::vector<FingerprintContainer> out;
    for (auto& r : results)
        if (r) out.push_back(std::move(*r));
    return out;
}

struct ContainerReport {
    BigCount n_independent_sets = 0;
    bool covered = true;               // I ⊆ container for every independent I
    bool fingerprint_subset = true;    // S ⊆ I for every run
    bool replay_deterministic = true;  // replay(S) reproduces the run's container
    bool fingerprint_bound_ok = true;  // |S| ≤ |V|/Δ_final + #stages
    std::size_t max_fingerprint = 0;
    std::size_t max_container = 0;
    std::size_t n_containers = 0; // distinct containers over all independent sets
};

inline ContainerReport verify_container_property(const DenseGraph& g, const Schedule& sched,
                                                 const EnumBudget& budget = {}) {
    validate_schedule(sched);
    ContainerReport rep;
    std::set<std::vector<std::size_t>> distinct;
    const Rational bound = Rational(static_cast<std::uint64_t>(g.num_vertices())) /
                               sched.stages.back().delta +
                           static_cast<std::uint64_t>(sched.stages.size());
    rep.n_independent_sets = for_each_independent_set(g, budget, [&](const VertexSet& I) {
        ContainerRun run = run_kw(g, I, sched);
        VertexSet cont(g.num_vertices()), fp(g.num_vertices());
        for (auto v : run.container) cont.set(v);
        for (auto v : run.fingerprint) fp.set(v);
        if (!I.subset_of(cont)) rep.covered = false;
        if (!fp.subset_of(I)) rep.fingerprint_subset = false;
        if (Rational(static_cast<std::uint64_t>(run.fingerprint.size())) > bound)
            rep.fingerprint_bound_ok = false;
        try {
            if (replay(g, run.fingerprint, sched).container != run.container)
                rep.replay_deterministic = false;
        } catch (const InvalidFingerprint&) {
            rep.replay_deterministic = false;
        }
        rep.max_fingerprint = std::max(rep.max_fingerprint, run.fingerprint.size());
        rep.max_container = std::max(rep.max_container, run.container.size());
        distinct.insert(run.container);
    });
    rep.n_containers = distinct.size();
    return rep;
}

} // namespace boollat
