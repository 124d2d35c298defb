#pragma once

#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/numeric.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace boollat {

struct EnumBudget {
    std::size_t max_vertices = std::size_t{1} << 12;
    std::uint64_t max_nodes = std::uint64_t{1} << 20;
    double timeout_seconds = 60.0;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t nodes)
        : std::runtime_error(what + " (nodes expanded: " + std::to_string(nodes) + ")"),
          nodes_expanded(nodes) {}
    std::uint64_t nodes_expanded;
};

// Subset of vertices of a DenseGraph, fixed word width per graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t nbits) : w_((nbits + 63) / 64, 0) {}

    static VertexSet all(std::size_t nbits) {
        VertexSet s(nbits);
        for (std::size_t i = 0; i < nbits; ++i) s.w_[i / 64] |= std::uint64_t{1} << (i % 64);
        return s;
    }

    bool test(std::size_t i) const { return w_[i / 64] >> (i % 64) & 1; }
    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }
    // Lowest set bit; only valid when !empty().
    std::size_t first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        throw std::logic_error("first() on empty vertex set");
    }

    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    VertexSet& subtract(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    std::size_t intersection_count(const VertexSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
        return c;
    }
    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }
    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    // Clears bits 0..i inclusive.
    void reset_leq(std::size_t i) {
        std::size_t word = i / 64;
        for (std::size_t j = 0; j < word; ++j) w_[j] = 0;
        if (i % 64 == 63) w_[word] = 0;
        else w_[word] &= ~((std::uint64_t{1} << (i % 64 + 1)) - 1);
    }

    bool operator==(const VertexSet& o) const { return w_ == o.w_; }
    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (auto w : w_) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    std::vector<std::uint64_t> w_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

// Materialized adjacency bitsets; the workhorse for the exact oracles.
class DenseGraph {
public:
    template <class Adj>
    static DenseGraph build(std::size_t nv, Adj&& adj) {
        DenseGraph g;
        g.nv_ = nv;
        g.rows_.assign(nv, VertexSet(nv));
        for (std::size_t u = 0; u < nv; ++u)
            for (std::size_t v = u + 1; v < nv; ++v)
                if (adj(u, v)) {
                    g.rows_[u].set(v);
                    g.rows_[v].set(u);
                }
        return g;
    }

    static DenseGraph of(const ImplicitGraph& g, const EnumBudget& budget = {}) {
        if (g.num_vertices() > budget.max_vertices)
            throw BudgetExceeded("graph too large to materialize: " + g.spec_string(), 0);
        return build(g.num_vertices(), [&](std::size_t u, std::size_t v) { return g.adjacent(u, v); });
    }

    std::size_t num_vertices() const { return nv_; }
    const VertexSet& row(std::size_t u) const { return rows_[u]; }
    bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }

    DenseGraph complement() const {
        return build(nv_, [&](std::size_t u, std::size_t v) { return !adjacent(u, v); });
    }

    bool independent(const VertexSet& s) const {
        bool ok = true;
        s.for_each([&](std::size_t u) {
            if (rows_[u].intersects(s)) ok = false;
        });
        return ok;
    }

private:
    std::size_t nv_ = 0;
    std::vector<VertexSet> rows_;
};

namespace detail {

class NodeTicker {
public:
    explicit NodeTicker(const EnumBudget& b)
        : budget_(b), start_(std::chrono::steady_clock::now()) {}

    void tick() {
        if (++nodes_ > budget_.max_nodes)
            throw BudgetExceeded("enumeration node budget exceeded", nodes_);
        if ((nodes_ & 0xfff) == 0) {
            auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
            if (elapsed.count() > budget_.timeout_seconds)
                throw BudgetExceeded("enumeration timeout", nodes_);
        }
    }
    std::uint64_t nodes() const { return nodes_; }

private:
    const EnumBudget& budget_;
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_;
};

inline VertexSet component_of(const DenseGraph& g, const VertexSet& sub, std::size_t seed) {
    VertexSet comp(g.num_vertices());
    comp.set(seed);
    VertexSet frontier = comp;
    while (!frontier.empty()) {
        VertexSet next(g.num_vertices());
        frontier.for_each([&](std::size_t u) {
            VertexSet nb = g.row(u);
            nb &= sub;
            nb.subtract(comp);
            next |= nb;
        });
        comp |= next;
        frontier = next;
    }
    return comp;
}

// Max-degree vertex within sub, lowest index on ties.
inline std::size_t max_degree_vertex(const DenseGraph& g, const VertexSet& sub) {
    std::size_t best = sub.first();
    std::size_t best_deg = g.row(best).intersection_count(sub);
    sub.for_each([&](std::size_t u) {
        std::size_t d = g.row(u).intersection_count(sub);
        if (d > best_deg) {
            best = u;
            best_deg = d;
        }
    });
    return best;
}

class ISCounter {
public:
    ISCounter(const DenseGraph& g, const EnumBudget& b) : g_(g), ticker_(b) {}

    BigCount count(VertexSet sub) {
        ticker_.tick();
        BigCount total = 1;
        while (!sub.empty()) {
            VertexSet comp = component_of(g_, sub, sub.first());
            sub.subtract(comp);
            total *= count_component(comp);
        }
        return total;
    }

private:
    BigCount count_component(const VertexSet& comp) {
        std::size_t m = comp.count();
        if (m == 1) return 2;
        if (m == 2) return 3; // connected pair: both endpoints free or one chosen
        if (auto it = memo_.find(comp); it != memo_.end()) return it->second;

        std::size_t v = max_degree_vertex(g_, comp);
        VertexSet without = comp;
        without.reset(v);
        BigCount result = count(without); // v excluded
        VertexSet keep = without;
        keep.subtract(g_.row(v));
        result += count(keep); // v included: drop its neighborhood
        if (memo_.size() < kMemoCap) memo_.emplace(comp, result);
        return result;
    }

    static constexpr std::size_t kMemoCap = 1 << 20;
    const DenseGraph& g_;
    NodeTicker ticker_;
    std::unordered_map<VertexSet, BigCount, VertexSetHash> memo_;
};

class MaxISSolver {
public:
    MaxISSolver(const DenseGraph& g, const EnumBudget& b) : g_(g), ticker_(b) {}

    std::vector<std::size_t> solve(VertexSet sub) {
        best_.clear();
        current_.clear();
        descend(std::move(sub));
        return best_;
    }

private:
    // Greedy clique cover of sub: each clique meets an independent set at most once.
    std::size_t clique_cover_bound(const VertexSet& sub) {
        cliques_.clear();
        sub.for_each([&](std::size_t v) {
            for (auto& c : cliques_)
                if (c.subset_of(g_.row(v))) {
                    c.set(v);
                    return;
                }
            VertexSet fresh(g_.num_vertices());
            fresh.set(v);
            cliques_.push_back(std::move(fresh));
        });
        return cliques_.size();
    }

    void descend(VertexSet sub) {
        ticker_.tick();
        std::size_t mark = current_.size();

        // Degree 0 and degree 1 vertices can always join a maximum solution.
        bool reduced = true;
        while (reduced) {
            reduced = false;
            std::size_t pick = g_.num_vertices();
            sub.for_each([&](std::size_t u) {
                if (pick == g_.num_vertices() && g_.row(u).intersection_count(sub) <= 1) pick = u;
            });
            if (pick != g_.num_vertices()) {
                current_.push_back(pick);
                VertexSet nb = g_.row(pick);
                nb &= sub;
                sub.subtract(nb);
                sub.reset(pick);
                reduced = true;
            }
        }

        if (sub.empty()) {
            if (current_.size() > best_.size()) best_ = current_;
        } else if (current_.size() + clique_cover_bound(sub) > best_.size()) {
            std::size_t v = max_degree_vertex(g_, sub);
            VertexSet keep = sub;
            keep.reset(v);
            keep.subtract(g_.row(v));
            current_.push_back(v);
            descend(std::move(keep));
            current_.pop_back();
            VertexSet drop = sub;
            drop.reset(v);
            descend(std::move(drop));
        }

        current_.resize(mark);
    }

    const DenseGraph& g_;
    NodeTicker ticker_;
    std::vector<std::size_t> best_, current_;
    std::vector<VertexSet> cliques_;
};

// Bron-Kerbosch with pivoting over the complement: maximal independent sets
// of g are exactly the maximal cliques of its complement.
class MaximalISEnumerator {
public:
    MaximalISEnumerator(const DenseGraph& g, const EnumBudget& b,
                        std::function<void(const VertexSet&)> emit)
        : co_(g.complement()), ticker_(b), emit_(std::move(emit)) {}

    BigCount run() {
        count_ = 0;
        VertexSet r(co_.num_vertices());
        expand(r, VertexSet::all(co_.num_vertices()), VertexSet(co_.num_vertices()));
        return count_;
    }

private:
    void expand(VertexSet& r, VertexSet p, VertexSet x) {
        ticker_.tick();
        if (p.empty() && x.empty()) {
            ++count_;
            if (emit_) emit_(r);
            return;
        }
        // pivot: vertex of P∪X with most complement-neighbours inside P
        std::size_t pivot = invalid(), pivot_score = 0;
        auto consider = [&](std::size_t u) {
            std::size_t s = co_.row(u).intersection_count(p);
            if (pivot == invalid() || s > pivot_score) {
                pivot = u;
                pivot_score = s;
            }
        };
        p.for_each(consider);
        x.for_each(consider);

        VertexSet candidates = p;
        candidates.subtract(co_.row(pivot));
        candidates.for_each([&](std::size_t v) {
            if (!p.test(v)) return; // moved to X by an earlier iteration
            VertexSet np = p, nx = x;
            np &= co_.row(v);
            nx &= co_.row(v);
            r.set(v);
            expand(r, std::move(np), std::move(nx));
            r.reset(v);
            p.reset(v);
            x.set(v);
        });
    }

    std::size_t invalid() const { return co_.num_vertices(); }

    DenseGraph co_;
    NodeTicker ticker_;
    std::function<void(const VertexSet&)> emit_;
    BigCount count_;
};

} // namespace detail

// Exact independent-set count via max-degree branching with component
// factorization; cross-validated against the subset-scan oracle in tests.
inline BigCount count_independent_sets(const DenseGraph& g, const EnumBudget& budget = {}) {
    detail::ISCounter counter(g, budget);
    return counter.count(VertexSet::all(g.num_vertices()));
}

inline BigCount count_independent_sets(const ImplicitGraph& g, const EnumBudget& budget = {}) {
    return count_independent_sets(DenseGraph::of(g, budget), budget);
}

// Direct O(2^|V|) dynamic program over all subsets; independent oracle used
// to cross-validate the branching counter at |V| <= 20.
inline BigCount count_independent_sets_by_scan(const DenseGraph& g, const EnumBudget& budget = {}) {
    std::size_t nv = g.num_vertices();
    if (nv > 20 || (std::uint64_t{1} << nv) > budget.max_nodes)
        throw BudgetExceeded("subset scan infeasible", 0);
    std::vector<std::uint64_t> row(nv);
    for (std::size_t u = 0; u < nv; ++u)
        g.row(u).for_each([&](std::size_t v) { row[u] |= std::uint64_t{1} << v; });
    std::vector<char> indep(std::size_t{1} << nv);
    indep[0] = 1;
    BigCount total = 1;
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << nv); ++sub) {
        auto low = static_cast<std::size_t>(std::countr_zero(sub));
        indep[sub] = indep[sub & (sub - 1)] && (row[low] & sub) == 0;
        if (indep[sub]) ++total;
    }
    return total;
}

struct MaxISResult {
    std::size_t size = 0;
    std::vector<std::size_t> witness; // vertex indices, ascending
};

inline MaxISResult max_independent_set(const DenseGraph& g, const EnumBudget& budget = {}) {
    detail::MaxISSolver solver(g, budget);
    MaxISResult r;
    r.witness = solver.solve(VertexSet::all(g.num_vertices()));
    std::sort(r.witness.begin(), r.witness.end());
    r.size = r.witness.size();
    return r;
}

inline MaxISResult max_independent_set(const ImplicitGraph& g, const EnumBudget& budget = {}) {
    return max_independent_set(DenseGraph::of(g, budget), budget);
}

// Exact mis(G). When collect is non-null the maximal sets are appended in
// canonical (lexicographic index list) order.
inline BigCount enumerate_maximal_independent_sets(
    const DenseGraph& g, const EnumBudget& budget = {},
    std::vector<std::vector<std::size_t>>* collect = nullptr) {
    std::function<void(const VertexSet&)> emit;
    if (collect)
        emit = [collect](const VertexSet& s) { collect->push_back(s.to_indices()); };
    detail::MaximalISEnumerator en(g, budget, std::move(emit));
    BigCount c = en.run();
    if (collect) std::sort(collect->begin(), collect->end());
    return c;
}

inline BigCount enumerate_maximal_independent_sets(
    const ImplicitGraph& g, const EnumBudget& budget = {},
    std::vector<std::vector<std::size_t>>* collect = nullptr) {
    return enumerate_maximal_independent_sets(DenseGraph::of(g, budget), budget, collect);
}

// Visits every independent set exactly once (including the empty one) in
// canonical order; returns the total. fn receives the current set by
// reference and must not retain it.
template <class Fn>
inline BigCount for_each_independent_set(const DenseGraph& g, const EnumBudget& budget, Fn&& fn) {
    detail::NodeTicker ticker(budget);
    BigCount total = 0;
    VertexSet current(g.num_vertices());
    auto rec = [&](auto&& self, const VertexSet& allowed) -> void {
        ticker.tick();
        ++total;
        fn(static_cast<const VertexSet&>(current));
        allowed.for_each([&](std::size_t v) {
            VertexSet next = allowed;
            next.reset_leq(v);
            next.subtract(g.row(v));
            current.set(v);
            self(self, next);
            current.reset(v);
        });
    };
    rec(rec, VertexSet::all(g.num_vertices()));
    return total;
}

// Witness translation for graphs whose vertices are masks.
inline Family family_from_vertices(const ImplicitGraph& g, const std::vector<std::size_t>& vs) {
    Family f;
    f.n = g.n;
    for (auto v : vs) f.members.push_back(g.mask_of(v));
    f.sort_canonical();
    return f;
}

} // namespace boollat
