#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"
#include "faslab/numeric.hpp"
#include "faslab/rng.hpp"

namespace faslab {

/// One placement step: the vertex, its in/out edge counts against the already
/// placed set, and which end it went to.
struct GreedyStep {
    VertexId vertex = 0;
    std::int64_t incoming = 0;
    std::int64_t outgoing = 0;
    bool placed_front = false;
};

struct GreedyResult {
    FasResult fas;
    std::vector<GreedyStep> ledger;

    std::int64_t ledger_size() const {
        std::int64_t s = 0;
        for (const GreedyStep& step : ledger) s += std::min(step.incoming, step.outgoing);
        return s;
    }
    HalfInt ledger_surplus() const {
        std::int64_t twice = 0;
        for (const GreedyStep& step : ledger) twice += std::llabs(step.incoming - step.outgoing);
        return HalfInt{twice};
    }
};

/// Endpoint-insertion greedy: processes vertices in the given order, placing
/// each before or after everything placed so far, whichever creates fewer
/// backward edges (ties go after). The FAS is the backward set of the final
/// arrangement and equals the sum of the per-step minima.
inline GreedyResult restricted_greedy(const Digraph& g, const VertexOrdering& processing) {
    const int n = g.vertex_count();
    if (processing.size() != n) throw InputError("processing order size does not match graph");

    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    std::deque<VertexId> arrangement;
    GreedyResult result;
    result.ledger.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        const VertexId v = processing.vertex_at(p);
        std::int64_t incoming = 0, outgoing = 0;
        for (VertexId w : g.in_neighbors(v))
            if (placed[static_cast<std::size_t>(w)]) ++incoming;
        for (VertexId w : g.out_neighbors(v))
            if (placed[static_cast<std::size_t>(w)]) ++outgoing;
        // Front makes the incoming edges backward, back makes the outgoing ones backward.
        const bool front = incoming < outgoing;
        if (front)
            arrangement.push_front(v);
        else
            arrangement.push_back(v);
        placed[static_cast<std::size_t>(v)] = 1;
        result.ledger.push_back(GreedyStep{v, incoming, outgoing, front});
    }

    VertexOrdering order = VertexOrdering::from_sequence({arrangement.begin(), arrangement.end()});
    EdgeSplit split = backward_edges(g, order);
    if (split.backward != result.ledger_size() ||
        HalfInt{split.forward - split.backward} != result.ledger_surplus())
        throw std::logic_error("restricted_greedy: ledger does not match arrangement");
    result.fas = FasResult{std::move(split.backward_set), std::move(order), HalfInt{split.forward - split.backward}};
    return result;
}

/// Best of `trials` restricted-greedy runs on uniform random processing orders.
/// Trial seeds are the splitmix stream of the master seed; the winner is the
/// smallest FAS, ties broken by lexicographically smallest certificate.
inline GreedyResult randomized_fas(const Digraph& g, int trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("randomized_fas requires trials >= 1");
    std::optional<GreedyResult> best;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        GreedyResult r = restricted_greedy(
            g, VertexOrdering::from_sequence(random_permutation(g.vertex_count(), rng)));
        if (!best || r.fas.size() < best->fas.size() ||
            (r.fas.size() == best->fas.size() &&
             r.fas.ordering.sequence() < best->fas.ordering.sequence()))
            best = std::move(r);
    }
    return *best;
}

/// Calibrated constant in front of sum sqrt(d(v)) for the greedy surplus
/// guarantee checks; an artifact-level constant, not a theorem's.
inline constexpr double kGreedySurplusConstant = 1.0 / 40.0;

struct SqrtDegreeSum {
    double sum_sqrt_degrees = 0;
    double quarter_m_three_quarters = 0;
};

/// Returns (sum over v of sqrt(d(v)), m^{3/4}/4); the former always dominates.
inline SqrtDegreeSum sqrt_degree_sum(const Digraph& g) {
    SqrtDegreeSum r;
    for (int v = 0; v < g.vertex_count(); ++v) r.sum_sqrt_degrees += std::sqrt(static_cast<double>(g.degree(v)));
    r.quarter_m_three_quarters = 0.25 * std::pow(static_cast<double>(g.edge_count()), 0.75);
    if (r.sum_sqrt_degrees + 1e-9 < r.quarter_m_three_quarters)
        throw std::logic_error("sqrt_degree_sum: degree-sum inequality failed");
    return r;
}

struct LowDegreeBound {
    double sum_sqrt_degrees = 0;
    double bound = 0;  // sqrt(m*k)/4
    std::vector<VertexId> top_vertices;
    std::int64_t induced_edges = 0;
};

/// Checks that the k highest-degree vertices (ties: lowest index first) induce
/// at most m/2 edges, then returns the sqrt-degree sum against sqrt(m*k)/4.
inline LowDegreeBound low_degree_bound(const Digraph& g, int k) {
    const int n = g.vertex_count();
    if (k < 0 || k > n) throw InputError("low_degree_bound: k out of range");
    std::vector<VertexId> by_degree(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) by_degree[static_cast<std::size_t>(v)] = v;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    LowDegreeBound r;
    r.top_vertices.assign(by_degree.begin(), by_degree.begin() + k);
    const auto in_top = detail::membership(n, r.top_vertices);
    for (const Edge& e : g.edges())
        if (in_top[static_cast<std::size_t>(e.from)] && in_top[static_cast<std::size_t>(e.to)]) ++r.induced_edges;
    if (2 * r.induced_edges > g.edge_count())
        throw PreconditionError("low_degree_bound: top-" + std::to_string(k) + " vertices induce " +
                                std::to_string(r.induced_edges) + " edges, more than m/2 = " +
                                std::to_string(g.edge_count() / 2.0));
    for (int v = 0; v < n; ++v) r.sum_sqrt_degrees += std::sqrt(static_cast<double>(g.degree(v)));
    r.bound = 0.25 * std::sqrt(static_cast<double>(g.edge_count()) * static_cast<double>(k));
    if (r.sum_sqrt_degrees + 1e-9 < r.bound)
        throw std::logic_error("low_degree_bound: sqrt-degree bound failed");
    return r;
}

struct ExtremalInverseBound {
    std::int64_t host_vertices = 0;  // f(m/2)
    double bound = 0;                // m/2 - c*sqrt(m*k)
    std::optional<std::int64_t> achieved;
};

/// Evaluates the FAS upper bound m/2 - c*sqrt(m*f(m/2)) for a caller-supplied
/// inverse extremal function f; with trials >= 1 also reports the size the
/// randomized greedy actually achieves.
inline ExtremalInverseBound extremal_inverse_bound(const Digraph& g,
                                                   const std::function<std::int64_t(std::int64_t)>& f,
                                                   int trials = 0, std::uint64_t seed = 1) {
    ExtremalInverseBound r;
    const std::int64_t m = g.edge_count();
    if (m == 0) {
        r.host_vertices = f(0);
        r.bound = 0;
    } else {
        r.host_vertices = f(m / 2);
        r.bound = static_cast<double>(m) / 2.0 -
                  kGreedySurplusConstant * std::sqrt(static_cast<double>(m) * static_cast<double>(r.host_vertices));
    }
    if (trials >= 1) r.achieved = randomized_fas(g, trials, seed).fas.size();
    return r;
}

/// Minimum vertex count of a triangle-free graph with at least m edges
/// (extremal count floor(n^2/4)).
inline std::int64_t inverse_extremal_triangle_free(std::int64_t m) {
    std::int64_t n = 0;
    while ((n * n) / 4 < m) ++n;
    return n;
}

/// Minimum vertex count of a forest with at least m edges (extremal count n-1).
inline std::int64_t inverse_extremal_forest_free(std::int64_t m) { return m + 1; }

/// Full insertion greedy pass: each vertex in id order is moved to the slot
/// minimizing backward edges (ties: rightmost slot). Never increases the
/// backward count, so it can only shrink the FAS certified by the ordering.
inline VertexOrdering insertion_refine(const Digraph& g, const VertexOrdering& start, int passes = 1) {
    std::vector<VertexId> seq = start.sequence();
    const int n = g.vertex_count();
    if (static_cast<int>(seq.size()) != n) throw InputError("insertion_refine: ordering size mismatch");
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int pass = 0; pass < passes; ++pass) {
        for (VertexId v = 0; v < n; ++v) {
            for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])] = i;
            const int old_slot = pos[static_cast<std::size_t>(v)];
            seq.erase(seq.begin() + old_slot);
            // cost(t) = backward edges incident to v if inserted before seq[t].
            // At slot 0 every in-edge of v is backward; moving right past u
            // flips one incident edge's status.
            std::int64_t cost = g.in_degree(v);
            std::int64_t best_cost = cost;
            int best_slot = 0;
            for (int t = 0; t < static_cast<int>(seq.size()); ++t) {
                const VertexId u = seq[static_cast<std::size_t>(t)];
                if (g.has_edge(v, u)) ++cost;
                if (g.has_edge(u, v)) --cost;
                if (cost <= best_cost) {
                    best_cost = cost;
                    best_slot = t + 1;
                }
            }
            seq.insert(seq.begin() + best_slot, v);
        }
    }
    return VertexOrdering::from_sequence(std::move(seq));
}

}  // namespace faslab
