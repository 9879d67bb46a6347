#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"
#include "faslab/numeric.hpp"
#include "faslab/rng.hpp"

namespace faslab {

/// Uniform random tournament: each unordered pair gets one direction by a fair
/// coin from the seeded stream, pairs visited in lexicographic order.
inline Digraph random_tournament(int n, std::uint64_t seed) {
    if (n < 1) throw InputError("random_tournament requires n >= 1");
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.push_back(rng.next_bool() ? Edge{i, j} : Edge{j, i});
    return Digraph::from_edge_list(n, std::move(edges));
}

/// Acyclic baseline: edges i -> j for all i < j.
inline Digraph transitive_tournament(int n) {
    if (n < 1) throw InputError("transitive_tournament requires n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back(Edge{i, j});
    return Digraph::from_edge_list(n, std::move(edges));
}

enum class BipartiteMode { one_way, random_orientation };

/// Complete bipartite host with parts [0,a) and [a,a+b). One-way sends every
/// edge left to right (acyclic); random mode flips a fair coin per edge.
inline Digraph oriented_complete_bipartite(int a, int b, BipartiteMode mode, std::uint64_t seed = 0) {
    if (a < 1 || b < 1) throw InputError("oriented_complete_bipartite requires a, b >= 1");
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(a) * b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            const Edge forward{i, a + j};
            if (mode == BipartiteMode::one_way || rng.next_bool())
                edges.push_back(forward);
            else
                edges.push_back(Edge{forward.to, forward.from});
        }
    return Digraph::from_edge_list(a + b, std::move(edges));
}

/// Balanced blowup of a directed (r+1)-cycle: r+1 groups of t vertices, all
/// t^2 edges from group i to group i+1 (mod r+1). Shortest directed cycle r+1.
inline Digraph cycle_blowup(int r, int t) {
    if (r < 2 || t < 1) throw InputError("cycle_blowup requires r >= 2 and t >= 1");
    const int groups = r + 1;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(groups) * t * t);
    for (int gidx = 0; gidx < groups; ++gidx) {
        const int next = (gidx + 1) % groups;
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) edges.push_back(Edge{gidx * t + i, next * t + j});
    }
    return Digraph::from_edge_list(groups * t, std::move(edges));
}

/// 3N vertices u_i, v_i, w_i (i mod N) with edges u_i->w_i, v_i->w_i,
/// w_i->u_{i+1}, w_i->v_{i+1}. Two edge-disjoint cycles of length 2N, minimum
/// feedback arc set 2.
inline Digraph near_acyclic_gadget(int blocks) {
    if (blocks < 2) throw InputError("near_acyclic_gadget requires N >= 2");
    const auto u = [&](int i) { return 3 * (i % blocks); };
    const auto v = [&](int i) { return 3 * (i % blocks) + 1; };
    const auto w = [&](int i) { return 3 * (i % blocks) + 2; };
    std::vector<Edge> edges;
    for (int i = 0; i < blocks; ++i) {
        edges.push_back(Edge{u(i), w(i)});
        edges.push_back(Edge{v(i), w(i)});
        edges.push_back(Edge{w(i), u(i + 1)});
        edges.push_back(Edge{w(i), v(i + 1)});
    }
    return Digraph::from_edge_list(3 * blocks, std::move(edges));
}

/// Fair-coin orientation of an undirected graph; underlying_undirected inverts
/// it exactly.
inline Digraph random_orientation(const UndirectedGraph& h, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(h.edge_count()));
    for (const UndirectedEdge& e : h.edges())
        edges.push_back(rng.next_bool() ? Edge{e.a, e.b} : Edge{e.b, e.a});
    return Digraph::from_edge_list(h.vertex_count(), std::move(edges));
}

/// The alternating orientation of a 4-cycle (two sources, two sinks); the one
/// with a homomorphism onto a single oriented edge.
inline Digraph alternating_c4() { return Digraph::from_edge_list(4, {{0, 1}, {2, 1}, {2, 3}, {0, 3}}); }

inline UndirectedGraph complete_graph(int n) {
    std::vector<UndirectedEdge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back(UndirectedEdge{i, j});
    return UndirectedGraph::from_edge_list(n, edges);
}

inline UndirectedGraph complete_bipartite_graph(int a, int b) {
    std::vector<UndirectedEdge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.push_back(UndirectedEdge{i, a + j});
    return UndirectedGraph::from_edge_list(a + b, edges);
}

inline UndirectedGraph path_graph(int n) {
    std::vector<UndirectedEdge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back(UndirectedEdge{i, i + 1});
    return UndirectedGraph::from_edge_list(n, edges);
}

inline UndirectedGraph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle_graph requires n >= 3");
    std::vector<UndirectedEdge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(UndirectedEdge{std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return UndirectedGraph::from_edge_list(n, edges);
}

struct DyadicViolation {
    int level = 0;
    std::int64_t pair_index = 0;
    std::int64_t directed_count = 0;
    std::int64_t underlying_count = 0;
    double bound = 0;
};

struct DyadicCheckResult {
    bool pass = true;
    std::optional<DyadicViolation> first_violation;
    int padded_n = 0;
};

/// Checks, for every pair of consecutive dyadic position blocks
/// A = (k 2^i, (k+1) 2^i], B = ((k+1) 2^i, (k+2) 2^i] with k even, that
///   |e(A,B) - cross(A,B)/2| <= 3 sqrt(cross(A,B)) sqrt(2^i ln(e n / 2^i)).
/// Vertex count is padded to a power of two with isolated dummy positions.
inline DyadicCheckResult dyadic_pair_check(const Digraph& g, const VertexOrdering& labeling) {
    const int n = g.vertex_count();
    if (labeling.size() != n) throw InputError("dyadic_pair_check: labeling size mismatch");
    DyadicCheckResult result;
    int padded = 1;
    while (padded < n) padded *= 2;
    result.padded_n = padded;
    if (n <= 1) return result;

    // position -> vertex, -1 for padding slots
    std::vector<int> at(static_cast<std::size_t>(padded), -1);
    for (int p = 0; p < n; ++p) at[static_cast<std::size_t>(p)] = labeling.vertex_at(p);

    for (int level = 0; (2 << level) <= padded; ++level) {
        const int block = 1 << level;
        for (std::int64_t k = 0; (k + 2) * block <= padded; k += 2) {
            std::vector<VertexId> a, b;
            for (int p = 0; p < block; ++p) {
                const int va = at[static_cast<std::size_t>(k * block + p)];
                const int vb = at[static_cast<std::size_t>((k + 1) * block + p)];
                if (va >= 0) a.push_back(va);
                if (vb >= 0) b.push_back(vb);
            }
            std::int64_t directed = 0, cross = 0;
            {
                const auto in_a = detail::membership(n, a);
                const auto in_b = detail::membership(n, b);
                for (const Edge& e : g.edges()) {
                    const bool ab = in_a[static_cast<std::size_t>(e.from)] && in_b[static_cast<std::size_t>(e.to)];
                    const bool ba = in_b[static_cast<std::size_t>(e.from)] && in_a[static_cast<std::size_t>(e.to)];
                    if (ab) ++directed;
                    if (ab || ba) ++cross;
                }
            }
            const double bound = 3.0 * std::sqrt(static_cast<double>(cross)) *
                                 std::sqrt(static_cast<double>(block) *
                                           std::log(std::exp(1.0) * static_cast<double>(padded) / block));
            const double gap = std::abs(static_cast<double>(directed) - static_cast<double>(cross) / 2.0);
            if (gap > bound) {
                result.pass = false;
                result.first_violation = DyadicViolation{level, k / 2, directed, cross, bound};
                return result;
            }
        }
    }
    return result;
}

struct DyadicOrientResult {
    std::optional<Digraph> digraph;
    int tries_used = 0;
    int max_tries = 0;
};

/// Retries fair-coin orientations of H until one passes the dyadic pair check
/// for every supplied labeling. Only those labelings' dyadic pairs are
/// certified, nothing stronger.
inline DyadicOrientResult orient_until_dyadic(const UndirectedGraph& h,
                                              const std::vector<VertexOrdering>& labelings, int max_tries,
                                              std::uint64_t seed) {
    if (max_tries < 1) throw InputError("orient_until_dyadic requires max_tries >= 1");
    DyadicOrientResult result;
    result.max_tries = max_tries;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        result.tries_used = attempt + 1;
        Digraph g = random_orientation(h, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        bool all_pass = true;
        for (const VertexOrdering& labeling : labelings) {
            if (!dyadic_pair_check(g, labeling).pass) {
                all_pass = false;
                break;
            }
        }
        if (all_pass) {
            result.digraph = std::move(g);
            return result;
        }
    }
    return result;
}

struct SurplusExponent {
    Rational extremal_exponent;  // r with extremal edge count n^r
    Rational epsilon;            // 2 - r
    Rational surplus;            // 3/4 + q
};

/// Solves 3/4 + (2 - r)/(4r) = 3/4 + q for the extremal exponent r = 2/(4q+1),
/// exactly in rationals. Valid for q in [0, 1/4].
inline SurplusExponent surplus_exponent(const Rational& q) {
    const Rational zero(0), quarter(1, 4);
    if (q < zero || quarter < q) throw InputError("surplus_exponent: q must lie in [0, 1/4]");
    SurplusExponent r;
    r.extremal_exponent = Rational(2) / (Rational(4) * q + Rational(1));
    r.epsilon = Rational(2) - r.extremal_exponent;
    r.surplus = Rational(3, 4) + q;
    return r;
}

}  // namespace faslab
