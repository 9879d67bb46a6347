#pragma once

// Test-only corpus generators and independent brute-force oracles. These stay
// structurally different from the library implementations they cross-check:
// permutation scans instead of subset DP, bitmask set pairs instead of the
// state recursion.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/rng.hpp"

namespace faslab::testing {

inline Digraph random_digraph(int n, std::uint64_t seed, double edge_prob = 0.5) {
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_unit() >= edge_prob) continue;
            edges.push_back(rng.next_bool() ? Edge{i, j} : Edge{j, i});
        }
    return Digraph::from_edge_list(n, std::move(edges));
}

inline Digraph random_digraph_with_edges(int n, int m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    shuffle_inplace(pairs, rng);
    if (m > static_cast<int>(pairs.size())) m = static_cast<int>(pairs.size());
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
        const auto [a, b] = pairs[static_cast<std::size_t>(i)];
        edges.push_back(rng.next_bool() ? Edge{a, b} : Edge{b, a});
    }
    return Digraph::from_edge_list(n, std::move(edges));
}

/// All 3^6 = 729 digraphs on 4 labeled vertices (every pair: absent, forward,
/// or backward).
inline std::vector<Digraph> all_digraphs_n4() {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) pairs.push_back({i, j});
    std::vector<Digraph> graphs;
    graphs.reserve(729);
    for (int code = 0; code < 729; ++code) {
        int c = code;
        std::vector<Edge> edges;
        for (const auto& [a, b] : pairs) {
            const int state = c % 3;
            c /= 3;
            if (state == 1) edges.push_back(Edge{a, b});
            if (state == 2) edges.push_back(Edge{b, a});
        }
        graphs.push_back(Digraph::from_edge_list(4, std::move(edges)));
    }
    return graphs;
}

/// Minimum backward-edge count over all n! orderings (n <= 8).
inline std::int64_t brute_min_fas(const Digraph& g) {
    const int n = g.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t best = g.edge_count();
    do {
        std::vector<int> pos(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])] = p;
        std::int64_t back = 0;
        for (const Edge& e : g.edges())
            if (pos[static_cast<std::size_t>(e.from)] > pos[static_cast<std::size_t>(e.to)]) ++back;
        best = std::min(best, back);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::int64_t mask_difference(const Digraph& g, std::uint32_t mask_a, std::uint32_t mask_b) {
    std::int64_t diff = 0;
    for (const Edge& e : g.edges()) {
        const std::uint32_t from = 1u << e.from, to = 1u << e.to;
        if ((mask_a & from) && (mask_b & to)) ++diff;
        if ((mask_b & from) && (mask_a & to)) --diff;
    }
    return diff;
}

/// Directional discrepancy by scanning all 2^n x 2^n mask pairs (n <= 6).
inline std::int64_t brute_tau_pairs(const Digraph& g) {
    const std::uint32_t limit = 1u << g.vertex_count();
    std::int64_t best = 0;
    for (std::uint32_t a = 0; a < limit; ++a)
        for (std::uint32_t b = 0; b < limit; ++b) best = std::max(best, mask_difference(g, a, b));
    return best;
}

inline std::int64_t brute_tau_star_pairs(const Digraph& g) {
    const std::uint32_t limit = 1u << g.vertex_count();
    std::int64_t best = 0;
    for (std::uint32_t a = 0; a < limit; ++a)
        for (std::uint32_t b = 0; b < limit; ++b)
            if ((a & b) == 0) best = std::max(best, mask_difference(g, a, b));
    return best;
}

inline std::int64_t brute_tau_partition(const Digraph& g) {
    const std::uint32_t limit = 1u << g.vertex_count();
    const std::uint32_t full = limit - 1;
    std::int64_t best = 0;
    for (std::uint32_t a = 0; a < limit; ++a) best = std::max(best, mask_difference(g, a, full & ~a));
    return best;
}

/// Independent route to the directional discrepancy: fix the B side, then the
/// optimal A picks exactly the vertices with positive margin toward B.
inline std::int64_t brute_tau_fixed_b(const Digraph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint32_t> out_mask(static_cast<std::size_t>(n), 0), in_mask(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edges()) {
        out_mask[static_cast<std::size_t>(e.from)] |= 1u << e.to;
        in_mask[static_cast<std::size_t>(e.to)] |= 1u << e.from;
    }
    std::int64_t best = 0;
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t b = 0; b < limit; ++b) {
        std::int64_t value = 0;
        for (int v = 0; v < n; ++v) {
            const std::int64_t margin = std::popcount(out_mask[static_cast<std::size_t>(v)] & b) -
                                        std::popcount(in_mask[static_cast<std::size_t>(v)] & b);
            if (margin > 0) value += margin;
        }
        best = std::max(best, value);
    }
    return best;
}

/// Largest feasible e(A,B) with e(B,A) <= delta * e(A,B), over all mask pairs.
inline std::int64_t brute_bias(const Digraph& g, double delta) {
    const std::uint32_t limit = 1u << g.vertex_count();
    std::int64_t best = 0;
    for (std::uint32_t a = 0; a < limit; ++a)
        for (std::uint32_t b = 0; b < limit; ++b) {
            std::int64_t ab = 0, ba = 0;
            for (const Edge& e : g.edges()) {
                const std::uint32_t from = 1u << e.from, to = 1u << e.to;
                if ((a & from) && (b & to)) ++ab;
                if ((b & from) && (a & to)) ++ba;
            }
            if (static_cast<double>(ba) <= delta * static_cast<double>(ab) + 1e-12) best = std::max(best, ab);
        }
    return best;
}

}  // namespace faslab::testing
