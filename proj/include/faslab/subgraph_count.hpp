#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"
#include "faslab/exact_oracle.hpp"

namespace faslab {

/// Bipartition data for an undirected bipartite graph: its parts, edge count,
/// width (fewest edges whose addition makes some vertex complete to the other
/// part), and the exponent e + w.
struct BipartiteProfile {
    std::vector<VertexId> part_a;
    std::vector<VertexId> part_b;
    std::int64_t edge_count = 0;
    std::int64_t width = 0;
    std::int64_t exponent = 0;
};

/// 2-colors H (error when an odd cycle exists) and brute-forces the width.
/// Disconnected graphs: all 2^{#components} per-component part assignments are
/// tried and the width-minimizing one is kept.
inline BipartiteProfile bipartite_profile(const UndirectedGraph& h) {
    const int n = h.vertex_count();
    if (n == 0) throw InputError("bipartite_profile: empty graph");

    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::vector<int> component(static_cast<std::size_t>(n), -1);
    int components = 0;
    for (int root = 0; root < n; ++root) {
        if (color[static_cast<std::size_t>(root)] != -1) continue;
        color[static_cast<std::size_t>(root)] = 0;
        component[static_cast<std::size_t>(root)] = components;
        std::vector<int> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            for (VertexId w : h.neighbors(v)) {
                if (color[static_cast<std::size_t>(w)] == -1) {
                    color[static_cast<std::size_t>(w)] = color[static_cast<std::size_t>(v)] ^ 1;
                    component[static_cast<std::size_t>(w)] = components;
                    queue.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    throw InputError("bipartite_profile: graph is not bipartite (odd cycle)");
                }
            }
        }
        ++components;
    }
    if (components > 10)
        throw BudgetError("bipartite_profile: " + std::to_string(components) + " components exceed assignment budget");

    BipartiteProfile best;
    best.width = -1;
    for (std::uint32_t flips = 0; flips < (1u << components); ++flips) {
        std::vector<VertexId> part_a, part_b;
        for (int v = 0; v < n; ++v) {
            const int side = color[static_cast<std::size_t>(v)] ^ ((flips >> component[static_cast<std::size_t>(v)]) & 1u);
            (side == 0 ? part_a : part_b).push_back(v);
        }
        std::int64_t width = -1;
        for (int v = 0; v < n; ++v) {
            const int side = color[static_cast<std::size_t>(v)] ^ ((flips >> component[static_cast<std::size_t>(v)]) & 1u);
            const std::int64_t other = static_cast<std::int64_t>(side == 0 ? part_b.size() : part_a.size());
            const std::int64_t missing = other - h.degree(v);
            if (width < 0 || missing < width) width = missing;
        }
        if (best.width < 0 || width < best.width) {
            best.part_a = std::move(part_a);
            best.part_b = std::move(part_b);
            best.width = width;
        }
    }
    best.edge_count = h.edge_count();
    best.exponent = best.edge_count + best.width;
    return best;
}

struct MinCopiesCheck {
    std::int64_t copies = 0;
    double bound = 0;            // n^k p^t / 2
    bool density_condition = false;
    double edge_density = 0;     // p = 2m/n^2
};

/// Counts labeled copies of bipartite H in G and compares against the copy
/// floor n^k p^t / 2, which applies once p >= (k^2/n)^{1/t}.
inline MinCopiesCheck min_copies_check(const UndirectedGraph& h, const UndirectedGraph& g,
                                       const ExactBudget& budget = {}) {
    const BipartiteProfile profile = bipartite_profile(h);
    const int k = h.vertex_count();
    const int n = g.vertex_count();
    MinCopiesCheck r;
    r.copies = count_labeled(h, g, budget);
    if (n == 0) return r;
    r.edge_density = 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(n) * n);
    const double t = static_cast<double>(profile.exponent);
    r.bound = 0.5 * std::pow(static_cast<double>(n), static_cast<double>(k)) * std::pow(r.edge_density, t);
    r.density_condition =
        r.edge_density >= std::pow(static_cast<double>(k) * k / static_cast<double>(n), 1.0 / t);
    if (r.density_condition && static_cast<double>(r.copies) < r.bound)
        throw std::logic_error("min_copies_check: copy floor violated");
    return r;
}

struct DiscrepancyLowerBound {
    double bound = 0;           // m^t / (2 e(B) n^{2t-2})
    bool density_met = false;
    double required_edges = 0;  // k^{2/t} n^{2-1/t} / 2
};

/// Discrepancy floor m^t / (2 e(B) n^{2t-2}) implied for hosts with n vertices
/// and m edges that avoid the pattern; pure formula, no graph needed. The
/// density precondition is reported, not fatal.
inline DiscrepancyLowerBound discrepancy_lower_bound_pattern_free(const Digraph& pattern, std::int64_t n,
                                                                  std::int64_t m) {
    const BipartiteProfile profile = bipartite_profile(underlying_undirected(pattern));
    const double t = static_cast<double>(profile.exponent);
    const double k = static_cast<double>(pattern.vertex_count());
    const double e = static_cast<double>(pattern.edge_count());
    DiscrepancyLowerBound r;
    r.required_edges = 0.5 * std::pow(k, 2.0 / t) * std::pow(static_cast<double>(n), 2.0 - 1.0 / t);
    r.density_met = static_cast<double>(m) >= r.required_edges;
    r.bound = std::pow(static_cast<double>(m), t) / (2.0 * e * std::pow(static_cast<double>(n), 2.0 * t - 2.0));
    return r;
}

struct OrientationSpread {
    std::vector<std::int64_t> counts;  // indexed by orientation mask over sorted base edges
    std::int64_t total = 0;
    std::int64_t spread = 0;           // max - min over orientation classes
    std::int64_t underlying_count = 0; // labeled copies of the base in the host's underlying graph
};

/// Labeled-copy counts of every orientation of `base` in `host`. Orientation
/// mask bit i reverses the i-th sorted base edge (bit 0 keeps a->b with a < b).
/// The counts always partition the underlying count; that identity is asserted.
inline OrientationSpread orientation_spread(const UndirectedGraph& base, const Digraph& host,
                                            const ExactBudget& budget = {}) {
    const std::int64_t e = base.edge_count();
    if (e > 6) throw BudgetError("orientation_spread: " + std::to_string(e) + " edges exceed 2^e budget");
    OrientationSpread r;
    r.counts.resize(static_cast<std::size_t>(1) << e);
    std::int64_t lo = -1, hi = -1;
    for (std::uint32_t mask = 0; mask < r.counts.size(); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < base.edges().size(); ++i) {
            const UndirectedEdge ue = base.edges()[i];
            const bool reversed = (mask >> i) & 1u;
            edges.push_back(reversed ? Edge{ue.b, ue.a} : Edge{ue.a, ue.b});
        }
        const Digraph oriented = Digraph::from_edge_list(base.vertex_count(), std::move(edges));
        const std::int64_t c = count_labeled(oriented, host, budget);
        r.counts[mask] = c;
        r.total += c;
        if (lo < 0 || c < lo) lo = c;
        if (hi < 0 || c > hi) hi = c;
    }
    r.spread = hi - lo;
    r.underlying_count = count_labeled(base, underlying_undirected(host), budget);
    if (r.total != r.underlying_count)
        throw std::logic_error("orientation_spread: orientation counts do not partition the underlying count");
    return r;
}

/// Number of vertex maps (not necessarily injective) from H into G carrying
/// every edge to an edge. Documentation-scale only: v(H) <= 5.
inline std::int64_t homomorphism_count(const UndirectedGraph& h, const UndirectedGraph& g) {
    const int k = h.vertex_count();
    if (k > 5) throw BudgetError("homomorphism_count: v(H) > 5");
    const int n = g.vertex_count();
    if (k == 0) return 1;
    std::vector<int> image(static_cast<std::size_t>(k), -1);
    std::int64_t count = 0;
    std::function<void(int)> assign = [&](int depth) {
        if (depth == k) {
            ++count;
            return;
        }
        for (int cand = 0; cand < n; ++cand) {
            bool ok = true;
            for (VertexId w : h.neighbors(depth)) {
                if (w < depth && !g.has_edge(cand, image[static_cast<std::size_t>(w)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[static_cast<std::size_t>(depth)] = cand;
            assign(depth + 1);
        }
    };
    assign(0);
    return count;
}

inline double homomorphism_density(const UndirectedGraph& h, const UndirectedGraph& g) {
    const double maps = std::pow(static_cast<double>(g.vertex_count()), static_cast<double>(h.vertex_count()));
    if (maps == 0) return 0;
    return static_cast<double>(homomorphism_count(h, g)) / maps;
}

}  // namespace faslab
