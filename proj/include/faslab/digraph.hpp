#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "faslab/errors.hpp"
#include "faslab/numeric.hpp"

namespace faslab {

using VertexId = int;

struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string edge_str(Edge e) {
    return "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
}

/// Oriented digraph: no loops, no duplicate edges, no antiparallel pairs.
/// Vertices are dense integers [0, n). Immutable after construction; all
/// operations on it are pure, so instances can be shared across threads.
class Digraph {
public:
    Digraph() = default;

    static Digraph from_edge_list(int n, std::vector<Edge> pairs) {
        if (n < 0) throw InputError("negative vertex count");
        Digraph g;
        g.n_ = n;
        std::unordered_set<std::int64_t> seen;
        seen.reserve(pairs.size() * 2);
        for (const Edge& e : pairs) {
            if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
                throw InputError("vertex out of range in edge " + edge_str(e));
            if (e.from == e.to) throw InputError("loop edge " + edge_str(e));
            const std::int64_t key = static_cast<std::int64_t>(e.from) * n + e.to;
            const std::int64_t rkey = static_cast<std::int64_t>(e.to) * n + e.from;
            if (seen.count(key)) throw InputError("duplicate edge " + edge_str(e));
            if (seen.count(rkey)) throw InputError("antiparallel pair at edge " + edge_str(e));
            seen.insert(key);
        }
        std::sort(pairs.begin(), pairs.end());
        g.edges_ = std::move(pairs);
        g.build_adjacency();
        return g;
    }

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<VertexId>& out_neighbors(VertexId v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<VertexId>& in_neighbors(VertexId v) const { return in_[static_cast<std::size_t>(v)]; }

    int out_degree(VertexId v) const { return static_cast<int>(out_neighbors(v).size()); }
    int in_degree(VertexId v) const { return static_cast<int>(in_neighbors(v).size()); }
    int degree(VertexId v) const { return out_degree(v) + in_degree(v); }

    bool has_edge(VertexId u, VertexId v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
        const auto& nb = out_[static_cast<std::size_t>(u)];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// true when u and v are joined in either direction.
    bool adjacent(VertexId u, VertexId v) const { return has_edge(u, v) || has_edge(v, u); }

private:
    void build_adjacency() {
        out_.assign(static_cast<std::size_t>(n_), {});
        in_.assign(static_cast<std::size_t>(n_), {});
        for (const Edge& e : edges_) {
            out_[static_cast<std::size_t>(e.from)].push_back(e.to);
            in_[static_cast<std::size_t>(e.to)].push_back(e.from);
        }
        for (auto& v : out_) std::sort(v.begin(), v.end());
        for (auto& v : in_) std::sort(v.begin(), v.end());
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
};

struct UndirectedEdge {
    VertexId a = 0;
    VertexId b = 0;  // a < b always
    friend auto operator<=>(const UndirectedEdge&, const UndirectedEdge&) = default;
};

/// Simple undirected graph, same dense-vertex conventions as Digraph.
class UndirectedGraph {
public:
    UndirectedGraph() = default;

    static UndirectedGraph from_edge_list(int n, const std::vector<UndirectedEdge>& pairs) {
        if (n < 0) throw InputError("negative vertex count");
        UndirectedGraph g;
        g.n_ = n;
        std::unordered_set<std::int64_t> seen;
        for (UndirectedEdge e : pairs) {
            if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
                throw InputError("vertex out of range in edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
            if (e.a == e.b) throw InputError("loop edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
            if (e.a > e.b) std::swap(e.a, e.b);
            const std::int64_t key = static_cast<std::int64_t>(e.a) * n + e.b;
            if (seen.count(key)) throw InputError("duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
            seen.insert(key);
            g.edges_.push_back(e);
        }
        std::sort(g.edges_.begin(), g.edges_.end());
        g.build_adjacency();
        return g;
    }

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<UndirectedEdge>& edges() const { return edges_; }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(VertexId u, VertexId v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
        const auto& nb = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

private:
    void build_adjacency() {
        adj_.assign(static_cast<std::size_t>(n_), {});
        for (const UndirectedEdge& e : edges_) {
            adj_[static_cast<std::size_t>(e.a)].push_back(e.b);
            adj_[static_cast<std::size_t>(e.b)].push_back(e.a);
        }
        for (auto& v : adj_) std::sort(v.begin(), v.end());
    }

    int n_ = 0;
    std::vector<UndirectedEdge> edges_;
    std::vector<std::vector<VertexId>> adj_;
};

inline UndirectedGraph underlying_undirected(const Digraph& g) {
    std::vector<UndirectedEdge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()));
    for (const Edge& e : g.edges())
        edges.push_back(UndirectedEdge{std::min(e.from, e.to), std::max(e.from, e.to)});
    return UndirectedGraph::from_edge_list(g.vertex_count(), edges);
}

/// A bijection vertex -> position. Positions are 0-based; both directions of
/// the map are cached so forward/backward tests are O(1).
class VertexOrdering {
public:
    VertexOrdering() = default;

    static VertexOrdering from_sequence(std::vector<VertexId> seq) {
        VertexOrdering o;
        const int n = static_cast<int>(seq.size());
        o.pos_.assign(static_cast<std::size_t>(n), -1);
        for (int p = 0; p < n; ++p) {
            const VertexId v = seq[static_cast<std::size_t>(p)];
            if (v < 0 || v >= n) throw InputError("ordering mentions vertex " + std::to_string(v) + " out of range");
            if (o.pos_[static_cast<std::size_t>(v)] != -1) throw InputError("ordering repeats vertex " + std::to_string(v));
            o.pos_[static_cast<std::size_t>(v)] = p;
        }
        o.seq_ = std::move(seq);
        return o;
    }

    static VertexOrdering from_positions(const std::vector<int>& pos) {
        const int n = static_cast<int>(pos.size());
        std::vector<VertexId> seq(static_cast<std::size_t>(n), -1);
        for (int v = 0; v < n; ++v) {
            const int p = pos[static_cast<std::size_t>(v)];
            if (p < 0 || p >= n) throw InputError("position out of range");
            if (seq[static_cast<std::size_t>(p)] != -1) throw InputError("positions are not a bijection");
            seq[static_cast<std::size_t>(p)] = v;
        }
        return from_sequence(std::move(seq));
    }

    static VertexOrdering identity(int n) {
        std::vector<VertexId> seq(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = i;
        return from_sequence(std::move(seq));
    }

    int size() const { return static_cast<int>(seq_.size()); }
    int position_of(VertexId v) const { return pos_[static_cast<std::size_t>(v)]; }
    VertexId vertex_at(int p) const { return seq_[static_cast<std::size_t>(p)]; }
    const std::vector<VertexId>& sequence() const { return seq_; }

    VertexOrdering reversed() const {
        std::vector<VertexId> seq(seq_.rbegin(), seq_.rend());
        return from_sequence(std::move(seq));
    }

    friend bool operator==(const VertexOrdering& a, const VertexOrdering& b) { return a.seq_ == b.seq_; }

private:
    std::vector<int> pos_;
    std::vector<VertexId> seq_;
};

struct EdgeSplit {
    std::int64_t forward = 0;
    std::int64_t backward = 0;
    std::vector<Edge> backward_set;
};

/// Splits edges into forward/backward relative to the ordering.
inline EdgeSplit backward_edges(const Digraph& g, const VertexOrdering& order) {
    if (order.size() != g.vertex_count()) throw InputError("ordering size does not match graph");
    EdgeSplit split;
    for (const Edge& e : g.edges()) {
        if (order.position_of(e.from) < order.position_of(e.to)) {
            ++split.forward;
        } else {
            ++split.backward;
            split.backward_set.push_back(e);
        }
    }
    return split;
}

/// A feedback arc set with the ordering that certifies it: every removed edge
/// is backward under `ordering`, so the residual digraph is acyclic.
struct FasResult {
    std::vector<Edge> removed;
    VertexOrdering ordering;
    HalfInt surplus;  // (forward - backward)/2 under `ordering`

    std::int64_t size() const { return static_cast<std::int64_t>(removed.size()); }
};

/// Deletes the smaller of the forward/backward classes (reversing the ordering
/// when forward is smaller), so the result never exceeds m/2 edges.
inline FasResult fas_from_ordering(const Digraph& g, const VertexOrdering& order) {
    EdgeSplit split = backward_edges(g, order);
    if (split.backward <= split.forward)
        return FasResult{std::move(split.backward_set), order, HalfInt{split.forward - split.backward}};
    VertexOrdering rev = order.reversed();
    EdgeSplit rsplit = backward_edges(g, rev);
    return FasResult{std::move(rsplit.backward_set), std::move(rev), HalfInt{rsplit.forward - rsplit.backward}};
}

/// Kahn's algorithm; returns the lexicographically smallest topological order
/// as the acyclicity witness, or nullopt if a directed cycle exists.
inline std::optional<VertexOrdering> is_acyclic(const Digraph& g) {
    const int n = g.vertex_count();
    std::vector<int> indeg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) indeg[static_cast<std::size_t>(v)] = g.in_degree(v);
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
    std::vector<VertexId> seq;
    seq.reserve(static_cast<std::size_t>(n));
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        seq.push_back(v);
        for (VertexId w : g.out_neighbors(v))
            if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
    if (static_cast<int>(seq.size()) != n) return std::nullopt;
    return VertexOrdering::from_sequence(std::move(seq));
}

/// Induced subdigraph on U, vertices relabeled to [0, |U|) in ascending order of U.
inline Digraph induced_subgraph(const Digraph& g, std::span<const VertexId> subset) {
    std::vector<VertexId> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("induced subset repeats a vertex");
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const VertexId v = sorted[i];
        if (v < 0 || v >= g.vertex_count()) throw InputError("induced subset vertex out of range");
        index[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        const int a = index[static_cast<std::size_t>(e.from)];
        const int b = index[static_cast<std::size_t>(e.to)];
        if (a >= 0 && b >= 0) edges.push_back(Edge{a, b});
    }
    return Digraph::from_edge_list(static_cast<int>(sorted.size()), std::move(edges));
}

/// Length of the shortest directed cycle, or nullopt for acyclic digraphs.
/// BFS from every vertex over out-edges; a cycle through s closes at an edge (u, s).
inline std::optional<int> directed_girth(const Digraph& g) {
    const int n = g.vertex_count();
    int best = -1;
    std::vector<int> dist(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        std::queue<int> bfs;
        bfs.push(s);
        while (!bfs.empty()) {
            const int v = bfs.front();
            bfs.pop();
            for (VertexId w : g.out_neighbors(v)) {
                if (w == s) {
                    const int len = dist[static_cast<std::size_t>(v)] + 1;
                    if (best < 0 || len < best) best = len;
                } else if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    bfs.push(w);
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

namespace detail {
inline std::vector<char> membership(int n, std::span<const VertexId> set) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (VertexId v : set) {
        if (v < 0 || v >= n) throw InputError("set vertex out of range: " + std::to_string(v));
        in[static_cast<std::size_t>(v)] = 1;
    }
    return in;
}
}  // namespace detail

/// e(A, B): number of edges (a, b) with a in A and b in B. A and B may overlap.
inline std::int64_t edges_from_to(const Digraph& g, std::span<const VertexId> a, std::span<const VertexId> b) {
    const auto in_a = detail::membership(g.vertex_count(), a);
    const auto in_b = detail::membership(g.vertex_count(), b);
    std::int64_t count = 0;
    for (const Edge& e : g.edges())
        if (in_a[static_cast<std::size_t>(e.from)] && in_b[static_cast<std::size_t>(e.to)]) ++count;
    return count;
}

/// e(A, B) - e(B, A).
inline std::int64_t edge_difference(const Digraph& g, std::span<const VertexId> a, std::span<const VertexId> b) {
    const auto in_a = detail::membership(g.vertex_count(), a);
    const auto in_b = detail::membership(g.vertex_count(), b);
    std::int64_t diff = 0;
    for (const Edge& e : g.edges()) {
        if (in_a[static_cast<std::size_t>(e.from)] && in_b[static_cast<std::size_t>(e.to)]) ++diff;
        if (in_b[static_cast<std::size_t>(e.from)] && in_a[static_cast<std::size_t>(e.to)]) --diff;
    }
    return diff;
}

/// Undirected edges with one endpoint in each set (sets assumed disjoint).
inline std::int64_t cross_edges(const UndirectedGraph& g, std::span<const VertexId> a, std::span<const VertexId> b) {
    const auto in_a = detail::membership(g.vertex_count(), a);
    const auto in_b = detail::membership(g.vertex_count(), b);
    std::int64_t count = 0;
    for (const UndirectedEdge& e : g.edges()) {
        const bool fa = in_a[static_cast<std::size_t>(e.a)], fb = in_b[static_cast<std::size_t>(e.a)];
        const bool sa = in_a[static_cast<std::size_t>(e.b)], sb = in_b[static_cast<std::size_t>(e.b)];
        if ((fa && sb) || (fb && sa)) ++count;
    }
    return count;
}

/// A pair of vertex sets realizing an edge-count difference e(A,B) - e(B,A).
struct DiscrepancyWitness {
    std::vector<VertexId> set_a;
    std::vector<VertexId> set_b;
    std::int64_t difference = 0;
    bool disjoint = true;
};

/// Builds a witness by recounting from the digraph, never trusting the caller.
inline DiscrepancyWitness make_witness(const Digraph& g, std::vector<VertexId> a, std::vector<VertexId> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    DiscrepancyWitness w;
    w.difference = edge_difference(g, a, b);
    std::vector<VertexId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    w.disjoint = common.empty();
    w.set_a = std::move(a);
    w.set_b = std::move(b);
    return w;
}

}  // namespace faslab
