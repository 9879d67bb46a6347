#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"
#include "faslab/greedy_fas.hpp"
#include "faslab/rng.hpp"
#include "faslab/subgraph_count.hpp"

namespace faslab {

/// Completes a partial arrangement to all of V. Each missing vertex (ascending
/// id) goes to the front or back of the current arrangement, whichever keeps
/// the forward-minus-backward count from decreasing (ties go back), so the
/// surplus of the partial arrangement on its induced subgraph never degrades.
inline VertexOrdering extend_ordering(const Digraph& g, std::span<const VertexId> placed_sequence) {
    const int n = g.vertex_count();
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    std::deque<VertexId> arrangement;
    for (VertexId v : placed_sequence) {
        if (v < 0 || v >= n) throw InputError("extend_ordering: vertex out of range");
        if (placed[static_cast<std::size_t>(v)]) throw InputError("extend_ordering: repeated vertex");
        placed[static_cast<std::size_t>(v)] = 1;
        arrangement.push_back(v);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        std::int64_t to_placed = 0, from_placed = 0;
        for (VertexId w : g.out_neighbors(v))
            if (placed[static_cast<std::size_t>(w)]) ++to_placed;
        for (VertexId w : g.in_neighbors(v))
            if (placed[static_cast<std::size_t>(w)]) ++from_placed;
        if (to_placed - from_placed > 0)
            arrangement.push_front(v);
        else
            arrangement.push_back(v);
        placed[static_cast<std::size_t>(v)] = 1;
    }
    return VertexOrdering::from_sequence({arrangement.begin(), arrangement.end()});
}

namespace detail {

// Ascending-id arrangement of `block`, reversed when that has more backward
// than forward internal edges.
inline std::vector<VertexId> oriented_block(const Digraph& g, std::vector<VertexId> block) {
    std::sort(block.begin(), block.end());
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < block.size(); ++i) pos[static_cast<std::size_t>(block[i])] = static_cast<int>(i);
    std::int64_t forward = 0, backward = 0;
    for (const Edge& e : g.edges()) {
        const int pa = pos[static_cast<std::size_t>(e.from)], pb = pos[static_cast<std::size_t>(e.to)];
        if (pa < 0 || pb < 0) continue;
        (pa < pb ? forward : backward) += 1;
    }
    if (backward > forward) std::reverse(block.begin(), block.end());
    return block;
}

}  // namespace detail

/// Builds an ordering whose surplus is at least half the witness difference:
/// all of A before all of B, each block internally oriented to have at least
/// as many forward as backward edges, then extended greedily to V.
inline VertexOrdering ordering_from_biased_pair(const Digraph& g, const DiscrepancyWitness& witness) {
    if (!witness.disjoint) throw InputError("ordering_from_biased_pair: witness sets must be disjoint");
    const std::int64_t difference = edge_difference(g, witness.set_a, witness.set_b);
    if (difference != witness.difference)
        throw InputError("ordering_from_biased_pair: witness difference does not match a recount");
    if (difference < 0) throw InputError("ordering_from_biased_pair: witness difference must be >= 0");
    std::vector<VertexId> seq = detail::oriented_block(g, witness.set_a);
    const std::vector<VertexId> tail = detail::oriented_block(g, witness.set_b);
    seq.insert(seq.end(), tail.begin(), tail.end());
    VertexOrdering order = extend_ordering(g, seq);
    const EdgeSplit split = backward_edges(g, order);
    if (split.forward - split.backward < difference)
        throw std::logic_error("ordering_from_biased_pair: surplus guarantee failed");
    return order;
}

struct EdgeDifferenceEstimate {
    double estimate = 0;    // of (e(Su,Sv) - e(Sv,Su)) / n^2
    double half_width = 0;  // 3 sqrt(ln(1/delta) / samples)
    std::int64_t forward_hits = 0;
    std::int64_t reverse_hits = 0;
    int samples = 0;
};

/// Samples uniform ordered vertex pairs with replacement and estimates the
/// normalized edge difference between the two sets.
inline EdgeDifferenceEstimate sample_edge_difference(const Digraph& g, std::span<const VertexId> set_u,
                                                     std::span<const VertexId> set_v, int samples,
                                                     std::uint64_t seed, double delta = 0.01) {
    if (samples < 1) throw InputError("sample_edge_difference requires samples >= 1");
    if (delta <= 0 || delta >= 1) throw InputError("sample_edge_difference: delta must be in (0,1)");
    EdgeDifferenceEstimate r;
    r.samples = samples;
    r.half_width = 3.0 * std::sqrt(std::log(1.0 / delta) / static_cast<double>(samples));
    const int n = g.vertex_count();
    if (n == 0) return r;
    const auto in_u = detail::membership(n, set_u);
    const auto in_v = detail::membership(n, set_v);
    SplitMix64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (!g.has_edge(x, y)) continue;
        if (in_u[static_cast<std::size_t>(x)] && in_v[static_cast<std::size_t>(y)]) ++r.forward_hits;
        if (in_v[static_cast<std::size_t>(x)] && in_u[static_cast<std::size_t>(y)]) ++r.reverse_hits;
    }
    r.estimate = static_cast<double>(r.forward_hits - r.reverse_hits) / static_cast<double>(samples);
    return r;
}

struct BiasedPairParams {
    int max_samples = 500;    // attempts at hitting a pattern-minus-two-vertices copy
    int pair_samples = 2000;  // vertex-pair samples per candidate
    double delta = 0.01;      // confidence parameter for the pair estimate
    double threshold = 1.0;   // required exact difference
    std::uint64_t seed = 1;
};

struct BiasedPairSearch {
    std::optional<DiscrepancyWitness> witness;
    int attempts = 0;
    int copies_found = 0;
};

namespace detail {

// When the extension sets overlap, one of the three intersection splits keeps
// at least a third of the difference; all three are recounted exactly and the
// best disjoint pair wins.
inline DiscrepancyWitness best_disjoint_witness(const Digraph& g, std::vector<VertexId> a, std::vector<VertexId> b) {
    DiscrepancyWitness direct = make_witness(g, a, b);
    if (direct.difference < 0) direct = make_witness(g, std::move(direct.set_b), std::move(direct.set_a));
    if (direct.disjoint) return direct;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<VertexId> common, a_only, b_only;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    std::set_difference(a.begin(), a.end(), common.begin(), common.end(), std::back_inserter(a_only));
    std::set_difference(b.begin(), b.end(), common.begin(), common.end(), std::back_inserter(b_only));
    DiscrepancyWitness best;
    best.difference = -1;
    const std::vector<std::pair<const std::vector<VertexId>*, const std::vector<VertexId>*>> candidates = {
        {&a_only, &b_only}, {&common, &b_only}, {&a_only, &common}};
    for (const auto& [first, second] : candidates) {
        DiscrepancyWitness w = make_witness(g, *first, *second);
        if (w.difference < 0) w = make_witness(g, *second, *first);
        if (w.difference > best.difference) best = std::move(w);
    }
    return best;
}

struct FlipContext {
    std::vector<VertexId> rest;                       // pattern vertices besides the flip endpoints
    std::vector<Edge> rest_edges;                     // edges among `rest`, indices into rest
    std::vector<std::pair<int, bool>> u_constraints;  // (rest index, pattern edge u->rest?)
    std::vector<std::pair<int, bool>> v_constraints;
};

inline FlipContext flip_context(const Digraph& pattern, Edge flip) {
    FlipContext ctx;
    std::vector<int> rest_index(static_cast<std::size_t>(pattern.vertex_count()), -1);
    for (VertexId v = 0; v < pattern.vertex_count(); ++v) {
        if (v == flip.from || v == flip.to) continue;
        rest_index[static_cast<std::size_t>(v)] = static_cast<int>(ctx.rest.size());
        ctx.rest.push_back(v);
    }
    for (const Edge& e : pattern.edges()) {
        if (e == flip) continue;
        const int fi = rest_index[static_cast<std::size_t>(e.from)];
        const int ti = rest_index[static_cast<std::size_t>(e.to)];
        if (fi >= 0 && ti >= 0) {
            ctx.rest_edges.push_back(Edge{fi, ti});
        } else if (e.from == flip.from) {
            ctx.u_constraints.push_back({ti, true});
        } else if (e.to == flip.from) {
            ctx.u_constraints.push_back({fi, false});
        } else if (e.from == flip.to) {
            ctx.v_constraints.push_back({ti, true});
        } else if (e.to == flip.to) {
            ctx.v_constraints.push_back({fi, false});
        }
    }
    return ctx;
}

inline std::vector<VertexId> extension_set(const Digraph& g, const std::vector<VertexId>& tuple,
                                           const std::vector<std::pair<int, bool>>& constraints) {
    std::vector<char> in_tuple(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : tuple) in_tuple[static_cast<std::size_t>(v)] = 1;
    std::vector<VertexId> result;
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
        if (in_tuple[static_cast<std::size_t>(w)]) continue;
        bool ok = true;
        for (const auto& [idx, outgoing] : constraints) {
            const VertexId other = tuple[static_cast<std::size_t>(idx)];
            if (outgoing ? !g.has_edge(w, other) : !g.has_edge(other, w)) {
                ok = false;
                break;
            }
        }
        if (ok) result.push_back(w);
    }
    return result;
}

}  // namespace detail

/// Randomized search for a biased set pair in a host that avoids `pattern`.
/// Repeatedly samples tuples hoping to hit a copy of the pattern minus the two
/// flip endpoints (checked exactly); for a hit, the two extension sets are
/// formed, a sampled estimate filters them, and a witness is returned only if
/// its exactly recounted difference clears the threshold.
inline BiasedPairSearch find_biased_pair(const Digraph& g, const Digraph& pattern, Edge flip,
                                         const BiasedPairParams& params) {
    bipartite_profile(underlying_undirected(pattern));  // rejects non-bipartite patterns
    if (!pattern.has_edge(flip.from, flip.to))
        throw InputError("find_biased_pair: flip edge " + edge_str(flip) + " is not in the pattern");

    BiasedPairSearch search;
    const detail::FlipContext ctx = detail::flip_context(pattern, flip);
    const int d = static_cast<int>(ctx.rest.size());
    const int n = g.vertex_count();
    if (n < pattern.vertex_count()) {
        search.attempts = 0;
        return search;
    }

    for (int attempt = 0; attempt < params.max_samples; ++attempt) {
        search.attempts = attempt + 1;
        SplitMix64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(attempt)));
        std::vector<VertexId> tuple;
        tuple.reserve(static_cast<std::size_t>(d));
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        while (static_cast<int>(tuple.size()) < d) {
            const int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            tuple.push_back(v);
        }
        bool is_copy = true;
        for (const Edge& e : ctx.rest_edges) {
            if (!g.has_edge(tuple[static_cast<std::size_t>(e.from)], tuple[static_cast<std::size_t>(e.to)])) {
                is_copy = false;
                break;
            }
        }
        if (!is_copy) continue;
        ++search.copies_found;

        const std::vector<VertexId> set_u = detail::extension_set(g, tuple, ctx.u_constraints);
        const std::vector<VertexId> set_v = detail::extension_set(g, tuple, ctx.v_constraints);
        if (set_u.empty() && set_v.empty()) continue;

        const EdgeDifferenceEstimate est =
            sample_edge_difference(g, set_u, set_v, params.pair_samples,
                                   derive_seed(params.seed, 0x5eedull + static_cast<std::uint64_t>(attempt)),
                                   params.delta);
        const double scaled = (std::abs(est.estimate) + est.half_width) * static_cast<double>(n) * n;
        if (scaled < params.threshold) continue;

        DiscrepancyWitness w = detail::best_disjoint_witness(g, set_u, set_v);
        if (static_cast<double>(w.difference) >= params.threshold) {
            search.witness = std::move(w);
            return search;
        }
    }
    return search;
}

struct PatternFreeParams {
    int trials = 32;                // greedy trials (sparse regime and fallback)
    std::uint64_t seed = 1;
    std::optional<double> threshold;  // default: n^2 p^t / 4
    int max_samples = 500;
    int pair_samples = 2000;
    double delta = 0.01;
    double dense_cut_factor = 0.25;  // dense regime when m > factor * n^{2-alpha}
};

struct PatternFreeFasResult {
    FasResult fas;
    bool dense_regime = false;
    bool used_witness = false;
    std::int64_t exponent = 0;  // t of the pattern's underlying graph
    double alpha = 0;
    double epsilon = 0;
    double dense_cut = 0;
    double threshold = 0;
    std::optional<DiscrepancyWitness> witness;
    std::optional<Edge> flip_edge;
};

/// Two-regime FAS pipeline for hosts assumed free of `pattern` (not verified).
/// Sparse hosts go to the randomized greedy; dense hosts first hunt for a
/// biased pair and certify an ordering from it, falling back to the greedy.
/// The smaller FAS wins.
inline PatternFreeFasResult pattern_free_fas(const Digraph& g, const Digraph& pattern,
                                             const PatternFreeParams& params = {}) {
    const BipartiteProfile profile = bipartite_profile(underlying_undirected(pattern));
    PatternFreeFasResult result;
    result.exponent = profile.exponent;
    const double t = static_cast<double>(profile.exponent);
    result.alpha = 1.0 / (2.0 * t - 1.0);
    result.epsilon = 1.0 / (16.0 * t - 12.0);

    const std::int64_t n = g.vertex_count();
    const std::int64_t m = g.edge_count();
    result.dense_cut = params.dense_cut_factor * std::pow(static_cast<double>(n), 2.0 - result.alpha);
    result.dense_regime = static_cast<double>(m) > result.dense_cut;

    if (result.dense_regime) {
        const double p = 2.0 * static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n));
        result.threshold = params.threshold.value_or(0.25 * static_cast<double>(n) * n * std::pow(p, t));
        BiasedPairParams search_params;
        search_params.max_samples = params.max_samples;
        search_params.pair_samples = params.pair_samples;
        search_params.delta = params.delta;
        search_params.threshold = result.threshold;
        std::optional<FasResult> from_witness;
        for (std::size_t i = 0; i < pattern.edges().size(); ++i) {
            search_params.seed = derive_seed(params.seed, i);
            BiasedPairSearch search = find_biased_pair(g, pattern, pattern.edges()[i], search_params);
            if (search.witness) {
                const VertexOrdering order = ordering_from_biased_pair(g, *search.witness);
                from_witness = fas_from_ordering(g, order);
                result.witness = std::move(search.witness);
                result.flip_edge = pattern.edges()[i];
                break;
            }
        }
        const GreedyResult fallback = randomized_fas(g, params.trials, derive_seed(params.seed, 0xfa5ull));
        if (from_witness && from_witness->size() <= fallback.fas.size()) {
            result.fas = std::move(*from_witness);
            result.used_witness = true;
        } else {
            result.fas = fallback.fas;
        }
    } else {
        result.fas = randomized_fas(g, params.trials, params.seed).fas;
    }
    return result;
}

}  // namespace faslab
