#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"
#include "faslab/matrix.hpp"
#include "faslab/numeric.hpp"

namespace faslab {

/// Size caps for the exponential-time oracles. Operations refuse inputs beyond
/// the cap instead of silently running forever.
struct ExactBudget {
    int max_n_beta = 20;       // 2^n subset DP
    int max_n_tau = 12;        // 3^n and 2^n set enumerations
    int max_n_tau_full = 10;   // 4^n set enumerations
    int max_pattern_vertices = 6;
    int max_n_switch_enum = 5;
    int max_k_switch_enum = 6;

    /// FASLAB_BUDGET_OVERRIDE=<int> raises the three vertex-count caps to at
    /// least that value. Use at own risk: the cost is exponential.
    static ExactBudget from_env() {
        ExactBudget b;
        if (const char* raw = std::getenv("FASLAB_BUDGET_OVERRIDE")) {
            char* end = nullptr;
            const long v = std::strtol(raw, &end, 10);
            if (end && *end == '\0' && v > 0) {
                b.max_n_beta = std::max(b.max_n_beta, static_cast<int>(v));
                b.max_n_tau = std::max(b.max_n_tau, static_cast<int>(v));
                b.max_n_tau_full = std::max(b.max_n_tau_full, static_cast<int>(v));
            }
        }
        return b;
    }
};

namespace detail {
inline void check_budget(int n, int cap, const char* what) {
    if (n > cap)
        throw BudgetError(std::string(what) + ": n=" + std::to_string(n) + " exceeds budget " + std::to_string(cap));
}
// Absolute feasibility ceilings, enforced even under FASLAB_BUDGET_OVERRIDE.
inline constexpr int kHardCapSubsetDp = 24;
inline constexpr int kHardCapFourState = 14;
inline constexpr int kHardCapThreeState = 16;
}  // namespace detail

struct MinFasResult {
    std::int64_t value = 0;
    VertexOrdering witness;
};

/// Minimum feedback arc set size with a certifying ordering.
///
/// Subset DP over bitsets: f(S) is the fewest backward edges achievable within
/// G[S]; peeling the vertex placed last gives
///   f(S) = min_{v in S} f(S \ v) + |out(v) ∩ (S \ v)|,  f(∅) = 0.
/// The witness is rebuilt by backtracking and re-verified against the digraph.
inline MinFasResult min_fas_exact(const Digraph& g, const ExactBudget& budget = {}) {
    const int n = g.vertex_count();
    detail::check_budget(n, std::min(budget.max_n_beta, detail::kHardCapSubsetDp), "min_fas_exact");
    if (n == 0) return MinFasResult{0, VertexOrdering::identity(0)};

    std::vector<std::uint32_t> out_mask(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edges()) out_mask[static_cast<std::size_t>(e.from)] |= 1u << e.to;

    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    std::vector<std::uint16_t> f(static_cast<std::size_t>(full) + 1, 0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        std::uint16_t best = std::numeric_limits<std::uint16_t>::max();
        std::uint32_t rest = s;
        while (rest) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            const std::uint32_t without = s & ~(1u << v);
            const std::uint16_t cand = static_cast<std::uint16_t>(
                f[without] + std::popcount(out_mask[static_cast<std::size_t>(v)] & without));
            if (cand < best) best = cand;
        }
        f[s] = best;
    }

    std::vector<VertexId> seq(static_cast<std::size_t>(n));
    std::uint32_t s = full;
    for (int slot = n - 1; slot >= 0; --slot) {
        std::uint32_t rest = s;
        int chosen = -1;
        while (rest) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            const std::uint32_t without = s & ~(1u << v);
            if (f[s] == f[without] + std::popcount(out_mask[static_cast<std::size_t>(v)] & without)) {
                chosen = v;
                break;
            }
        }
        seq[static_cast<std::size_t>(slot)] = chosen;
        s &= ~(1u << chosen);
    }

    MinFasResult result{f[full], VertexOrdering::from_sequence(std::move(seq))};
    const EdgeSplit split = backward_edges(g, result.witness);
    if (split.backward != result.value)
        throw std::logic_error("min_fas_exact: witness does not match DP value");
    return result;
}

/// Directed surplus m/2 - minimum FAS size, as an exact half-integer.
inline HalfInt directed_surplus_exact(const Digraph& g, const ExactBudget& budget = {}) {
    const MinFasResult r = min_fas_exact(g, budget);
    return HalfInt{g.edge_count() - 2 * r.value};
}

struct DiscrepancyResult {
    std::int64_t value = 0;
    DiscrepancyWitness witness;
};

namespace detail {

// Shared enumerator for the set-pair discrepancy maxima. Each vertex takes a
// membership state (bit0 = in A, bit1 = in B); edges between assigned vertices
// contribute e(A,B) - e(B,A) incrementally. Pruning uses the count of edges
// not yet decided, each worth at most +1.
struct PairEnumerator {
    int n = 0;
    std::int64_t edge_total = 0;
    // For vertex v: (other, forward) over lower-indexed neighbors; forward
    // means the edge is v -> other.
    std::vector<std::vector<std::pair<int, bool>>> down;
    std::vector<std::int64_t> undecided_at;  // edges with an endpoint >= level
    std::vector<int> states;
    std::vector<int> best_states;
    std::int64_t best = -1;
    const int* allowed_states = nullptr;
    int allowed_count = 0;

    explicit PairEnumerator(const Digraph& g) : n(g.vertex_count()), edge_total(g.edge_count()) {
        down.assign(static_cast<std::size_t>(n), {});
        std::vector<std::int64_t> decided_below(static_cast<std::size_t>(n) + 1, 0);
        for (const Edge& e : g.edges()) {
            const int hi = std::max(e.from, e.to);
            const int lo = std::min(e.from, e.to);
            down[static_cast<std::size_t>(hi)].push_back({lo, e.from == hi});
            decided_below[static_cast<std::size_t>(hi) + 1] += 1;
        }
        for (int i = 1; i <= n; ++i) decided_below[static_cast<std::size_t>(i)] += decided_below[static_cast<std::size_t>(i) - 1];
        undecided_at.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 0; i <= n; ++i) undecided_at[static_cast<std::size_t>(i)] = edge_total - decided_below[static_cast<std::size_t>(i)];
        states.assign(static_cast<std::size_t>(n), 0);
    }

    static std::int64_t contribution(int from_state, int to_state) {
        std::int64_t c = 0;
        if ((from_state & 1) && (to_state & 2)) ++c;
        if ((from_state & 2) && (to_state & 1)) --c;
        return c;
    }

    void run(const int* allowed, int count) {
        allowed_states = allowed;
        allowed_count = count;
        best = -1;
        recurse(0, 0);
    }

    void recurse(int level, std::int64_t value) {
        if (value + undecided_at[static_cast<std::size_t>(level)] <= best) return;
        if (level == n) {
            best = value;
            best_states = states;
            return;
        }
        for (int i = 0; i < allowed_count; ++i) {
            const int s = allowed_states[i];
            std::int64_t delta = 0;
            for (const auto& [other, fwd] : down[static_cast<std::size_t>(level)]) {
                const int so = states[static_cast<std::size_t>(other)];
                delta += fwd ? contribution(s, so) : contribution(so, s);
            }
            states[static_cast<std::size_t>(level)] = s;
            recurse(level + 1, value + delta);
        }
        states[static_cast<std::size_t>(level)] = 0;
    }

    DiscrepancyResult result(const Digraph& g) const {
        std::vector<VertexId> a, b;
        for (int v = 0; v < n; ++v) {
            if (best_states[static_cast<std::size_t>(v)] & 1) a.push_back(v);
            if (best_states[static_cast<std::size_t>(v)] & 2) b.push_back(v);
        }
        DiscrepancyResult r{best, make_witness(g, std::move(a), std::move(b))};
        if (r.witness.difference != r.value)
            throw std::logic_error("discrepancy enumeration: witness recount mismatch");
        return r;
    }
};

}  // namespace detail

/// max over all A, B ⊆ V (overlap allowed) of e(A,B) - e(B,A), with witness.
/// 4 membership states per vertex.
inline DiscrepancyResult directional_discrepancy_exact(const Digraph& g, const ExactBudget& budget = {}) {
    detail::check_budget(g.vertex_count(), std::min(budget.max_n_tau_full, detail::kHardCapFourState),
                         "directional_discrepancy_exact");
    static constexpr int kStates[4] = {0, 1, 2, 3};
    detail::PairEnumerator en(g);
    en.run(kStates, 4);
    return en.result(g);
}

/// Same maximum restricted to disjoint A, B; 3 membership states per vertex.
inline DiscrepancyResult disjoint_discrepancy_exact(const Digraph& g, const ExactBudget& budget = {}) {
    detail::check_budget(g.vertex_count(), std::min(budget.max_n_tau, detail::kHardCapThreeState),
                         "disjoint_discrepancy_exact");
    static constexpr int kStates[3] = {0, 1, 2};
    detail::PairEnumerator en(g);
    en.run(kStates, 3);
    return en.result(g);
}

/// max over bipartitions A ⊔ B = V of e(A,B) - e(B,A), by 2^n enumeration.
inline std::int64_t partition_discrepancy_exact(const Digraph& g, const ExactBudget& budget = {}) {
    const int n = g.vertex_count();
    detail::check_budget(n, budget.max_n_tau, "partition_discrepancy_exact");
    if (n > 62) throw BudgetError("partition_discrepancy_exact: n too large for mask enumeration");
    std::vector<std::uint64_t> out_mask(static_cast<std::size_t>(n), 0), in_mask(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edges()) {
        out_mask[static_cast<std::size_t>(e.from)] |= 1ull << e.to;
        in_mask[static_cast<std::size_t>(e.to)] |= 1ull << e.from;
    }
    std::int64_t best = 0;
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        std::int64_t value = 0;
        std::uint64_t rest = mask;
        while (rest) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            value += g.out_degree(v) - std::popcount(out_mask[static_cast<std::size_t>(v)] & mask);
            value -= g.in_degree(v) - std::popcount(in_mask[static_cast<std::size_t>(v)] & mask);
        }
        best = std::max(best, value);
    }
    return best;
}

namespace detail {

// Backtracking order for pattern vertices: BFS over the underlying adjacency so
// each vertex attaches to already-assigned ones whenever the pattern is connected.
template <typename AdjacentFn>
std::vector<int> pattern_order(int k, AdjacentFn adjacent) {
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (int root = 0; root < k; ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        std::vector<int> queue{root};
        seen[static_cast<std::size_t>(root)] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            order.push_back(v);
            for (int w = 0; w < k; ++w) {
                if (!seen[static_cast<std::size_t>(w)] && adjacent(v, w)) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return order;
}

}  // namespace detail

/// Number of labeled copies of `pattern` in `host`: injective vertex maps
/// sending every edge of the pattern to an edge of the host with the same
/// direction. Non-edges of the pattern are unconstrained.
inline std::int64_t count_labeled(const Digraph& pattern, const Digraph& host, const ExactBudget& budget = {}) {
    const int k = pattern.vertex_count();
    if (k > budget.max_pattern_vertices)
        throw BudgetError("count_labeled: pattern has " + std::to_string(k) + " vertices, budget " +
                          std::to_string(budget.max_pattern_vertices));
    const int n = host.vertex_count();
    if (k > n) return 0;
    if (k == 0) return 1;

    const std::vector<int> order =
        detail::pattern_order(k, [&](int a, int b) { return pattern.adjacent(a, b); });
    // constraints[i]: edges between order[i] and earlier order[j], as (j, out?)
    std::vector<std::vector<std::pair<int, bool>>> constraints(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < i; ++j) {
            if (pattern.has_edge(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]))
                constraints[static_cast<std::size_t>(i)].push_back({j, true});
            if (pattern.has_edge(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(i)]))
                constraints[static_cast<std::size_t>(i)].push_back({j, false});
        }

    std::vector<int> image(static_cast<std::size_t>(k), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::int64_t count = 0;
    std::function<void(int)> assign = [&](int depth) {
        if (depth == k) {
            ++count;
            return;
        }
        for (int cand = 0; cand < n; ++cand) {
            if (used[static_cast<std::size_t>(cand)]) continue;
            bool ok = true;
            for (const auto& [j, out] : constraints[static_cast<std::size_t>(depth)]) {
                const int other = image[static_cast<std::size_t>(j)];
                if (out ? !host.has_edge(cand, other) : !host.has_edge(other, cand)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[static_cast<std::size_t>(cand)] = 1;
            image[static_cast<std::size_t>(depth)] = cand;
            assign(depth + 1);
            used[static_cast<std::size_t>(cand)] = 0;
        }
    };
    assign(0);
    return count;
}

/// Undirected overload with the identical contract.
inline std::int64_t count_labeled(const UndirectedGraph& pattern, const UndirectedGraph& host,
                                  const ExactBudget& budget = {}) {
    const int k = pattern.vertex_count();
    if (k > budget.max_pattern_vertices)
        throw BudgetError("count_labeled: pattern has " + std::to_string(k) + " vertices, budget " +
                          std::to_string(budget.max_pattern_vertices));
    const int n = host.vertex_count();
    if (k > n) return 0;
    if (k == 0) return 1;

    const std::vector<int> order =
        detail::pattern_order(k, [&](int a, int b) { return pattern.has_edge(a, b); });
    std::vector<std::vector<int>> constraints(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < i; ++j)
            if (pattern.has_edge(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]))
                constraints[static_cast<std::size_t>(i)].push_back(j);

    std::vector<int> image(static_cast<std::size_t>(k), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::int64_t count = 0;
    std::function<void(int)> assign = [&](int depth) {
        if (depth == k) {
            ++count;
            return;
        }
        for (int cand = 0; cand < n; ++cand) {
            if (used[static_cast<std::size_t>(cand)]) continue;
            bool ok = true;
            for (int j : constraints[static_cast<std::size_t>(depth)]) {
                if (!host.has_edge(cand, image[static_cast<std::size_t>(j)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[static_cast<std::size_t>(cand)] = 1;
            image[static_cast<std::size_t>(depth)] = cand;
            assign(depth + 1);
            used[static_cast<std::size_t>(cand)] = 0;
        }
    };
    assign(0);
    return count;
}

struct SwitchCounts {
    std::int64_t even = 0;
    std::int64_t odd = 0;
};

enum class SwitchMethod { automatic, enumeration, transfer };

/// Counts closed k-walks in the underlying graph split by the parity of steps
/// traversed against edge direction. Enumeration is the small-n oracle; the
/// transfer route squares a 2n x 2n (vertex, parity) walk matrix.
inline SwitchCounts even_odd_switch_counts(const Digraph& g, int k,
                                           SwitchMethod method = SwitchMethod::automatic,
                                           const ExactBudget& budget = {}) {
    if (k < 2 || k % 2 != 0) throw InputError("switch counts require even k >= 2");
    const int n = g.vertex_count();
    if (n == 0) return SwitchCounts{};

    const bool can_enumerate = n <= budget.max_n_switch_enum && k <= budget.max_k_switch_enum;
    if (method == SwitchMethod::enumeration && !can_enumerate)
        throw BudgetError("switch enumeration: n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                          " exceeds enumeration budget");
    const bool enumerate = method == SwitchMethod::enumeration || (method == SwitchMethod::automatic && can_enumerate);

    if (enumerate) {
        const UndirectedGraph under = underlying_undirected(g);
        SwitchCounts counts;
        std::function<void(int, int, int, int)> walk = [&](int start, int cur, int depth, int parity) {
            if (depth == k) {
                if (cur == start) (parity == 0 ? counts.even : counts.odd) += 1;
                return;
            }
            for (VertexId w : under.neighbors(cur))
                walk(start, w, depth + 1, parity ^ (g.has_edge(cur, w) ? 0 : 1));
        };
        for (int v = 0; v < n; ++v) walk(v, v, 0, 0);
        return counts;
    }

    IntMatrix t(2 * n);
    for (const Edge& e : g.edges()) {
        for (int p = 0; p < 2; ++p) {
            t.at(2 * e.from + p, 2 * e.to + p) = 1;          // along the edge
            t.at(2 * e.to + p, 2 * e.from + (p ^ 1)) = 1;    // against it: parity flips
        }
    }
    const IntMatrix tk = matrix_power(std::move(t), k);
    SwitchCounts counts;
    for (int v = 0; v < n; ++v) {
        counts.even += tk.at(2 * v, 2 * v);
        counts.odd += tk.at(2 * v, 2 * v + 1);
    }
    return counts;
}

}  // namespace faslab
