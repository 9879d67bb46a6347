#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "faslab/constructions.hpp"
#include "faslab/digraph.hpp"
#include "faslab/edge_list_io.hpp"
#include "support.hpp"

using namespace faslab;

namespace {
Digraph triangle() { return Digraph::from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}}); }
Digraph transitive3() { return Digraph::from_edge_list(3, {{0, 1}, {0, 2}, {1, 2}}); }
}  // namespace

TEST_CASE("from_edge_list builds the directed triangle") {
    const Digraph g = triangle();
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(1, 0));
    CHECK(g.out_degree(0) == 1);
    CHECK(g.in_degree(0) == 1);
}

TEST_CASE("from_edge_list rejects invariant violations with the offending pair") {
    CHECK_THROWS_MATCHES(Digraph::from_edge_list(2, {{0, 0}}), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("(0,0)")));
    CHECK_THROWS_MATCHES(Digraph::from_edge_list(2, {{0, 1}, {1, 0}}), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("antiparallel")));
    CHECK_THROWS_MATCHES(Digraph::from_edge_list(2, {{0, 1}, {0, 1}}), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("duplicate")));
    CHECK_THROWS_MATCHES(Digraph::from_edge_list(2, {{0, 5}}), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("(0,5)")));
}

TEST_CASE("single vertex digraph") {
    const Digraph g = Digraph::from_edge_list(1, {});
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("underlying undirected graph") {
    CHECK(underlying_undirected(triangle()).edge_count() == 3);
    const Digraph single = Digraph::from_edge_list(2, {{0, 1}});
    CHECK(underlying_undirected(single).has_edge(1, 0));
    const Digraph k22 = oriented_complete_bipartite(2, 2, BipartiteMode::one_way);
    const UndirectedGraph u = underlying_undirected(k22);
    CHECK(u.edge_count() == 4);
    CHECK(u.has_edge(0, 2));
    CHECK_FALSE(u.has_edge(0, 1));
}

TEST_CASE("acyclicity and witnesses") {
    CHECK_FALSE(is_acyclic(triangle()).has_value());
    const auto witness = is_acyclic(transitive3());
    REQUIRE(witness.has_value());
    CHECK(backward_edges(transitive3(), *witness).backward == 0);
    CHECK(is_acyclic(Digraph::from_edge_list(0, {})).has_value());
}

TEST_CASE("forward/backward split under orderings") {
    const Digraph g = triangle();
    const auto asc = VertexOrdering::from_sequence({0, 1, 2});
    const EdgeSplit split = backward_edges(g, asc);
    CHECK(split.forward == 2);
    CHECK(split.backward == 1);
    REQUIRE(split.backward_set.size() == 1);
    CHECK(split.backward_set[0] == Edge{2, 0});

    const EdgeSplit rev = backward_edges(g, asc.reversed());
    CHECK(rev.forward == 1);
    CHECK(rev.backward == 2);

    const auto topo = is_acyclic(transitive3());
    CHECK(backward_edges(transitive3(), *topo).backward == 0);
}

TEST_CASE("fas_from_ordering keeps the smaller class") {
    const Digraph g = triangle();
    const FasResult keep = fas_from_ordering(g, VertexOrdering::from_sequence({0, 1, 2}));
    CHECK(keep.size() == 1);
    CHECK(keep.removed[0] == Edge{2, 0});
    CHECK(keep.surplus == HalfInt{1});

    const FasResult flipped = fas_from_ordering(g, VertexOrdering::from_sequence({2, 1, 0}));
    CHECK(flipped.size() == 1);

    // Every ordering of the transitive triangle certifies at most one deletion.
    std::vector<VertexId> seq{0, 1, 2};
    std::sort(seq.begin(), seq.end());
    std::int64_t worst = 0;
    do {
        worst = std::max(worst, fas_from_ordering(transitive3(), VertexOrdering::from_sequence(seq)).size());
    } while (std::next_permutation(seq.begin(), seq.end()));
    CHECK(worst == 1);
}

TEST_CASE("induced subgraphs relabel to a dense range") {
    const Digraph g = triangle();
    const std::vector<VertexId> pair{0, 1};
    const Digraph sub = induced_subgraph(g, pair);
    CHECK(sub.vertex_count() == 2);
    CHECK(sub.edge_count() == 1);
    CHECK(sub.has_edge(0, 1));

    const std::vector<VertexId> all{0, 1, 2};
    CHECK(induced_subgraph(g, all).edge_count() == 3);
    CHECK(induced_subgraph(g, std::vector<VertexId>{}).vertex_count() == 0);
}

TEST_CASE("edge-list format round trip is byte stable") {
    const Digraph g = cycle_blowup(3, 2);
    std::ostringstream first;
    write_digraph(first, g);
    std::istringstream in(first.str());
    const Digraph back = read_digraph(in);
    std::ostringstream second;
    write_digraph(second, back);
    CHECK(first.str() == second.str());
    CHECK(back.edge_count() == g.edge_count());
}

TEST_CASE("edge-list parser reports line numbers") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_digraph(in);
    };
    CHECK_THROWS_MATCHES(parse("bogus\n"), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("line 1")));
    CHECK_THROWS_MATCHES(parse("3 2\n0 1\n"), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("line 3")));
    CHECK_THROWS_MATCHES(parse("3 2\n0 1\n2 2\n"), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("loop")));
    CHECK_THROWS_MATCHES(parse("2 1\n0 1\n1 0\n"), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("line 3")));
    CHECK_THROWS_MATCHES(parse("2 1\n0 1 9\n"), InputError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("line 2")));
}

TEST_CASE("directed girth") {
    CHECK(directed_girth(triangle()) == 3);
    CHECK_FALSE(directed_girth(transitive3()).has_value());
    CHECK(directed_girth(near_acyclic_gadget(2)) == 4);
    CHECK(directed_girth(cycle_blowup(4, 1)) == 5);
}

TEST_CASE("split identities over random graphs and orderings") {
    for (int seed = 0; seed < 40; ++seed) {
        const Digraph g = testing::random_digraph(3 + seed % 8, 900 + seed);
        SplitMix64 rng('o' + seed);
        const auto order = VertexOrdering::from_sequence(random_permutation(g.vertex_count(), rng));
        const EdgeSplit split = backward_edges(g, order);
        CHECK(split.forward + split.backward == g.edge_count());
        CHECK(split.backward == backward_edges(g, order.reversed()).forward);

        const FasResult fas = fas_from_ordering(g, order);
        CHECK(2 * fas.size() <= g.edge_count());
        CHECK(2 * fas.size() + fas.surplus.twice == g.edge_count());
        std::vector<Edge> kept;
        for (const Edge& e : g.edges())
            if (!std::binary_search(fas.removed.begin(), fas.removed.end(), e)) kept.push_back(e);
        CHECK(is_acyclic(Digraph::from_edge_list(g.vertex_count(), kept)).has_value());
    }
}

TEST_CASE("ordering validation") {
    CHECK_THROWS_AS(VertexOrdering::from_sequence({0, 0, 1}), InputError);
    CHECK_THROWS_AS(VertexOrdering::from_sequence({0, 3}), InputError);
    const auto o = VertexOrdering::from_positions({2, 0, 1});
    CHECK(o.vertex_at(0) == 1);
    CHECK(o.position_of(0) == 2);
}
