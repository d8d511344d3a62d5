#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nodal/errors.hpp"
#include "nodal/graph.hpp"
#include "nodal/serialize.hpp"

using namespace nodal;

TEST_CASE("load_graph parses and validates") {
    Graph tri = load_graph(R"({"n":3,"edges":[[1,2],[2,3],[1,3]]})");
    CHECK(tri.n() == 3);
    CHECK(tri.edge_count() == 3);

    Graph edge = load_graph(R"({"n":2,"edges":[[1,2]]})");
    CHECK(edge.edge_count() == 1);

    CHECK_THROWS_AS(load_graph(R"({"n":4,"edges":[[1,2],[3,4]]})"), InvalidGraph);
    CHECK_THROWS_AS(load_graph(R"({"n":2,"edges":[[1,1]]})"), InvalidGraph);
    CHECK_THROWS_AS(load_graph(R"({"n":2,"edges":[[1,2],[2,1]]})"), InvalidGraph);
    CHECK_THROWS_AS(load_graph(R"({"n":2,"edges":[[1,3]]})"), InvalidGraph);
    CHECK_THROWS_AS(load_graph("not json"), ParseError);
}

TEST_CASE("betti") {
    CHECK(betti(path_graph(5)) == 0);
    CHECK(betti(cycle_graph(5)) == 1);
    CHECK(betti(complete_graph(5)) == 6);
    CHECK(betti(Graph(1, {})) == 0);
}

TEST_CASE("spanning frame is the BFS tree from vertex 1") {
    SpanningTreeFrame f3 = spanning_frame(cycle_graph(3));
    CHECK(f3.tree_edges == std::vector<Edge>{{1, 2}, {1, 3}});
    CHECK(f3.cotree_edges == std::vector<Edge>{{2, 3}});

    SpanningTreeFrame f4 = spanning_frame(complete_graph(4));
    CHECK(f4.tree_edges == std::vector<Edge>{{1, 2}, {1, 3}, {1, 4}});
    CHECK(f4.cotree_edges == std::vector<Edge>{{2, 3}, {2, 4}, {3, 4}});

    SpanningTreeFrame ft = spanning_frame(path_graph(6));
    CHECK(ft.cotree_edges.empty());

    // determinism: identical inputs yield identical frames
    SpanningTreeFrame again = spanning_frame(complete_graph(4));
    CHECK(again.tree_edges == f4.tree_edges);
    CHECK(again.cotree_edges == f4.cotree_edges);
}

TEST_CASE("bipartition") {
    auto p4 = bipartition(path_graph(4));
    REQUIRE(p4.has_value());
    CHECK(*p4 == std::vector<int>{1, -1, 1, -1});

    CHECK_FALSE(bipartition(cycle_graph(5)).has_value());

    Graph g4 = cycle_graph(4);
    auto c4 = bipartition(g4);
    REQUIRE(c4.has_value());
    for (auto [i, j] : g4.edges()) CHECK((*c4)[i - 1] * (*c4)[j - 1] == -1);
}
