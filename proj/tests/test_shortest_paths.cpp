#include <random>

#include "doctest.h"
#include "genusembed/errors.h"
#include "genusembed/generators.h"
#include "genusembed/shortest_paths.h"
#include "support.h"

using namespace genusembed;

TEST_CASE("unit path distances") {
    const EmbeddedGraph g = testsupport::path({1, 1});
    const auto d = dijkstra(g, 0);
    CHECK(d == std::vector<double>{0, 1, 2});
}

TEST_CASE("single vertex") {
    EmbeddedGraph g;
    g.add_vertex("a");
    CHECK(dijkstra(g, 0) == std::vector<double>{0});
}

TEST_CASE("3x3 torus grid wraps around") {
    const EmbeddedGraph t = torus_grid(3, 3);
    const VertexId a = *t.find_vertex("v0_0");
    const VertexId b = *t.find_vertex("v2_2");
    CHECK(dijkstra(t, a)[b] == 2);
}

TEST_CASE("unreachable vertices are at infinity") {
    EmbeddedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    CHECK(dijkstra(g, 0)[1] == kInfinity);
}

TEST_CASE("Dijkstra agrees with Floyd-Warshall") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> len(0.1, 5.0);
    for (int trial = 0; trial < 6; ++trial) {
        EmbeddedGraph g = trial % 2 == 0 ? planar_grid(6 + trial, 7) : genus_sum(1 + trial / 2, 4);
        for (EdgeId e = 0; e < g.edge_count(); ++e) g.set_length(e, len(gen));
        REQUIRE(g.vertex_count() <= 200);
        const auto fw = testsupport::floyd_warshall(g);
        std::vector<VertexId> all(g.vertex_count());
        for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
        const DistanceTable dt = shortest_distances(g, all);
        for (VertexId u = 0; u < all.size(); ++u) {
            for (VertexId v = 0; v < all.size(); ++v) CHECK(approx_equal(dt[u][v], fw[u][v]));
        }
    }
}

TEST_CASE("shortest path tree of a path") {
    const ShortestPathTree t = shortest_path_tree(testsupport::path({1, 1}), 0);
    CHECK(t.parent[0] == kNone);
    CHECK(t.parent[1] == 0);
    CHECK(t.parent[2] == 1);
    CHECK(t.dist == std::vector<double>{0, 1, 2});
    CHECK(t.path_to(2) == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("the long edge of a 4-cycle is not a tree edge") {
    // Root a is an endpoint of da (length 10); d is reached through c.
    const ShortestPathTree t = shortest_path_tree(testsupport::square({1, 1, 1, 10}), 0);
    CHECK(t.dist[3] == 3);
    for (VertexId v = 0; v < 4; ++v) CHECK(t.parent_edge[v] != 3);
}

TEST_CASE("equal-length alternatives pick the smallest parent") {
    // c is at distance 2 through both b and d; b has the smaller identifier.
    const ShortestPathTree t = shortest_path_tree(testsupport::square(), 0);
    CHECK(t.parent[2] == 1);

    EmbeddedGraph g("parallel");
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge("x", 0, 1, 1.0);
    g.add_edge("y", 0, 1, 1.0);
    g.set_rotation(0, {Dart{0, 0}, Dart{1, 0}});
    g.set_rotation(1, {Dart{1, 1}, Dart{0, 1}});
    CHECK(shortest_path_tree(g, 0).parent_edge[1] == 0);
}

TEST_CASE("shortest path tree rejects disconnected graphs") {
    EmbeddedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    CHECK_THROWS_AS(shortest_path_tree(g, 0), InputError);
}

TEST_CASE("tolerance helpers") {
    CHECK(approx_equal(1.0, 1.0 + 1e-12));
    CHECK_FALSE(approx_equal(1.0, 1.0 + 1e-6));
    CHECK(approx_leq(2.0, 1.0 + 1.0 - 1e-13));
    CHECK(approx_equal(1e6, 1e6 + 1e-4));
}
