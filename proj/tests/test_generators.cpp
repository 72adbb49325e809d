#include "doctest.h"
#include "genusembed/cut_graph.h"
#include "genusembed/errors.h"
#include "genusembed/generators.h"

using namespace genusembed;

TEST_CASE("generated maps are valid and have the requested genus") {
    CHECK(euler_genus(torus_grid(3, 3)) == 1);
    CHECK(euler_genus(torus_grid(4, 7)) == 1);
    for (int g = 1; g <= 4; ++g) {
        CHECK(euler_genus(genus_sum(g, 3)) == g);
        CHECK(euler_genus(genus_sum(g, 5)) == g);
        CHECK(euler_genus(bouquet(g)) == g);
    }
    CHECK(euler_genus(planar_grid(4, 5)) == 0);
    for (const EmbeddedGraph& g : {torus_grid(3, 3), genus_sum(3, 4), bouquet(2), path_star(3, 4), planar_grid(2, 2)}) {
        CHECK(validate_map(g).empty());
        CHECK(is_connected(g));
    }
}

TEST_CASE("Euler counts of the 3x3 torus grid") {
    const EmbeddedGraph t = torus_grid(3, 3);
    CHECK(t.vertex_count() == 9);
    CHECK(t.edge_count() == 18);
    CHECK(face_count(t) == 9);
}

TEST_CASE("genus-sum(2, 3) certificate") {
    const EmbeddedGraph g = genus_sum(2, 3);
    CHECK(g.vertex_count() == 18);
    CHECK(g.edge_count() == 37);
    // 18 - 37 + F = 2 - 2g with g = 2.
    CHECK(face_count(g) == 17);
}

TEST_CASE("path-star(4, 5)") {
    const EmbeddedGraph g = path_star(4, 5);
    CHECK(euler_genus(g) == 0);
    CHECK(g.vertex_count() == 21);
    const PathSystem ps = tree_leaf_paths(g, *g.find_vertex("r"));
    CHECK(ps.size() == 4);
    for (const auto& p : ps.paths) CHECK(p.size() == 6);
}

TEST_CASE("generators are deterministic") {
    CHECK(genus_sum(3, 4) == genus_sum(3, 4));
    CHECK(torus_grid(5, 3) == torus_grid(5, 3));
}

TEST_CASE("generate dispatches on the family") {
    GeneratorSpec spec;
    spec.family = parse_family("bouquet");
    spec.genus = 3;
    CHECK(generate(spec) == bouquet(3));
    spec.family = parse_family("path-star");
    spec.arms = 2;
    spec.arm_length = 3;
    CHECK(generate(spec) == path_star(2, 3));
    CHECK_THROWS_AS(parse_family("klein-bottle"), InputError);
}

TEST_CASE("invalid generator parameters") {
    CHECK_THROWS_AS(torus_grid(2, 3), InputError);
    CHECK_THROWS_AS(genus_sum(0, 3), InputError);
    CHECK_THROWS_AS(bouquet(0), InputError);
    CHECK_THROWS_AS(path_star(0, 3), InputError);
    CHECK_THROWS_AS(planar_grid(0, 3), InputError);
}
