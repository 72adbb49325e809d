#include <cmath>
#include <set>

#include "doctest.h"
#include "genusembed/errors.h"
#include "genusembed/generators.h"
#include "genusembed/planarization.h"
#include "support.h"

using namespace genusembed;

namespace {

/// Bouquet of two loops at o with a pendant path o - p1 - p2 of unit edges.
EmbeddedGraph bouquet_with_tail() {
    EmbeddedGraph g("tail");
    g.add_vertex("o");
    g.add_vertex("p1");
    g.add_vertex("p2");
    g.add_edge("a", 0, 0, 1.0);
    g.add_edge("b", 0, 0, 1.0);
    g.add_edge("e", 0, 1, 1.0);
    g.add_edge("f", 1, 2, 1.0);
    g.set_rotation(0, {Dart{0, 0}, Dart{1, 0}, Dart{0, 1}, Dart{1, 1}, Dart{2, 0}});
    g.set_rotation(1, {Dart{2, 1}, Dart{3, 0}});
    g.set_rotation(2, {Dart{3, 1}});
    return g;
}

PlanarInstance tail_instance() {
    const EmbeddedGraph g = bouquet_with_tail();
    const VertexId x[] = {0};
    const EdgeId cut[] = {0, 1};
    PlanarInstance inst = subdivide_boundary_edges(g, x, cut);
    build_clique_and_residue(inst);
    return inst;
}

std::vector<double> distances(const EmbeddedGraph& g, VertexId s) { return dijkstra(g, s); }

}  // namespace

TEST_CASE("boundary edges are split at 1/2 from X") {
    const EmbeddedGraph g = testsupport::path({2, 3});
    const VertexId xa[] = {0};
    const PlanarInstance a = subdivide_boundary_edges(g, xa, {});
    REQUIRE(a.W.size() == 1);
    const VertexId w = a.W[0];
    CHECK(a.g2.vertex_name(w) == "e0~w");
    CHECK(a.host_of[w].x == 0);
    CHECK(a.host_of[w].outer == 1);
    CHECK(a.g2.edge(0).name == "e0");
    CHECK(a.g2.edge(0).length == 0.5);
    CHECK(a.g2.edge(0).u == 0);
    CHECK(a.g2.edge(0).v == w);
    const EdgeId outer = *a.g2.find_edge("e0~");
    CHECK(a.g2.edge(outer).length == 1.5);
    CHECK(a.g2.edge(1).length == 3.0);
    CHECK(a.Y == std::vector<VertexId>{0, w});
    CHECK(validate_map(a.g2).empty());
    CHECK(distances(a.g2, 0)[2] == 5.0);

    const VertexId xc[] = {2};
    const PlanarInstance c = subdivide_boundary_edges(g, xc, {});
    REQUIRE(c.W.size() == 1);
    const Edge& half = c.g2.edge(1);
    CHECK(half.length == 0.5);
    CHECK(half.v == 2);
    CHECK(half.u == c.W[0]);
    CHECK(c.g2.edge(*c.g2.find_edge("e1~")).length == 2.5);
    CHECK(c.host_of[c.W[0]].x == 2);
    CHECK(validate_map(c.g2).empty());
    CHECK(distances(c.g2, 2)[0] == 5.0);

    const EmbeddedGraph short_edge = testsupport::path({0.5, 1});
    CHECK_THROWS_AS(subdivide_boundary_edges(short_edge, xa, {}), InternalError);
}

TEST_CASE("dilation of vertex subsets") {
    const EmbeddedGraph sq = testsupport::square();
    const VertexId opposite[] = {0, 2};
    CHECK(dilation(sq, opposite) == kInfinity);
    const VertexId three[] = {0, 1, 2};
    CHECK(dilation(sq, three) == 1.0);
    const EmbeddedGraph detour = testsupport::square({1, 5, 1, 1});
    // a-c: 6 inside {a, b, c} against 2 through d.
    CHECK(dilation(detour, three) == 3.0);
}

TEST_CASE("hand-built residue and portals") {
    const PlanarInstance inst = tail_instance();
    REQUIRE(inst.W.size() == 1);
    const VertexId w = inst.W[0];
    CHECK(inst.Y == std::vector<VertexId>{0, w});
    CHECK(inst.y_dilation == 1.0);
    CHECK(inst.clique[0][1] == 0.5);
    // Residue: w - p1 - p2, with o isolated.
    CHECK(inst.residue.edge_count() == 2);
    CHECK(inst.residue.rotation(0).empty());
    CHECK(inst.residue.rotation(w).size() == 1);
    CHECK(component_genera(inst.residue) == std::vector<int>(connected_components(inst.residue).count, 0));

    CHECK(kpr_top_scale(inst.residue) == 3);
    const auto parts = kpr_hierarchy(inst.residue, 5);
    REQUIRE(parts.size() == 4);
    const PortalAssignment pa = assign_portals(inst, parts);
    CHECK(pa.portal_of[1] == w);
    CHECK(pa.portal_of[2] == w);
    CHECK(pa.portal_of[0] == kNone);
    CHECK(pa.scale_used[1] == 1);
    CHECK(pa.scale_used[2] == 2);
    CHECK(pa.used == std::vector<VertexId>{w});
}

TEST_CASE("hand-built one-sum") {
    const PlanarInstance inst = tail_instance();
    const VertexId w = inst.W[0];
    EmbedTree t;
    t.nodes = {TreeNode{NodeKind::copy, 0, 0}, TreeNode{NodeKind::copy, w, kNone}};
    t.edges = {TreeEdge{0, 1, 0.5}};
    t.f.assign(inst.g2.vertex_count(), kNone);
    t.f[0] = 0;
    t.f[w] = 1;
    const auto parts = kpr_hierarchy(inst.residue, 0);
    const Assembled a = assemble_one_sum(t, inst, assign_portals(inst, parts));
    CHECK(a.graph.vertex_count() == 4);
    CHECK(a.graph.edge_count() == 3);
    CHECK(is_connected(a.graph));
    CHECK(euler_genus(a.graph) == 0);
    CHECK(a.graph.vertex_name(a.vmap[1]) == "p1");
    CHECK(a.graph.vertex_name(a.vmap[w]) == "e~w");
    const auto d = distances(a.graph, a.vmap[0]);
    CHECK(d[a.vmap[1]] == 1.0);
    CHECK(d[a.vmap[2]] == 2.0);
}

TEST_CASE("a bouquet planarizes to a single vertex") {
    const PlanarizationSample s = planarize(bouquet(2), 3);
    CHECK(s.planar_out.vertex_count() == 1);
    CHECK(s.planar_out.edge_count() == 0);
    CHECK(s.vmap == std::vector<std::size_t>{0});
    CHECK(s.provenance.portals_used == 0);
    CHECK(s.provenance.genus == 2);
}

TEST_CASE("planar input is returned unchanged") {
    const EmbeddedGraph g = planar_grid(4, 5);
    const PlanarizationSample s = planarize(g, 1);
    CHECK(s.planar_out == g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(s.vmap[v] == v);
}

TEST_CASE("residue of real instances") {
    for (const EmbeddedGraph& g : {torus_grid(4, 4), torus_grid(6, 5), genus_sum(2, 4)}) {
        const PlanarPlan plan = prepare_planarization(g);
        const PlanarInstance& inst = plan.inst;
        CHECK(inst.y_dilation == 1.0);
        for (int gen : plan.residue_genera) CHECK(gen == 0);
        std::size_t expect_edges = 0;
        for (const Edge& e : inst.g2.edges()) {
            if (!(inst.in_y(e.u) && inst.in_y(e.v))) ++expect_edges;
        }
        CHECK(inst.residue.edge_count() == expect_edges);
        for (VertexId x : inst.X) CHECK(inst.residue.rotation(x).empty());
        for (VertexId w : inst.W) {
            CHECK(inst.residue.rotation(w).size() == 1);
            CHECK(approx_equal(distances(inst.g2, w)[inst.host_of[w].x], 0.5));
        }
        const auto fw = testsupport::floyd_warshall(inst.g2);
        for (std::size_t i = 0; i < inst.Y.size(); ++i) {
            for (std::size_t j = 0; j < inst.Y.size(); ++j) CHECK(approx_equal(inst.clique[i][j], fw[inst.Y[i]][inst.Y[j]]));
        }
        CHECK(validate_map(inst.residue).empty());
    }
}

TEST_CASE("KPR with a huge scale keeps components whole") {
    const EmbeddedGraph g = planar_grid(6, 6);
    const Adjacency adj = adjacency(g);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = Rng::stream(seed, Stream::lipschitz);
        const LipschitzPartition p = kpr_partition(g, adj, 40, rng);
        CHECK(p.clusters.size() == 1);
        CHECK(p.offsets.size() == static_cast<std::size_t>(kKprRounds));
    }
}

TEST_CASE("KPR edge split probability") {
    // A single edge of length 1 splits in one round with probability min(1, 6/delta).
    const EmbeddedGraph g = testsupport::path({1});
    const Adjacency adj = adjacency(g);
    for (int scale : {4, 6, 2}) {
        const double delta = std::ldexp(1.0, scale);
        const double once = std::min(1.0, 6.0 / delta);
        const double expected = 1.0 - std::pow(1.0 - once, kKprRounds);
        const int trials = 20000;
        int split = 0;
        Rng rng(99);
        for (int k = 0; k < trials; ++k) {
            const LipschitzPartition p = kpr_partition(g, adj, scale, rng);
            if (p.cluster_of[0] != p.cluster_of[1]) ++split;
        }
        CHECK(std::abs(static_cast<double>(split) / trials - expected) < 0.015);
    }
}

TEST_CASE("KPR on a 10x10 grid at delta 8") {
    const EmbeddedGraph g = planar_grid(10, 10);
    const Adjacency adj = adjacency(g);
    std::size_t within = 0;
    std::size_t total = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = Rng::stream(seed, Stream::lipschitz);
        const LipschitzPartition p = kpr_partition(g, adj, 3, rng);
        const LipschitzAudit a = audit_lipschitz(g, p);
        CHECK(a.partition);
        CHECK(a.hard_violations == 0);
        CHECK(a.max_diameter_ratio <= 2.0 + 1e-9);
        within += a.within_delta;
        total += a.clusters;
        for (std::size_t c = 0; c < p.clusters.size(); ++c) {
            for (VertexId v : p.clusters[c]) CHECK(p.cluster_of[v] == c);
        }
    }
    CHECK(total > 0);
    CHECK(within > 0);
}

TEST_CASE("portal invariants on real instances") {
    for (const EmbeddedGraph& g : {torus_grid(6, 6), genus_sum(2, 5)}) {
        const PlanarPlan plan = prepare_planarization(g);
        const PlanarInstance& inst = plan.inst;
        const auto to_w = dijkstra(adjacency(inst.residue), inst.W);
        const Components comps = connected_components(inst.residue);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto parts = kpr_hierarchy(inst.residue, seed);
            const PortalAssignment pa = assign_portals(inst, parts);
            const int top = static_cast<int>(parts.size()) - 1;
            for (VertexId v = 0; v < inst.residue.vertex_count(); ++v) {
                if (inst.in_y(v)) {
                    CHECK(pa.portal_of[v] == kNone);
                    continue;
                }
                const VertexId p = pa.portal_of[v];
                REQUIRE(p != kNone);
                CHECK(inst.is_portal_vertex(p));
                CHECK(comps.of_vertex[p] == comps.of_vertex[v]);
                const int s = std::clamp(static_cast<int>(std::floor(std::log2(to_w[v]))) + 2, 0, top);
                CHECK(pa.scale_used[v] == s);
                const auto d = dijkstra(inst.residue, p);
                CHECK(d[v] <= std::ldexp(1.0, s + 1) + to_w[v] + 1e-9);
                CHECK(std::binary_search(pa.used.begin(), pa.used.end(), p));
                // Same cluster at the same scale means the same portal.
                for (VertexId u = 0; u < v; ++u) {
                    if (inst.in_y(u) || pa.scale_used[u] != s) continue;
                    if (parts[s].cluster_of[u] == parts[s].cluster_of[v]) CHECK(pa.portal_of[u] == p);
                }
            }
        }
    }
}

TEST_CASE("planarization output properties") {
    std::vector<EmbeddedGraph> graphs{torus_grid(3, 3), torus_grid(5, 5), genus_sum(2, 4), bouquet(1)};
    EmbeddedGraph weighted = torus_grid(4, 4);
    for (EdgeId e = 0; e < weighted.edge_count(); ++e) weighted.set_length(e, 0.5 + static_cast<double>(e % 5) * 0.7);
    graphs.push_back(weighted);
    for (const EmbeddedGraph& g : graphs) {
        const PlanarPlan plan = prepare_planarization(g);
        const auto fw = testsupport::floyd_warshall(g);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const PlanarizationSample s = sample_planarization(plan, seed);
            CHECK(validate_map(s.planar_out).empty());
            CHECK(is_connected(s.planar_out));
            CHECK(euler_genus(s.planar_out) == 0);
            const std::set<std::size_t> images(s.vmap.begin(), s.vmap.end());
            CHECK(images.size() == g.vertex_count());
            for (VertexId u = 0; u < g.vertex_count(); ++u) {
                CHECK(s.planar_out.vertex_name(s.vmap[u]) == g.vertex_name(u));
                const auto d = dijkstra(s.planar_out, s.vmap[u]);
                for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(d[s.vmap[v]] >= fw[u][v] * (1.0 - 1e-9));
            }
            for (const Edge& e : s.planar_out.edges()) CHECK(e.length > 0.0);
        }
    }
}

TEST_CASE("pieces keep their residue distances to the portal") {
    const EmbeddedGraph g = torus_grid(6, 6);
    const PlanarPlan plan = prepare_planarization(g);
    const PlanarizationSample s = sample_planarization(plan, 4);
    const PlanarInstance& inst = plan.inst;
    for (VertexId w : s.portals.used) {
        const auto dr = dijkstra(inst.residue, w);
        const std::size_t wo = s.tree.f[w];
        const auto dout = dijkstra(s.planar_out, wo);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (s.portals.portal_of[v] != w) continue;
            CHECK(dout[s.vmap[v]] <= dr[v] / plan.scale_factor + 1e-9);
        }
    }
}

TEST_CASE("planarization is a function of the seed") {
    const EmbeddedGraph g = genus_sum(2, 4);
    const PlanarizationSample a = planarize(g, 17);
    const PlanarizationSample b = planarize(g, 17);
    CHECK(a.planar_out == b.planar_out);
    CHECK(a.vmap == b.vmap);
    const PlanarizationSample c = planarize(g, 18);
    CHECK(c.provenance.seed == 18);
}

TEST_CASE("pipeline failures name their stage") {
    EmbeddedGraph two;
    two.add_vertex("a");
    two.add_vertex("b");
    try {
        planarize(two, 0);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == "validate");
        CHECK_FALSE(e.internal());
    }
    EmbeddedGraph bad = testsupport::square();
    bad.set_rotation(1, {Dart{1, 0}});
    try {
        prepare_planarization(bad);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == "validate");
    }
}

TEST_CASE("a unit boundary edge splits into two halves") {
    const EmbeddedGraph g = testsupport::path({1});
    const VertexId x[] = {0};
    const PlanarInstance inst = subdivide_boundary_edges(g, x, {});
    REQUIRE(inst.W.size() == 1);
    CHECK(inst.g2.edge(0).length == 0.5);
    CHECK(inst.g2.edge(*inst.g2.find_edge("e0~")).length == 0.5);
    CHECK(inst.g2.rotation(inst.W[0]).size() == 2);
}

TEST_CASE("no boundary edges when X is everything") {
    const EmbeddedGraph g = torus_grid(3, 3);
    std::vector<VertexId> all(g.vertex_count());
    for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
    const PlanarInstance inst = subdivide_boundary_edges(g, all, {});
    CHECK(inst.g2 == g);
    CHECK(inst.W.empty());
    CHECK(inst.Y == inst.X);
}

TEST_CASE("reserved characters in input names are rejected") {
    EmbeddedGraph g = torus_grid(3, 3);
    EmbeddedGraph renamed("bad");
    for (VertexId v = 0; v < g.vertex_count(); ++v) renamed.add_vertex(v == 0 ? "x~w" : g.vertex_name(v));
    for (const Edge& e : g.edges()) renamed.add_edge(e.name, e.u, e.v, e.length);
    for (VertexId v = 0; v < g.vertex_count(); ++v) renamed.set_rotation(v, {g.rotation(v).begin(), g.rotation(v).end()});
    CHECK_THROWS_AS(prepare_planarization(renamed), StageError);
    CHECK_THROWS_AS(prepare_paths(renamed, default_path_system(renamed, 1)), InputError);
}
