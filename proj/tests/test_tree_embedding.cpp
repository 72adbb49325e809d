#include <numeric>

#include "doctest.h"
#include "genusembed/errors.h"
#include "genusembed/generators.h"
#include "genusembed/tree_embedding.h"
#include "support.h"

using namespace genusembed;

namespace {

struct Trunk {
    std::vector<VertexId> vertices;
    std::vector<double> offsets;
    TrunkView view(std::size_t index = 0) const { return TrunkView{index, vertices, offsets}; }
};

Trunk unit_trunk(std::size_t n) {
    Trunk t;
    for (std::size_t a = 0; a < n; ++a) {
        t.vertices.push_back(a);
        t.offsets.push_back(static_cast<double>(a));
    }
    return t;
}

double tree_distance(const TreeBuilder& b, std::size_t x, std::size_t y) {
    EmbedTree t;
    std::vector<std::size_t> compact(b.node_count());
    for (std::size_t k = 0; k < b.node_count(); ++k) compact[k] = b.find(k);
    t.nodes.resize(b.node_count());
    for (const TreeEdge& e : b.edges()) t.edges.push_back(TreeEdge{compact[e.a], compact[e.b], e.length});
    return t.distances_from(compact[x])[compact[y]];
}

}  // namespace

TEST_CASE("identification keeps the copy node") {
    TreeBuilder b;
    const std::size_t s = b.add_node(NodeKind::stem, 0, 0);
    const std::size_t c = b.add_node(NodeKind::copy, 0, 1);
    b.identify(s, c);
    CHECK(b.find(s) == c);
    CHECK(b.find(c) == c);
    const std::size_t c2 = b.add_node(NodeKind::copy, 1, 2);
    CHECK_THROWS_AS(b.identify(c, c2), InternalError);
}

TEST_CASE("literal and nearest trunk ranges") {
    const Trunk t = unit_trunk(5);
    const auto r = literal_range(t.view(), 0.5, 3.0);
    REQUIRE(r.has_value());
    CHECK(r->first == 1);
    CHECK(r->second == 3);
    CHECK_FALSE(literal_range(t.view(), 1.2, 1.8).has_value());
    CHECK(nearest_trunk_index(t.view(), 1.2, 1.8) == 1);
    CHECK(nearest_trunk_index(t.view(), 1.5, 1.5) == 1);
    CHECK(nearest_trunk_index(t.view(), 9.0, 10.0) == 4);
}

TEST_CASE("base tree requires a trunk vertex") {
    TreeBuilder b;
    const Trunk t = unit_trunk(3);
    const ClusterTree ok = base_tree(b, 0, 2, t.view());
    CHECK(ok.stem.lo == 2);
    CHECK(ok.stem.hi == 2);
    CHECK(b.node(ok.root).kind == NodeKind::copy);
    CHECK_THROWS_AS(base_tree(b, 1, 7, t.view()), InternalError);
}

TEST_CASE("vertical composition glues band trees along the trunk") {
    TreeBuilder b;
    const Trunk t = unit_trunk(4);
    const ClusterTree kids[] = {base_tree(b, 0, 0, t.view()), base_tree(b, 1, 3, t.view())};
    const ClusterTree v = vertical_composition(b, kids, t.view(), 0.0, 3.0, 2);
    CHECK(v.stem.lo == 0);
    CHECK(v.stem.hi == 3);
    CHECK_FALSE(v.stem.synthetic);
    CHECK(v.root == kids[0].root);
    CHECK(v.stem.nodes.back() == kids[1].root);
    CHECK(b.node_count() == 4);
    CHECK(b.edges().size() == 3);
    CHECK(tree_distance(b, kids[0].root, kids[1].root) == 3.0);
    CHECK(tree_distance(b, v.stem.nodes[1], v.stem.nodes[2]) == 1.0);
}

TEST_CASE("vertical composition extends a stem beyond the literal range") {
    TreeBuilder b;
    const Trunk t = unit_trunk(5);
    const ClusterTree kids[] = {base_tree(b, 0, 4, t.view())};
    const ClusterTree v = vertical_composition(b, kids, t.view(), 1.0, 2.0, 1);
    CHECK(v.stem.lo == 1);
    CHECK(v.stem.hi == 4);
    CHECK(v.stem.synthetic);
}

TEST_CASE("overlapping real stems are rejected, synthetic ones are merged") {
    TreeBuilder b;
    const Trunk t = unit_trunk(4);
    const ClusterTree a = base_tree(b, 0, 1, t.view());
    const ClusterTree c = base_tree(b, 1, 3, t.view());
    const ClusterTree inner[] = {a, c};
    const ClusterTree real = vertical_composition(b, inner, t.view(), 1.0, 3.0, 2);
    const ClusterTree clash[] = {real, base_tree(b, 3, 2, t.view())};
    CHECK_THROWS_AS(vertical_composition(b, clash, t.view(), 1.0, 3.0, 4), InternalError);

    TreeBuilder b2;
    const ClusterTree x = base_tree(b2, 0, 2, t.view());
    const ClusterTree syn = synthetic_stem(b2, t.view(), 1.0, 3.0, 1);
    CHECK(syn.stem.synthetic);
    CHECK(syn.stem.nodes.size() == 3);
    const ClusterTree both[] = {x, syn};
    const ClusterTree v = vertical_composition(b2, both, t.view(), 1.0, 3.0, 2);
    CHECK(v.stem.nodes[1] == b2.find(x.root));
    CHECK(b2.node(v.stem.nodes[1]).kind == NodeKind::copy);
}

TEST_CASE("synthetic stem on an empty literal range") {
    TreeBuilder b;
    const Trunk t = unit_trunk(3);
    const ClusterTree s = synthetic_stem(b, t.view(), 1.3, 1.6, 0);
    CHECK(s.stem.lo == 1);
    CHECK(s.stem.hi == 1);
    CHECK(b.node(s.root).kind == NodeKind::stem);
}

TEST_CASE("horizontal composition is a star on the hub root") {
    TreeBuilder b;
    const Trunk t = unit_trunk(2);
    const ClusterTree kids[] = {base_tree(b, 0, 0, t.view()), base_tree(b, 1, 1, t.view(0)),
                                base_tree(b, 2, 0, t.view(1))};
    const ClusterTree h = horizontal_composition(b, kids, 1, 8.0);
    CHECK(h.root == kids[1].root);
    REQUIRE(b.edges().size() == 2);
    for (const TreeEdge& e : b.edges()) {
        CHECK(e.length == 8.0);
        CHECK((e.a == kids[1].root || e.b == kids[1].root));
    }
    CHECK(tree_distance(b, kids[0].root, kids[2].root) == 16.0);
}

TEST_CASE("a single path embeds isometrically") {
    const EmbeddedGraph g = path_star(1, 20);
    const VertexId r = *g.find_vertex("r");
    const PathSystem ps = tree_leaf_paths(g, r);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TreeSample s = sample_tree_embedding(g, ps, seed);
        const auto fw = testsupport::floyd_warshall(g);
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            const auto d = s.tree.distances_from(s.tree.f[u]);
            for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(approx_equal(d[s.tree.f[v]], fw[u][v]));
        }
    }
}

TEST_CASE("a single point embeds into one node") {
    const EmbeddedGraph g = testsupport::square();
    PathSystem ps;
    ps.root = 2;
    ps.paths = {{2}};
    ps.point_set = {2};
    const TreeSample s = sample_tree_embedding(g, ps, 4);
    CHECK(s.tree.nodes.size() == 1);
    CHECK(s.tree.edges.empty());
    CHECK(s.tree.f[2] == 0);
    CHECK(s.tree.f[0] == kNone);
}

TEST_CASE("tree invariants over seeds") {
    std::vector<std::pair<EmbeddedGraph, VertexId>> cases;
    for (const EmbeddedGraph& g : {torus_grid(3, 3), torus_grid(6, 6), genus_sum(2, 3)}) cases.emplace_back(g, default_root(g));
    const EmbeddedGraph star = path_star(3, 6);
    cases.emplace_back(star, *star.find_vertex("r"));
    EmbeddedGraph weighted = torus_grid(4, 5);
    for (EdgeId e = 0; e < weighted.edge_count(); ++e) weighted.set_length(e, 0.75 + static_cast<double>(e % 3));
    cases.emplace_back(weighted, 0);
    for (const auto& [g, r] : cases) {
        const PreparedPaths inst = prepare_paths(g, default_path_system(g, r));
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const TreeSample s = sample_tree(inst, seed);
            const TreeAudit a = audit_tree(s.tree, s.hierarchy, inst);
            CHECK(a.is_tree);
            CHECK(a.injective);
            CHECK(a.stem_fidelity);
            CHECK(a.lemma_violations == 0);
            CHECK(a.contraction_violations == 0);
            CHECK(a.min_stretch >= 1.0 - 1e-9);
            for (std::size_t id = 0; id < s.hierarchy.clusters.size(); ++id) {
                const Cluster& c = s.hierarchy.clusters[id];
                CHECK(s.tree.stems[id].trunk == c.trunk);
            }
            for (const TreeEdge& e : s.tree.edges) CHECK(e.length > 0.0);
        }
    }
}

TEST_CASE("fixed lambda is respected and a contracting tree is detected") {
    const EmbeddedGraph g = torus_grid(5, 5);
    const PreparedPaths inst = prepare_paths(g, default_path_system(g, 0));
    const TreeSample four = sample_tree(inst, 9, TreeOptions{4.0});
    CHECK(four.tree.lambda == 4.0);
    CHECK_FALSE(four.safe_mode);
    CHECK(count_contractions(four.tree, inst) == 0);
    const TreeSample tiny = sample_tree(inst, 9, TreeOptions{1e-3});
    CHECK(count_contractions(tiny.tree, inst) > 0);
}

TEST_CASE("every oracle grid point gives a non-contracting tree") {
    const EmbeddedGraph g = path_star(2, 3);
    const PreparedPaths inst = prepare_paths(g, tree_leaf_paths(g, *g.find_vertex("r")));
    for (const std::vector<std::size_t>& sigma : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
        for (int a = 0; a < 8; ++a) {
            for (int c = 0; c < 8; ++c) {
                RandomnessRecord rnd;
                rnd.alpha = (a + 0.5) / 8;
                rnd.beta = 1.0 + (c + 0.5) / 8;
                rnd.sigma = sigma;
                const PartitionHierarchy h = build_hierarchy(inst, rnd);
                EmbedTree t = build_tree(h, inst, 1.0);
                if (count_contractions(t, inst) > 0) t = build_tree(h, inst, kSafeLambda);
                CHECK(count_contractions(t, inst) == 0);
                CHECK(audit_tree(t, h, inst).is_tree);
            }
        }
    }
}

TEST_CASE("unscaled tree lengths") {
    EmbeddedGraph g = path_star(2, 3);
    for (EdgeId e = 0; e < g.edge_count(); ++e) g.set_length(e, 0.25);
    const PathSystem ps = tree_leaf_paths(g, *g.find_vertex("r"));
    const TreeSample s = sample_tree_embedding(g, ps, 1);
    CHECK(s.prepared.scale_factor == 4.0);
    const VertexId a = *g.find_vertex("a0_1");
    const VertexId b = *g.find_vertex("a0_3");
    CHECK(approx_equal(s.tree.distances_from(s.tree.f[a])[s.tree.f[b]], 0.5));
}

TEST_CASE("attachments hang leaves off embedded hosts") {
    const EmbeddedGraph g = path_star(2, 2);
    const PathSystem ps = tree_leaf_paths(g, *g.find_vertex("r"));
    const TreeSample s = sample_tree_embedding(g, ps, 0);
    const VertexId host = *g.find_vertex("a1_2");
    const Attachment at[] = {Attachment{10, host, 2.5}, Attachment{11, 10, 1.0}};
    const EmbedTree t = extend_to_attachments(s.tree, at);
    CHECK(t.nodes.size() == s.tree.nodes.size() + 2);
    CHECK(t.edges.size() == s.tree.edges.size() + 2);
    const auto d = t.distances_from(t.f[host]);
    CHECK(d[t.f[10]] == 2.5);
    CHECK(d[t.f[11]] == 3.5);

    const Attachment missing[] = {Attachment{12, 40, 1.0}};
    CHECK_THROWS_AS(extend_to_attachments(s.tree, missing), InputError);
    const Attachment zero[] = {Attachment{12, host, 0.0}};
    CHECK_THROWS_AS(extend_to_attachments(s.tree, zero), InputError);
    const Attachment again[] = {Attachment{host, host, 1.0}};
    CHECK_THROWS_AS(extend_to_attachments(s.tree, again), InputError);
}
