#include "genusembed/cut_graph.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "genusembed/errors.h"

namespace genusembed {

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

std::vector<VertexId> CutGraph::vertices(const EmbeddedGraph& g) const {
    std::set<VertexId> vs;
    for (EdgeId e : edges) {
        vs.insert(g.edge(e).u);
        vs.insert(g.edge(e).v);
    }
    return {vs.begin(), vs.end()};
}

DiskCertificate verify_disk_certificate(const EmbeddedGraph& g, std::span<const EdgeId> h) {
    return disk_certificate(g, h);
}

CutGraph greedy_system_of_loops(const EmbeddedGraph& g, VertexId r) {
    const int genus = euler_genus(g);
    if (genus == 0) throw InputError("nothing to cut: the map is planar");
    if (r >= g.vertex_count()) throw InputError("root is not a vertex of the graph");

    const ShortestPathTree tree = shortest_path_tree(g, r);
    std::vector<bool> is_tree(g.edge_count(), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (tree.parent_edge[v] != kNone) is_tree[tree.parent_edge[v]] = true;
    }

    const FaceSet faces = trace_faces(g);
    std::vector<std::size_t> face_of(g.dart_count());
    for (std::size_t f = 0; f < faces.faces.size(); ++f) {
        for (Dart d : faces.faces[f]) face_of[d.index()] = f;
    }

    auto loop_weight = [&](EdgeId e) {
        const Edge& ed = g.edge(e);
        return tree.dist[ed.u] + ed.length + tree.dist[ed.v];
    };
    std::vector<EdgeId> candidates;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!is_tree[e]) candidates.push_back(e);
    }
    // Maximum-weight dual spanning tree: the longest loops become cotree
    // edges, the 2g shortest survivors define the system of loops.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](EdgeId a, EdgeId b) { return loop_weight(a) > loop_weight(b); });
    DisjointSets dual(faces.faces.size());
    std::vector<EdgeId> leftover;
    for (EdgeId e : candidates) {
        if (!dual.unite(face_of[2 * e], face_of[2 * e + 1])) leftover.push_back(e);
    }
    check_internal(leftover.size() == static_cast<std::size_t>(2 * genus),
                   "tree-cotree decomposition left " + std::to_string(leftover.size()) + " edges, expected " +
                       std::to_string(2 * genus));

    CutGraph cg;
    cg.root = r;
    std::set<EdgeId> h;
    for (EdgeId e : leftover) {
        Loop loop;
        const Edge& ed = g.edge(e);
        loop.edge = e;
        loop.to_u = tree.path_to(ed.u);
        loop.from_v = tree.path_to(ed.v);
        std::reverse(loop.from_v.begin(), loop.from_v.end());
        loop.length = loop_weight(e);
        std::set<EdgeId> le{e};
        for (VertexId x : loop.to_u) {
            if (tree.parent_edge[x] != kNone) le.insert(tree.parent_edge[x]);
        }
        for (VertexId x : loop.from_v) {
            if (tree.parent_edge[x] != kNone) le.insert(tree.parent_edge[x]);
        }
        loop.edges.assign(le.begin(), le.end());
        h.insert(le.begin(), le.end());
        cg.loops.push_back(std::move(loop));
    }
    std::stable_sort(cg.loops.begin(), cg.loops.end(), [](const Loop& a, const Loop& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.edge < b.edge;
    });
    cg.edges.assign(h.begin(), h.end());
    cg.certificate = verify_disk_certificate(g, cg.edges);
    if (!cg.certificate.pass) {
        std::ostringstream msg;
        msg << "system of loops failed the disk certificate: V_H=" << cg.certificate.vertices
            << " E_H=" << cg.certificate.edges << " F_H=" << cg.certificate.faces
            << " connected=" << cg.certificate.connected << " genus=" << genus;
        throw InternalError(msg.str());
    }
    return cg;
}

bool is_prefix_shortest(const EmbeddedGraph& g, const std::vector<VertexId>& path,
                        const std::vector<double>& dist_from_root) {
    if (path.empty() || !approx_equal(dist_from_root[path.front()], 0.0)) return false;
    const Adjacency adj = adjacency(g);
    double acc = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        double best = kInfinity;
        for (const Arc& a : adj[path[i - 1]]) {
            if (a.to == path[i]) best = std::min(best, a.length);
        }
        if (best == kInfinity) return false;
        acc += best;
        if (!approx_equal(acc, dist_from_root[path[i]])) return false;
    }
    return true;
}

PathSystem decompose_into_paths(const CutGraph& c, const EmbeddedGraph& g, VertexId r) {
    check_internal(c.root == r, "path decomposition root differs from the cut-graph root");
    PathSystem ps;
    ps.root = r;
    std::set<std::vector<VertexId>> seen;
    auto add = [&](std::vector<VertexId> p) {
        if (seen.insert(p).second) ps.paths.push_back(std::move(p));
    };
    for (const Loop& loop : c.loops) {
        add(loop.to_u);
        add(std::vector<VertexId>(loop.from_v.rbegin(), loop.from_v.rend()));
    }
    const std::vector<double> dist = dijkstra(g, r);
    std::set<VertexId> points;
    for (const auto& p : ps.paths) {
        check_internal(is_prefix_shortest(g, p, dist), "decomposed path is not a shortest path");
        points.insert(p.begin(), p.end());
    }
    ps.point_set.assign(points.begin(), points.end());
    check_internal(ps.point_set == c.vertices(g), "path system does not cover the cut graph");
    return ps;
}

VertexId default_root(const EmbeddedGraph& g) {
    if (g.vertex_count() == 0) throw InputError("empty graph has no root");
    auto farthest = [](const std::vector<double>& d) {
        VertexId best = 0;
        for (VertexId v = 0; v < d.size(); ++v) {
            if (d[v] == kInfinity) throw InputError("graph is disconnected");
            if (d[v] > d[best]) best = v;
        }
        return best;
    };
    const VertexId a = farthest(dijkstra(g, 0));
    const ShortestPathTree ta = shortest_path_tree(g, a);
    const VertexId b = farthest(ta.dist);
    const double half = ta.dist[b] / 2.0;
    VertexId best = a;
    double best_gap = kInfinity;
    for (VertexId x : ta.path_to(b)) {
        const double gap = std::abs(ta.dist[x] - half);
        if (gap < best_gap || (gap == best_gap && x < best)) {
            best = x;
            best_gap = gap;
        }
    }
    return best;
}

PathSystem tree_leaf_paths(const EmbeddedGraph& g, VertexId r) {
    const ShortestPathTree t = shortest_path_tree(g, r);
    std::vector<bool> has_child(g.vertex_count(), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (t.parent[v] != kNone) has_child[t.parent[v]] = true;
    }
    PathSystem ps;
    ps.root = r;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!has_child[v] && v != r) ps.paths.push_back(t.path_to(v));
    }
    if (ps.paths.empty()) ps.paths.push_back({r});
    std::set<VertexId> pts;
    for (const auto& p : ps.paths) pts.insert(p.begin(), p.end());
    ps.point_set.assign(pts.begin(), pts.end());
    return ps;
}

PathSystem default_path_system(const EmbeddedGraph& g, VertexId r) {
    if (euler_genus(g) == 0) return tree_leaf_paths(g, r);
    return decompose_into_paths(greedy_system_of_loops(g, r), g, r);
}

}  // namespace genusembed
