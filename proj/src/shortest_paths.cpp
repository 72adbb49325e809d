#include "genusembed/shortest_paths.h"

#include <algorithm>
#include <queue>

#include "genusembed/errors.h"

namespace genusembed {

Adjacency adjacency(const EmbeddedGraph& g) {
    Adjacency adj(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) continue;
        adj[ed.u].push_back({ed.v, e, ed.length});
        adj[ed.v].push_back({ed.u, e, ed.length});
    }
    return adj;
}

std::vector<double> dijkstra(const Adjacency& adj, std::span<const VertexId> sources) {
    std::vector<double> dist(adj.size(), kInfinity);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (VertexId s : sources) {
        dist[s] = 0.0;
        pq.push({0.0, s});
    }
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x]) continue;
        for (const Arc& a : adj[x]) {
            const double nd = d + a.length;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                pq.push({nd, a.to});
            }
        }
    }
    return dist;
}

std::vector<double> dijkstra(const EmbeddedGraph& g, VertexId source) {
    const VertexId src[] = {source};
    return dijkstra(adjacency(g), src);
}

DistanceTable shortest_distances(const EmbeddedGraph& g, std::span<const VertexId> sources) {
    const Adjacency adj = adjacency(g);
    DistanceTable out;
    out.reserve(sources.size());
    for (VertexId s : sources) {
        const VertexId src[] = {s};
        out.push_back(dijkstra(adj, src));
    }
    return out;
}

std::vector<VertexId> ShortestPathTree::path_to(VertexId v) const {
    std::vector<VertexId> path;
    for (VertexId x = v; x != kNone; x = parent[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

ShortestPathTree shortest_path_tree(const EmbeddedGraph& g, VertexId root) {
    const Adjacency adj = adjacency(g);
    const VertexId src[] = {root};
    ShortestPathTree t;
    t.root = root;
    t.dist = dijkstra(adj, src);
    t.parent.assign(g.vertex_count(), kNone);
    t.parent_edge.assign(g.vertex_count(), kNone);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (t.dist[v] == kInfinity) throw InputError("graph is disconnected");
        if (v == root) continue;
        for (const Arc& a : adj[v]) {
            const VertexId u = a.to;
            if (!(t.dist[u] < t.dist[v]) || !approx_equal(t.dist[u] + a.length, t.dist[v])) continue;
            if (t.parent[v] == kNone || u < t.parent[v] || (u == t.parent[v] && a.edge < t.parent_edge[v])) {
                t.parent[v] = u;
                t.parent_edge[v] = a.edge;
            }
        }
        check_internal(t.parent[v] != kNone, "no shortest-path predecessor for " + g.vertex_name(v));
    }
    return t;
}

}  // namespace genusembed
