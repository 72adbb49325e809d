#include "genusembed/planarization.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "genusembed/errors.h"

namespace genusembed {

namespace {

// Dijkstra that stops past a radius and touches only the vertices it reaches.
class BoundedDijkstra {
public:
    explicit BoundedDijkstra(const Adjacency& adj) : adj_(adj), dist_(adj.size(), kInfinity) {}

    /// Distances from `sources` up to `limit`; `allowed` (if nonempty) restricts the vertices used.
    void run(std::span<const VertexId> sources, double limit, const std::vector<char>* allowed = nullptr) {
        for (VertexId v : touched_) dist_[v] = kInfinity;
        touched_.clear();
        using Item = std::pair<double, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (VertexId s : sources) {
            if (dist_[s] == 0.0) continue;
            dist_[s] = 0.0;
            touched_.push_back(s);
            pq.push({0.0, s});
        }
        while (!pq.empty()) {
            auto [d, x] = pq.top();
            pq.pop();
            if (d > dist_[x]) continue;
            for (const Arc& a : adj_[x]) {
                if (allowed && !(*allowed)[a.to]) continue;
                const double nd = d + a.length;
                if (nd < dist_[a.to] && approx_leq(nd, limit)) {
                    if (dist_[a.to] == kInfinity) touched_.push_back(a.to);
                    dist_[a.to] = nd;
                    pq.push({nd, a.to});
                }
            }
        }
    }

    double dist(VertexId v) const { return dist_[v]; }
    std::span<const VertexId> reached() const { return touched_; }

private:
    const Adjacency& adj_;
    std::vector<double> dist_;
    std::vector<VertexId> touched_;
};

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Connected pieces of `members` in the subgraph they induce.
std::vector<std::vector<VertexId>> induced_components(const Adjacency& adj, std::span<const VertexId> members,
                                                      std::vector<char>& mark) {
    for (VertexId v : members) mark[v] = 1;
    std::vector<std::vector<VertexId>> out;
    for (VertexId s : members) {
        if (mark[s] != 1) continue;
        std::vector<VertexId> comp{s};
        mark[s] = 2;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (const Arc& a : adj[comp[i]]) {
                if (mark[a.to] == 1) {
                    mark[a.to] = 2;
                    comp.push_back(a.to);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    for (VertexId v : members) mark[v] = 0;
    return out;
}

void sort_clusters(std::vector<std::vector<VertexId>>& clusters) {
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

template <typename F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const InputError& e) {
        throw StageError(stage, e.what(), false);
    } catch (const InternalError& e) {
        throw StageError(stage, e.what(), true);
    }
}

}  // namespace

PlanarInstance subdivide_boundary_edges(const EmbeddedGraph& g, std::span<const VertexId> x,
                                        std::span<const EdgeId> cut) {
    PlanarInstance inst;
    std::vector<char> in_x(g.vertex_count(), 0);
    for (VertexId v : x) in_x[v] = 1;
    auto boundary = [&](const Edge& e) { return !e.is_loop() && in_x[e.u] != in_x[e.v]; };

    EmbeddedGraph& g2 = inst.g2;
    g2 = EmbeddedGraph(g.name());
    for (VertexId v = 0; v < g.vertex_count(); ++v) g2.add_vertex(g.vertex_name(v));
    std::vector<VertexId> mid(g.edge_count(), kNone);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!boundary(ed)) continue;
        check_internal(ed.length > 0.5 + kRelTol, "boundary edge " + ed.name + " is not longer than 1/2");
        mid[e] = g2.add_vertex(ed.name + "~w");
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (mid[e] == kNone) {
            g2.add_edge(ed.name, ed.u, ed.v, ed.length);
        } else if (in_x[ed.u]) {
            g2.add_edge(ed.name, ed.u, mid[e], 0.5);
        } else {
            g2.add_edge(ed.name, mid[e], ed.v, 0.5);
        }
    }
    std::vector<EdgeId> outer_half(g.edge_count(), kNone);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (mid[e] == kNone) continue;
        const Edge& ed = g.edge(e);
        outer_half[e] = in_x[ed.u] ? g2.add_edge(ed.name + "~", mid[e], ed.v, ed.length - 0.5)
                                   : g2.add_edge(ed.name + "~", ed.u, mid[e], ed.length - 0.5);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<Dart> rot;
        for (Dart d : g.rotation(v)) {
            const bool moved = mid[d.edge] != kNone && !in_x[v];
            rot.push_back(moved ? Dart{outer_half[d.edge], d.end} : d);
        }
        g2.set_rotation(v, std::move(rot));
    }
    inst.host_of.assign(g2.vertex_count(), HostLink{});
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (mid[e] == kNone) continue;
        const Edge& ed = g.edge(e);
        const bool x_is_u = in_x[ed.u] != 0;
        g2.set_rotation(mid[e], {Dart{e, static_cast<std::uint8_t>(x_is_u ? 1 : 0)},
                                 Dart{outer_half[e], static_cast<std::uint8_t>(x_is_u ? 0 : 1)}});
        inst.host_of[mid[e]] = HostLink{x_is_u ? ed.u : ed.v, x_is_u ? ed.v : ed.u};
        inst.W.push_back(mid[e]);
    }
    inst.cut.assign(cut.begin(), cut.end());
    std::sort(inst.cut.begin(), inst.cut.end());
    inst.X = sorted_unique(std::vector<VertexId>(x.begin(), x.end()));
    inst.Y = inst.X;
    inst.Y.insert(inst.Y.end(), inst.W.begin(), inst.W.end());
    std::sort(inst.Y.begin(), inst.Y.end());
    inst.y_index.assign(g2.vertex_count(), kNone);
    for (std::size_t i = 0; i < inst.Y.size(); ++i) inst.y_index[inst.Y[i]] = i;
    return inst;
}

double dilation(const Adjacency& adj, std::span<const VertexId> a) {
    std::vector<char> keep(adj.size(), 0);
    for (VertexId v : a) keep[v] = 1;
    Adjacency sub(adj.size());
    for (VertexId v : a) {
        for (const Arc& arc : adj[v]) {
            if (keep[arc.to]) sub[v].push_back(arc);
        }
    }
    double worst = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const VertexId src[] = {a[i]};
        const auto full = dijkstra(adj, src);
        const auto induced = dijkstra(sub, src);
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (a[j] == a[i]) continue;
            if (induced[a[j]] == kInfinity) return kInfinity;
            worst = std::max(worst, induced[a[j]] / full[a[j]]);
        }
    }
    return worst;
}

double dilation(const EmbeddedGraph& g, std::span<const VertexId> a) { return dilation(adjacency(g), a); }

void build_clique_and_residue(PlanarInstance& inst) {
    const EmbeddedGraph& g2 = inst.g2;
    const DistanceTable rows = shortest_distances(g2, inst.Y);
    inst.clique.assign(inst.Y.size(), std::vector<double>(inst.Y.size()));
    for (std::size_t i = 0; i < inst.Y.size(); ++i) {
        for (std::size_t j = 0; j < inst.Y.size(); ++j) inst.clique[i][j] = rows[i][inst.Y[j]];
    }

    // G_3 = g2 plus the clique on Y; Y must be isometric in it.
    Adjacency g3 = adjacency(g2);
    for (std::size_t i = 0; i < inst.Y.size(); ++i) {
        for (std::size_t j = 0; j < inst.Y.size(); ++j) {
            if (i != j) g3[inst.Y[i]].push_back(Arc{inst.Y[j], kNone, inst.clique[i][j]});
        }
    }
    inst.y_dilation = dilation(g3, inst.Y);

    const CutMap cm = cut_along(g2, inst.cut);
    std::vector<EdgeId> residue_id(g2.edge_count(), kNone);
    EmbeddedGraph& res = inst.residue;
    res = EmbeddedGraph(g2.name() + "-residue");
    for (VertexId v = 0; v < g2.vertex_count(); ++v) res.add_vertex(g2.vertex_name(v));
    for (EdgeId e = 0; e < g2.edge_count(); ++e) {
        const Edge& ed = g2.edge(e);
        if (inst.in_y(ed.u) && inst.in_y(ed.v)) continue;
        const bool touches_x = std::binary_search(inst.X.begin(), inst.X.end(), ed.u) ||
                               std::binary_search(inst.X.begin(), inst.X.end(), ed.v);
        check_internal(!touches_x, "edge " + ed.name + " joins X to the outside of Y");
        residue_id[e] = res.add_edge(ed.name, ed.u, ed.v, ed.length);
        inst.residue_edge_origin.push_back(e);
    }
    std::vector<char> rotated(g2.vertex_count(), 0);
    for (VertexId c = 0; c < cm.graph.vertex_count(); ++c) {
        const VertexId v = cm.vertex_origin[c];
        if (inst.in_y(v) && !inst.is_portal_vertex(v)) continue;
        check_internal(!rotated[v], "vertex " + g2.vertex_name(v) + " outside the cut was split");
        rotated[v] = 1;
        std::vector<Dart> rot;
        for (Dart d : cm.graph.rotation(c)) {
            const EdgeId e = residue_id[cm.edge_origin[d.edge]];
            if (e != kNone) rot.push_back(Dart{e, d.end});
        }
        res.set_rotation(v, std::move(rot));
    }
    require_valid_map(res);
}

int kpr_top_scale(const EmbeddedGraph& residue) {
    const Adjacency adj = adjacency(residue);
    const Components comps = connected_components(residue);
    std::vector<char> seen(comps.count, 0);
    double bound = 1.0;
    for (VertexId v = 0; v < residue.vertex_count(); ++v) {
        if (seen[comps.of_vertex[v]]) continue;
        seen[comps.of_vertex[v]] = 1;
        const VertexId src[] = {v};
        const auto d = dijkstra(adj, src);
        double ecc = 0.0;
        for (double x : d) {
            if (x != kInfinity) ecc = std::max(ecc, x);
        }
        bound = std::max(bound, 2.0 * ecc);
    }
    return static_cast<int>(std::ceil(std::log2(bound) - kRelTol)) + 2;
}

LipschitzPartition kpr_partition(const EmbeddedGraph& residue, const Adjacency& adj, int scale, Rng& rng) {
    LipschitzPartition p;
    p.scale = scale;
    p.delta = std::ldexp(1.0, scale);
    const double width = p.delta / 6.0;
    const std::size_t n = residue.vertex_count();
    std::vector<char> mark(n, 0);

    std::vector<VertexId> all(n);
    for (VertexId v = 0; v < n; ++v) all[v] = v;
    std::vector<std::vector<VertexId>> clusters = induced_components(adj, all, mark);
    sort_clusters(clusters);

    BoundedDijkstra bd(adj);
    std::vector<char> allowed(n, 0);
    for (int round = 0; round < kKprRounds; ++round) {
        std::vector<std::vector<VertexId>> next;
        for (const auto& c : clusters) {
            const double u = rng.uniform01();
            p.offsets.push_back(u * width);
            for (VertexId v : c) allowed[v] = 1;
            const VertexId root[] = {c.front()};
            bd.run(root, kInfinity, &allowed);
            std::map<long long, std::vector<VertexId>> bands;
            for (VertexId v : c) bands[static_cast<long long>(std::floor(bd.dist(v) / width + u))].push_back(v);
            for (VertexId v : c) allowed[v] = 0;
            for (auto& [j, members] : bands) {
                for (auto& piece : induced_components(adj, members, mark)) next.push_back(std::move(piece));
            }
        }
        sort_clusters(next);
        clusters = std::move(next);
    }

    // Repair: ball carving on clusters whose weak diameter may exceed 2 delta.
    std::vector<std::vector<VertexId>> out;
    std::vector<char> member(n, 0);
    for (auto& c : clusters) {
        const VertexId first[] = {c.front()};
        bd.run(first, p.delta);
        bool small = std::all_of(c.begin(), c.end(), [&](VertexId v) { return bd.dist(v) != kInfinity; });
        if (!small) {
            small = true;
            for (VertexId s : c) {
                const VertexId src[] = {s};
                bd.run(src, 2.0 * p.delta);
                if (!std::all_of(c.begin(), c.end(), [&](VertexId v) { return bd.dist(v) != kInfinity; })) {
                    small = false;
                    break;
                }
            }
        }
        if (small) {
            out.push_back(std::move(c));
            continue;
        }
        ++p.carved;
        for (VertexId v : c) member[v] = 1;
        for (VertexId s : c) {
            if (!member[s]) continue;
            const VertexId src[] = {s};
            bd.run(src, p.delta / 4.0);
            std::vector<VertexId> ball;
            for (VertexId v : bd.reached()) {
                if (member[v]) {
                    ball.push_back(v);
                    member[v] = 0;
                }
            }
            std::sort(ball.begin(), ball.end());
            out.push_back(std::move(ball));
        }
    }
    sort_clusters(out);
    p.clusters = std::move(out);
    p.cluster_of.assign(n, kNone);
    for (std::size_t c = 0; c < p.clusters.size(); ++c) {
        for (VertexId v : p.clusters[c]) p.cluster_of[v] = c;
    }
    return p;
}

std::vector<LipschitzPartition> kpr_hierarchy(const EmbeddedGraph& residue, std::uint64_t seed) {
    const Adjacency adj = adjacency(residue);
    Rng rng = Rng::stream(seed, Stream::lipschitz);
    std::vector<LipschitzPartition> out;
    const int top = kpr_top_scale(residue);
    for (int i = 0; i <= top; ++i) out.push_back(kpr_partition(residue, adj, i, rng));
    return out;
}

LipschitzAudit audit_lipschitz(const EmbeddedGraph& residue, const LipschitzPartition& p) {
    LipschitzAudit a;
    const std::size_t n = residue.vertex_count();
    std::vector<std::size_t> seen(n, 0);
    for (const auto& c : p.clusters) {
        for (VertexId v : c) ++seen[v];
    }
    a.partition = std::all_of(seen.begin(), seen.end(), [](std::size_t k) { return k == 1; });
    const Adjacency adj = adjacency(residue);
    for (const auto& c : p.clusters) {
        double diam = 0.0;
        for (VertexId s : c) {
            const VertexId src[] = {s};
            const auto d = dijkstra(adj, src);
            for (VertexId v : c) diam = std::max(diam, d[v]);
        }
        ++a.clusters;
        if (!approx_leq(diam, 2.0 * p.delta)) ++a.hard_violations;
        if (approx_leq(diam, p.delta)) ++a.within_delta;
        a.max_diameter_ratio = std::max(a.max_diameter_ratio, diam / p.delta);
    }
    return a;
}

std::vector<double> estimate_lipschitz(const EmbeddedGraph& residue, std::size_t seeds, std::uint64_t first_seed) {
    const int top = kpr_top_scale(residue);
    std::vector<std::vector<std::size_t>> split(top + 1, std::vector<std::size_t>(residue.edge_count(), 0));
    for (std::size_t s = 0; s < seeds; ++s) {
        const auto parts = kpr_hierarchy(residue, first_seed + s);
        for (int i = 0; i <= top; ++i) {
            for (EdgeId e = 0; e < residue.edge_count(); ++e) {
                const Edge& ed = residue.edge(e);
                if (parts[i].cluster_of[ed.u] != parts[i].cluster_of[ed.v]) ++split[i][e];
            }
        }
    }
    std::vector<double> beta(top + 1, 0.0);
    for (int i = 0; i <= top; ++i) {
        for (EdgeId e = 0; e < residue.edge_count(); ++e) {
            const Edge& ed = residue.edge(e);
            if (ed.is_loop() || seeds == 0) continue;
            const double freq = static_cast<double>(split[i][e]) / static_cast<double>(seeds);
            beta[i] = std::max(beta[i], freq * std::ldexp(1.0, i) / ed.length);
        }
    }
    return beta;
}

PortalAssignment assign_portals(const PlanarInstance& inst, std::span<const LipschitzPartition> parts) {
    const EmbeddedGraph& res = inst.residue;
    const std::size_t n = res.vertex_count();
    const Adjacency adj = adjacency(res);
    PortalAssignment pa;
    pa.portal_of.assign(n, kNone);
    pa.scale_used.assign(n, -1);
    const auto to_w = dijkstra(adj, inst.W);
    std::map<std::pair<int, std::size_t>, VertexId> chosen;
    std::map<VertexId, std::vector<double>> from_portal;
    const int top = static_cast<int>(parts.size()) - 1;
    for (VertexId v = 0; v < n; ++v) {
        if (inst.in_y(v)) continue;
        if (to_w[v] == kInfinity) throw InputError("dangling residue component at " + res.vertex_name(v));
        const int s = std::clamp(static_cast<int>(std::floor(std::log2(to_w[v]))) + 2, 0, top);
        const LipschitzPartition& p = parts[s];
        const std::size_t c = p.cluster_of[v];
        auto [it, fresh] = chosen.try_emplace({s, c}, kNone);
        if (fresh) {
            const auto d = dijkstra(adj, p.clusters[c]);
            VertexId best = kNone;
            for (VertexId w : inst.W) {
                if (d[w] == kInfinity) continue;
                if (best == kNone || (d[w] < d[best] && !approx_equal(d[w], d[best]))) best = w;
            }
            check_internal(best != kNone, "cluster without a reachable portal");
            it->second = best;
        }
        const VertexId w = it->second;
        pa.portal_of[v] = w;
        pa.scale_used[v] = s;
        auto [pit, pfresh] = from_portal.try_emplace(w);
        if (pfresh) {
            const VertexId src[] = {w};
            pit->second = dijkstra(adj, src);
        }
        check_internal(approx_leq(pit->second[v], std::ldexp(1.0, s + 1) + to_w[v]),
                       "portal of " + res.vertex_name(v) + " is too far");
    }
    for (const auto& [w, d] : from_portal) pa.used.push_back(w);
    return pa;
}

Assembled assemble_one_sum(const EmbedTree& tree, const PlanarInstance& inst, const PortalAssignment& portals) {
    const EmbeddedGraph& res = inst.residue;
    const EmbeddedGraph& g2 = inst.g2;
    Assembled out;
    EmbeddedGraph& og = out.graph;
    og = EmbeddedGraph(g2.name() + "-planar");
    out.vmap.assign(g2.vertex_count(), kNone);

    for (VertexId y : inst.Y) {
        check_internal(y < tree.f.size() && tree.f[y] != kNone, "tree misses " + g2.vertex_name(y));
    }
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
        const TreeNode& node = tree.nodes[k];
        const bool image = node.kind == NodeKind::copy && node.source < tree.f.size() && tree.f[node.source] == k;
        og.add_vertex(image ? g2.vertex_name(node.source) : "~" + std::to_string(k));
    }
    for (VertexId y : inst.Y) out.vmap[y] = tree.f[y];
    std::vector<std::vector<std::pair<std::size_t, Dart>>> tree_darts(tree.nodes.size());
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        const TreeEdge& e = tree.edges[i];
        const EdgeId id = og.add_edge("~t" + std::to_string(i), e.a, e.b, e.length);
        tree_darts[e.a].push_back({e.b, Dart{id, 0}});
        tree_darts[e.b].push_back({e.a, Dart{id, 1}});
    }
    std::vector<std::vector<Dart>> rot(tree.nodes.size());
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
        std::sort(tree_darts[k].begin(), tree_darts[k].end());
        for (const auto& [other, d] : tree_darts[k]) rot[k].push_back(d);
    }

    for (VertexId w : portals.used) {
        check_internal(inst.is_portal_vertex(w), "portal outside W");
        // Piece: w's residue component without the other portal vertices.
        std::vector<std::size_t> copy(res.vertex_count(), kNone);
        std::vector<VertexId> piece{w};
        copy[w] = tree.f[w];
        for (std::size_t i = 0; i < piece.size(); ++i) {
            for (Dart d : res.rotation(piece[i])) {
                const VertexId x = res.head(d);
                if (copy[x] != kNone || inst.in_y(x)) continue;
                const bool own = portals.portal_of[x] == w;
                copy[x] = og.add_vertex(own ? res.vertex_name(x) : res.vertex_name(x) + "^" + res.vertex_name(w));
                rot.emplace_back();
                if (own) out.vmap[x] = copy[x];
                piece.push_back(x);
            }
        }
        std::vector<EdgeId> copy_edge(res.edge_count(), kNone);
        for (VertexId v : piece) {
            for (Dart d : res.rotation(v)) {
                const Edge& ed = res.edge(d.edge);
                if (copy_edge[d.edge] != kNone || copy[ed.u] == kNone || copy[ed.v] == kNone) continue;
                copy_edge[d.edge] = og.add_edge(ed.name + "^" + res.vertex_name(w), copy[ed.u], copy[ed.v], ed.length);
            }
        }
        for (VertexId v : piece) {
            for (Dart d : res.rotation(v)) {
                if (copy_edge[d.edge] != kNone) rot[copy[v]].push_back(Dart{copy_edge[d.edge], d.end});
            }
        }
    }
    for (VertexId v = 0; v < og.vertex_count(); ++v) og.set_rotation(v, std::move(rot[v]));
    for (VertexId v = 0; v < g2.vertex_count(); ++v) {
        check_internal(out.vmap[v] != kNone, "vertex " + g2.vertex_name(v) + " has no image");
    }
    return out;
}

PlanarPlan prepare_planarization(const EmbeddedGraph& g) {
    PlanarPlan plan;
    plan.input = g;
    in_stage("validate", [&] {
        require_valid_map(g);
        require_plain_identifiers(g);
        if (!is_connected(g)) throw InputError("graph is not connected");
        plan.genus = euler_genus(g);
    });
    if (plan.genus == 0) return plan;

    const Rescaled rs = in_stage("rescale", [&] { return rescale_min_distance(g); });
    plan.scale_factor = rs.scale_factor;
    const EmbeddedGraph& g1 = rs.graph;
    in_stage("cut_graph", [&] {
        const VertexId root = default_root(g1);
        plan.cut = greedy_system_of_loops(g1, root);
        plan.paths = decompose_into_paths(plan.cut, g1, root);
    });
    Subdivided sd = in_stage("subdivide", [&] {
        Subdivided s = subdivide_long_path_edges(g1, plan.paths);
        plan.tree_inst.metric = PathMetric::compute(s.graph, s.paths);
        plan.tree_inst.graph = s.graph;
        plan.tree_inst.paths = s.paths;
        plan.tree_inst.scale_factor = 1.0;
        plan.tree_inst.original_vertex_count = s.original_vertex_count;
        return s;
    });
    in_stage("boundary", [&] {
        std::vector<EdgeId> cut;
        for (EdgeId e : plan.cut.edges) cut.insert(cut.end(), sd.chain[e].begin(), sd.chain[e].end());
        std::set<VertexId> xs;
        for (EdgeId e : cut) {
            xs.insert(sd.graph.edge(e).u);
            xs.insert(sd.graph.edge(e).v);
        }
        const std::vector<VertexId> x(xs.begin(), xs.end());
        check_internal(x == sd.paths.point_set, "cut graph vertices differ from the path points");
        plan.inst = subdivide_boundary_edges(sd.graph, x, cut);
        for (VertexId w : plan.inst.W) plan.attachments.push_back(Attachment{w, plan.inst.host_of[w].x, 0.5});
    });
    in_stage("residue", [&] {
        build_clique_and_residue(plan.inst);
        plan.residue_genera = component_genera(plan.inst.residue);
        for (int gen : plan.residue_genera) check_internal(gen == 0, "residue component of genus " + std::to_string(gen));
        check_internal(plan.inst.y_dilation == 1.0, "Y is not isometric in G_3");
    });
    return plan;
}

PlanarizationSample sample_planarization(const PlanarPlan& plan, std::uint64_t seed, const PlanarOptions& opt) {
    PlanarizationSample s;
    s.provenance.seed = seed;
    s.provenance.genus = plan.genus;
    s.provenance.scale_factor = plan.scale_factor;
    if (plan.genus == 0) {
        s.planar_out = plan.input;
        s.vmap.resize(plan.input.vertex_count());
        for (VertexId v = 0; v < s.vmap.size(); ++v) s.vmap[v] = v;
        return s;
    }
    in_stage("tree", [&] {
        TreeSample ts = sample_tree(plan.tree_inst, seed, TreeOptions{opt.lambda});
        s.provenance.lambda = ts.tree.lambda;
        s.provenance.safe_mode = ts.safe_mode;
        s.provenance.empty_trunk_fallbacks = ts.tree.empty_trunk_fallbacks;
        s.tree = extend_to_attachments(std::move(ts.tree), plan.attachments);
        s.provenance.tree_nodes = s.tree.nodes.size();
    });
    in_stage("kpr", [&] {
        s.partitions = kpr_hierarchy(plan.inst.residue, seed);
        s.provenance.top_scale = static_cast<int>(s.partitions.size()) - 1;
        for (const auto& p : s.partitions) s.provenance.ball_carves += p.carved;
    });
    in_stage("portals", [&] {
        s.portals = assign_portals(plan.inst, s.partitions);
        s.provenance.portals_used = s.portals.used.size();
    });
    in_stage("assemble", [&] {
        Assembled a = assemble_one_sum(s.tree, plan.inst, s.portals);
        check_internal(is_connected(a.graph), "assembled graph is not connected");
        check_internal(euler_genus(a.graph) == 0, "assembled graph is not planar");
        for (EdgeId e = 0; e < a.graph.edge_count(); ++e) {
            a.graph.set_length(e, a.graph.edge(e).length / plan.scale_factor);
        }
        s.planar_out = std::move(a.graph);
        s.vmap.assign(a.vmap.begin(), a.vmap.begin() + static_cast<std::ptrdiff_t>(plan.input.vertex_count()));
        std::vector<std::size_t> seen = s.vmap;
        std::sort(seen.begin(), seen.end());
        check_internal(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "vertex map is not injective");
    });
    return s;
}

PlanarizationSample planarize(const EmbeddedGraph& g, std::uint64_t seed, const PlanarOptions& opt) {
    return sample_planarization(prepare_planarization(g), seed, opt);
}

}  // namespace genusembed
