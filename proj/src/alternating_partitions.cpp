#include "genusembed/alternating_partitions.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "genusembed/errors.h"
#include "genusembed/rng.h"

namespace genusembed {

RandomnessRecord draw_randomness(std::uint64_t seed, std::size_t path_count) {
    Rng rng = Rng::stream(seed, Stream::partitions);
    RandomnessRecord r;
    r.seed = seed;
    r.alpha = rng.uniform01();
    // 52 fractional bits so that 1 + u stays exact.
    r.beta = 1.0 + static_cast<double>(rng.next() >> 12) * 0x1.0p-52;
    r.sigma = rng.permutation(path_count);
    return r;
}

Rescaled rescale_min_distance(const EmbeddedGraph& g) {
    double min_len = kInfinity;
    for (const Edge& e : g.edges()) {
        if (!e.is_loop()) min_len = std::min(min_len, e.length);
    }
    Rescaled out{g, 1.0};
    if (min_len == kInfinity || g.vertex_count() < 2) return out;
    out.scale_factor = 1.0 / min_len;
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.graph.set_length(e, g.edge(e).length / min_len);
    return out;
}

Subdivided subdivide_long_path_edges(const EmbeddedGraph& g, const PathSystem& ps) {
    Subdivided out;
    out.graph = g;
    out.original_vertex_count = g.vertex_count();
    out.chain.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.chain[e] = {e};
    // chain_vertices[e]: interior vertices of the chain, in u -> v order.
    std::map<EdgeId, std::vector<VertexId>> chain_vertices;

    auto path_edge = [&](VertexId a, VertexId b) {
        EdgeId best = kNone;
        for (Dart d : g.rotation(a)) {
            const Edge& ed = g.edge(d.edge);
            if (ed.other(a) != b || ed.is_loop()) continue;
            if (best == kNone || ed.length < g.edge(best).length) best = d.edge;
        }
        check_internal(best != kNone, "consecutive path vertices are not adjacent");
        return best;
    };

    auto split = [&](EdgeId e) -> const std::vector<VertexId>& {
        auto it = chain_vertices.find(e);
        if (it != chain_vertices.end()) return it->second;
        std::vector<VertexId> interior;
        const Edge ed = g.edge(e);
        if (ed.length > 1.0 + kRelTol) {
            const auto pieces = static_cast<std::size_t>(std::ceil(ed.length - kRelTol));
            const double seg = ed.length / static_cast<double>(pieces);
            EmbeddedGraph& h = out.graph;
            for (std::size_t k = 1; k < pieces; ++k) interior.push_back(h.add_vertex(ed.name + ":" + std::to_string(k)));
            h.set_length(e, seg);
            std::vector<EdgeId> chain{e};
            // Re-point e to end at the first interior vertex.
            EmbeddedGraph rebuilt(h.name());
            for (VertexId v = 0; v < h.vertex_count(); ++v) rebuilt.add_vertex(h.vertex_name(v));
            for (EdgeId x = 0; x < h.edge_count(); ++x) {
                const Edge& hx = h.edge(x);
                rebuilt.add_edge(hx.name, hx.u, x == e ? interior.front() : hx.v, hx.length);
            }
            for (std::size_t k = 0; k + 1 < pieces; ++k) {
                const VertexId from = interior[k];
                const VertexId to = k + 2 < pieces ? interior[k + 1] : ed.v;
                chain.push_back(rebuilt.add_edge(ed.name + ":" + std::to_string(k + 1), from, to, seg));
            }
            for (VertexId v = 0; v < h.vertex_count(); ++v) {
                std::vector<Dart> rot(h.rotation(v).begin(), h.rotation(v).end());
                if (v == ed.v) {
                    for (Dart& d : rot) {
                        if (d == Dart{e, 1}) d = Dart{chain.back(), 1};
                    }
                }
                rebuilt.set_rotation(v, std::move(rot));
            }
            for (std::size_t k = 0; k < interior.size(); ++k) {
                rebuilt.set_rotation(interior[k], {Dart{chain[k], 1}, Dart{chain[k + 1], 0}});
            }
            h = std::move(rebuilt);
            out.chain[e] = chain;
        }
        return chain_vertices.emplace(e, std::move(interior)).first->second;
    };

    out.paths.root = ps.root;
    std::set<VertexId> points;
    for (const auto& p : ps.paths) {
        std::vector<VertexId> np;
        if (!p.empty()) np.push_back(p.front());
        for (std::size_t i = 1; i < p.size(); ++i) {
            const EdgeId e = path_edge(p[i - 1], p[i]);
            const std::vector<VertexId> interior = split(e);
            if (g.edge(e).u == p[i - 1]) {
                np.insert(np.end(), interior.begin(), interior.end());
            } else {
                np.insert(np.end(), interior.rbegin(), interior.rend());
            }
            np.push_back(p[i]);
        }
        points.insert(np.begin(), np.end());
        out.paths.paths.push_back(std::move(np));
    }
    out.paths.point_set.assign(points.begin(), points.end());
    return out;
}

PathMetric PathMetric::compute(const EmbeddedGraph& g, const PathSystem& ps) {
    PathMetric m;
    const Adjacency adj = adjacency(g);
    const VertexId root[] = {ps.root};
    m.from_root = dijkstra(adj, root);
    for (const auto& p : ps.paths) {
        m.to_path.push_back(dijkstra(adj, p));
        std::vector<std::size_t> pos(g.vertex_count(), kNone);
        std::vector<double> off;
        for (std::size_t a = 0; a < p.size(); ++a) {
            pos[p[a]] = a;
            off.push_back(m.from_root[p[a]]);
        }
        m.position.push_back(std::move(pos));
        m.offsets.push_back(std::move(off));
    }
    m.x_index.assign(g.vertex_count(), kNone);
    for (std::size_t i = 0; i < ps.point_set.size(); ++i) m.x_index[ps.point_set[i]] = i;
    for (VertexId x : ps.point_set) {
        const VertexId src[] = {x};
        const auto d = dijkstra(adj, src);
        std::vector<double> row;
        row.reserve(ps.point_set.size());
        for (VertexId y : ps.point_set) {
            row.push_back(d[y]);
            m.diameter = std::max(m.diameter, d[y]);
        }
        m.x_dist.push_back(std::move(row));
    }
    return m;
}

PreparedPaths prepare_paths(const EmbeddedGraph& g, const PathSystem& ps) {
    require_plain_identifiers(g);
    const Rescaled rs = rescale_min_distance(g);
    Subdivided sd = subdivide_long_path_edges(rs.graph, ps);
    PreparedPaths out;
    out.metric = PathMetric::compute(sd.graph, sd.paths);
    out.graph = std::move(sd.graph);
    out.paths = std::move(sd.paths);
    out.scale_factor = rs.scale_factor;
    out.original_vertex_count = sd.original_vertex_count;
    return out;
}

double horizontal_radius(int level, double beta) { return std::ldexp(beta, level - 2); }
double band_width(int level) { return std::ldexp(1.0, level - 2); }

long long band_index(double dist_from_root, int level, double alpha) {
    const double scaled = dist_from_root / band_width(level);
    double t = scaled - alpha;
    const double nearest = std::round(t);
    if (std::abs(t - nearest) <= kRelTol * std::max(1.0, std::abs(scaled))) t = nearest;
    return static_cast<long long>(std::floor(t)) + 1;
}

std::vector<HorizontalChild> horizontal_step(std::span<const VertexId> members, int level, double beta,
                                             std::span<const std::size_t> sigma, const PathMetric& metric) {
    const double radius = horizontal_radius(level, beta);
    std::vector<bool> taken(members.size(), false);
    std::size_t remaining = members.size();
    std::vector<HorizontalChild> out;
    for (std::size_t path : sigma) {
        if (remaining == 0) break;
        HorizontalChild child;
        child.trunk = path;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (taken[i] || !approx_leq(metric.to_path[path][members[i]], radius)) continue;
            taken[i] = true;
            --remaining;
            child.members.push_back(members[i]);
        }
        if (child.members.empty()) continue;
        child.top = kInfinity;
        child.bottom = -kInfinity;
        for (VertexId v : child.members) {
            child.top = std::min(child.top, metric.from_root[v]);
            child.bottom = std::max(child.bottom, metric.from_root[v]);
        }
        out.push_back(std::move(child));
    }
    check_internal(remaining == 0, "horizontal step left a point uncovered by every path");
    return out;
}

std::vector<Band> vertical_step(std::span<const VertexId> members, int level, double alpha,
                                std::span<const double> from_root) {
    std::map<long long, std::vector<VertexId>> bands;
    for (VertexId v : members) bands[band_index(from_root[v], level, alpha)].push_back(v);
    std::vector<Band> out;
    for (auto& [j, vs] : bands) {
        std::sort(vs.begin(), vs.end());
        out.push_back(Band{j, std::move(vs)});
    }
    return out;
}

PartitionHierarchy build_hierarchy(const PreparedPaths& inst, const RandomnessRecord& rnd) {
    const PathMetric& m = inst.metric;
    const auto& X = inst.paths.point_set;
    if (X.empty()) throw InputError("empty point set");
    check_internal(rnd.sigma.size() == inst.paths.size(), "permutation size differs from the path count");

    PartitionHierarchy h;
    h.randomness = rnd;
    h.aspect = m.diameter;
    h.scale_factor = inst.scale_factor;
    h.top_level = X.size() == 1 ? 0 : 2 + std::max(0, static_cast<int>(std::ceil(std::log2(m.diameter))));
    h.levels.resize(h.top_level + 1);

    auto span_of = [&](const std::vector<VertexId>& vs, Cluster& c) {
        c.top = kInfinity;
        c.bottom = -kInfinity;
        for (VertexId v : vs) {
            c.top = std::min(c.top, m.from_root[v]);
            c.bottom = std::max(c.bottom, m.from_root[v]);
        }
    };

    Cluster top;
    top.id = 0;
    top.level = h.top_level;
    top.members = X;
    top.trunk = rnd.sigma.front();
    span_of(top.members, top);
    h.clusters.push_back(top);
    h.children.emplace_back();
    h.levels[h.top_level].push_back(0);

    for (int i = h.top_level - 1; i >= 0; --i) {
        for (std::size_t parent : h.levels[i + 1]) {
            const std::vector<VertexId> members = h.clusters[parent].members;
            std::vector<HorizontalChild> kids = horizontal_step(members, i, rnd.beta, rnd.sigma, m);
            for (HorizontalChild& kid : kids) {
                for (Band& band : vertical_step(kid.members, i, rnd.alpha, m.from_root)) {
                    Cluster c;
                    c.id = h.clusters.size();
                    c.level = i;
                    c.members = std::move(band.members);
                    c.trunk = kid.trunk;
                    c.band = band.index;
                    c.parent = parent;
                    span_of(c.members, c);
                    kid.bands.push_back(c.id);
                    h.levels[i].push_back(c.id);
                    h.clusters.push_back(std::move(c));
                    h.children.emplace_back();
                }
            }
            h.children[parent] = std::move(kids);
        }
    }

    for (std::size_t id : h.levels[0]) {
        const Cluster& c = h.clusters[id];
        check_internal(c.members.size() == 1, "level-0 cluster is not a singleton");
        check_internal(m.position[c.trunk][c.members.front()] != kNone, "level-0 cluster lies off its trunk");
    }
    return h;
}

PartitionHierarchy build_hierarchy(const PreparedPaths& inst, std::uint64_t seed) {
    return build_hierarchy(inst, draw_randomness(seed, inst.paths.size()));
}

HierarchyAudit audit_hierarchy(const PartitionHierarchy& h, const PreparedPaths& inst) {
    HierarchyAudit a;
    const auto& X = inst.paths.point_set;
    const PathMetric& m = inst.metric;
    std::vector<std::size_t> owner(inst.graph.vertex_count(), kNone);
    for (int i = 0; i <= h.top_level; ++i) {
        std::vector<std::size_t> next_owner(inst.graph.vertex_count(), kNone);
        std::size_t covered = 0;
        for (std::size_t id : h.levels[i]) {
            const Cluster& c = h.clusters[id];
            if (c.members.empty()) a.partition = false;
            double diam = 0.0;
            for (VertexId v : c.members) {
                if (next_owner[v] != kNone) a.partition = false;
                next_owner[v] = id;
                ++covered;
                for (VertexId w : c.members) diam = std::max(diam, m.distance(v, w));
            }
            const double unit = std::ldexp(1.0, i);
            a.max_diameter_ratio = std::max(a.max_diameter_ratio, diam / unit);
            if (!(diam < 4.0 * unit)) ++a.diameter_violations;
            if (i == 0) {
                if (c.members.size() != 1 || m.position[c.trunk][c.members.front()] == kNone) {
                    a.singletons_on_trunk = false;
                }
            }
            if (i < h.top_level) {
                if (c.parent == kNone || h.clusters[c.parent].level != i + 1) {
                    a.refinement = false;
                } else {
                    const auto& pm = h.clusters[c.parent].members;
                    for (VertexId v : c.members) {
                        if (!std::binary_search(pm.begin(), pm.end(), v)) a.refinement = false;
                    }
                }
            }
        }
        if (covered != X.size()) a.partition = false;
        owner = std::move(next_owner);
    }
    if (h.levels[h.top_level].size() != 1 || h.top_cluster().members != X) a.partition = false;
    return a;
}

}  // namespace genusembed
