#include "genusembed/tree_embedding.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "genusembed/errors.h"

namespace genusembed {

std::size_t TreeBuilder::add_node(NodeKind kind, VertexId source, std::size_t cluster) {
    nodes_.push_back(TreeNode{kind, source, cluster});
    rep_.push_back(rep_.size());
    return nodes_.size() - 1;
}

void TreeBuilder::add_edge(std::size_t a, std::size_t b, double length) {
    edges_.push_back(TreeEdge{find(a), find(b), length});
}

std::size_t TreeBuilder::find(std::size_t x) const {
    while (rep_[x] != x) x = rep_[x] = rep_[rep_[x]];
    return x;
}

void TreeBuilder::identify(std::size_t keep, std::size_t drop) {
    keep = find(keep);
    drop = find(drop);
    if (keep == drop) return;
    check_internal(!(nodes_[keep].kind == NodeKind::copy && nodes_[drop].kind == NodeKind::copy),
                   "identification would merge two embedded points");
    if (nodes_[drop].kind == NodeKind::copy) std::swap(keep, drop);
    rep_[drop] = keep;
}

std::optional<std::pair<std::size_t, std::size_t>> literal_range(const TrunkView& trunk, double top, double bottom) {
    std::size_t lo = kNone;
    std::size_t hi = kNone;
    for (std::size_t a = 0; a < trunk.offsets.size(); ++a) {
        if (approx_leq(top, trunk.offsets[a]) && approx_leq(trunk.offsets[a], bottom)) {
            if (lo == kNone) lo = a;
            hi = a;
        }
    }
    if (lo == kNone) return std::nullopt;
    return std::make_pair(lo, hi);
}

std::size_t nearest_trunk_index(const TrunkView& trunk, double top, double bottom) {
    std::size_t best = 0;
    double best_gap = kInfinity;
    for (std::size_t a = 0; a < trunk.offsets.size(); ++a) {
        const double gap = std::max({0.0, top - trunk.offsets[a], trunk.offsets[a] - bottom});
        if (gap < best_gap) {
            best = a;
            best_gap = gap;
        }
    }
    return best;
}

ClusterTree base_tree(TreeBuilder& b, std::size_t cluster, VertexId v, const TrunkView& trunk) {
    const auto it = std::find(trunk.vertices.begin(), trunk.vertices.end(), v);
    if (it == trunk.vertices.end()) throw InternalError("level-0 cluster lies off its trunk");
    const auto a = static_cast<std::size_t>(it - trunk.vertices.begin());
    const std::size_t node = b.add_node(NodeKind::copy, v, cluster);
    return ClusterTree{node, Stem{trunk.index, a, a, {node}, false}};
}

ClusterTree vertical_composition(TreeBuilder& b, std::span<const ClusterTree> children, const TrunkView& trunk,
                                 double top, double bottom, std::size_t cluster) {
    const auto literal = literal_range(trunk, top, bottom);
    std::size_t lo = literal ? literal->first : kNone;
    std::size_t hi = literal ? literal->second : 0;
    for (const ClusterTree& c : children) {
        check_internal(c.stem.trunk == trunk.index, "child stem lies on a different trunk");
        lo = std::min(lo, c.stem.lo);
        hi = std::max(hi, c.stem.hi);
    }
    check_internal(lo != kNone && lo <= hi, "vertical composition without a stem");
    for (std::size_t x = 0; x < children.size(); ++x) {
        for (std::size_t y = x + 1; y < children.size(); ++y) {
            const Stem& s = children[x].stem;
            const Stem& t = children[y].stem;
            const bool overlap = s.lo <= t.hi && t.lo <= s.hi;
            if (overlap && !s.synthetic && !t.synthetic) throw InternalError("overlapping child stems");
        }
    }

    std::vector<std::size_t> node_at(hi - lo + 1, kNone);
    for (int pass = 0; pass < 2; ++pass) {
        for (const ClusterTree& c : children) {
            if (c.stem.synthetic != (pass == 1)) continue;
            for (std::size_t a = c.stem.lo; a <= c.stem.hi; ++a) {
                const std::size_t n = c.stem.nodes[a - c.stem.lo];
                if (node_at[a - lo] == kNone) {
                    node_at[a - lo] = b.find(n);
                } else {
                    b.identify(node_at[a - lo], n);
                    node_at[a - lo] = b.find(node_at[a - lo]);
                }
            }
        }
    }
    for (std::size_t a = lo; a <= hi; ++a) {
        if (node_at[a - lo] == kNone) node_at[a - lo] = b.add_node(NodeKind::stem, trunk.vertices[a], cluster);
    }
    for (std::size_t a = lo; a < hi; ++a) {
        const bool inside_child = std::any_of(children.begin(), children.end(), [&](const ClusterTree& c) {
            return c.stem.covers(a) && c.stem.covers(a + 1);
        });
        if (!inside_child) b.add_edge(node_at[a - lo], node_at[a + 1 - lo], trunk.offsets[a + 1] - trunk.offsets[a]);
    }
    for (std::size_t& n : node_at) n = b.find(n);
    const bool exact = literal && literal->first == lo && literal->second == hi;
    return ClusterTree{node_at.front(), Stem{trunk.index, lo, hi, std::move(node_at), !exact}};
}

ClusterTree synthetic_stem(TreeBuilder& b, const TrunkView& trunk, double top, double bottom, std::size_t cluster) {
    auto range = literal_range(trunk, top, bottom);
    if (!range) {
        const std::size_t a = nearest_trunk_index(trunk, top, bottom);
        range = std::make_pair(a, a);
    }
    Stem stem{trunk.index, range->first, range->second, {}, true};
    for (std::size_t a = stem.lo; a <= stem.hi; ++a) {
        stem.nodes.push_back(b.add_node(NodeKind::stem, trunk.vertices[a], cluster));
        if (a > stem.lo) b.add_edge(stem.nodes[a - stem.lo - 1], stem.nodes[a - stem.lo], trunk.offsets[a] - trunk.offsets[a - 1]);
    }
    return ClusterTree{stem.nodes.front(), std::move(stem)};
}

ClusterTree horizontal_composition(TreeBuilder& b, std::span<const ClusterTree> children, std::size_t hub,
                                   double edge_length) {
    check_internal(hub < children.size(), "horizontal composition without a hub");
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i != hub) b.add_edge(children[i].root, children[hub].root, edge_length);
    }
    return children[hub];
}

std::vector<std::vector<std::pair<std::size_t, double>>> EmbedTree::adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes.size());
    for (const TreeEdge& e : edges) {
        adj[e.a].emplace_back(e.b, e.length);
        adj[e.b].emplace_back(e.a, e.length);
    }
    return adj;
}

std::vector<double> EmbedTree::distances_from(std::span<const std::size_t> sources) const {
    const auto adj = adjacency();
    std::vector<double> dist(nodes.size(), kInfinity);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t s : sources) {
        dist[s] = 0.0;
        pq.push({0.0, s});
    }
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x]) continue;
        for (auto [y, w] : adj[x]) {
            if (d + w < dist[y]) {
                dist[y] = d + w;
                pq.push({dist[y], y});
            }
        }
    }
    return dist;
}

std::vector<double> EmbedTree::distances_from(std::size_t source) const {
    const std::size_t src[] = {source};
    return distances_from(src);
}

namespace {

TrunkView trunk_view(const PreparedPaths& inst, std::size_t l) {
    return TrunkView{l, inst.paths.paths[l], inst.metric.offsets[l]};
}

}  // namespace

EmbedTree build_tree(const PartitionHierarchy& h, const PreparedPaths& inst, double lambda) {
    TreeBuilder b;
    EmbedTree out;
    out.lambda = lambda;
    std::vector<ClusterTree> ct(h.clusters.size());
    for (std::size_t id : h.levels[0]) {
        const Cluster& c = h.clusters[id];
        if (c.members.size() != 1) throw InternalError("level-0 cluster is not a singleton");
        ct[id] = base_tree(b, id, c.members.front(), trunk_view(inst, c.trunk));
    }
    for (int i = 1; i <= h.top_level; ++i) {
        for (std::size_t id : h.levels[i]) {
            const Cluster& c = h.clusters[id];
            std::vector<ClusterTree> parts;
            std::size_t hub = kNone;
            for (const HorizontalChild& kid : h.children[id]) {
                std::vector<ClusterTree> bands;
                for (std::size_t band : kid.bands) bands.push_back(ct[band]);
                parts.push_back(vertical_composition(b, bands, trunk_view(inst, kid.trunk), kid.top, kid.bottom, id));
                if (kid.trunk == c.trunk) hub = parts.size() - 1;
            }
            if (hub == kNone) {
                parts.push_back(synthetic_stem(b, trunk_view(inst, c.trunk), c.top, c.bottom, id));
                hub = parts.size() - 1;
                ++out.empty_trunk_fallbacks;
            }
            ct[id] = horizontal_composition(b, parts, hub, lambda * std::ldexp(1.0, i));
        }
    }

    // Compact the arena: one node per identification class, duplicate edges dropped.
    std::vector<std::size_t> compact(b.node_count(), kNone);
    for (std::size_t x = 0; x < b.node_count(); ++x) {
        const std::size_t r = b.find(x);
        if (compact[r] == kNone) {
            compact[r] = out.nodes.size();
            out.nodes.push_back(b.node(r));
        }
        compact[x] = compact[r];
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const TreeEdge& e : b.edges()) {
        const std::size_t x = compact[e.a];
        const std::size_t y = compact[e.b];
        check_internal(x != y, "stem identification collapsed an edge");
        if (!seen.insert({std::min(x, y), std::max(x, y)}).second) continue;
        out.edges.push_back(TreeEdge{x, y, e.length});
    }
    out.f.assign(inst.graph.vertex_count(), kNone);
    for (std::size_t id : h.levels[0]) out.f[h.clusters[id].members.front()] = compact[ct[id].root];
    out.stems.resize(h.clusters.size());
    out.roots.resize(h.clusters.size());
    for (std::size_t id = 0; id < h.clusters.size(); ++id) {
        Stem s = ct[id].stem;
        for (std::size_t& n : s.nodes) n = compact[n];
        out.stems[id] = std::move(s);
        out.roots[id] = compact[ct[id].root];
    }
    return out;
}

std::size_t count_contractions(const EmbedTree& t, const PreparedPaths& inst) {
    std::size_t bad = 0;
    const auto& X = inst.paths.point_set;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto d = t.distances_from(t.f[X[i]]);
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            const double dg = inst.metric.x_dist[i][j];
            if (d[t.f[X[j]]] < dg * (1.0 - kRelTol)) ++bad;
        }
    }
    return bad;
}

TreeAudit audit_tree(const EmbedTree& t, const PartitionHierarchy& h, const PreparedPaths& inst) {
    TreeAudit a;
    const auto& X = inst.paths.point_set;
    if (t.nodes.empty() || t.edges.size() + 1 != t.nodes.size()) a.is_tree = false;
    if (!t.nodes.empty()) {
        const auto d = t.distances_from(0);
        if (std::any_of(d.begin(), d.end(), [](double x) { return x == kInfinity; })) a.is_tree = false;
    }
    std::set<std::size_t> images;
    for (VertexId v : X) {
        if (t.f[v] == kNone || !images.insert(t.f[v]).second) a.injective = false;
    }
    if (!a.is_tree || !a.injective) return a;

    for (const Cluster& c : h.clusters) {
        const Stem& s = t.stems[c.id];
        const auto& off = inst.metric.offsets[s.trunk];
        const auto along = t.distances_from(s.nodes.front());
        for (std::size_t k = 0; k < s.nodes.size(); ++k) {
            if (!approx_equal(along[s.nodes[k]], off[s.lo + k] - off[s.lo])) a.stem_fidelity = false;
        }
        const auto to_stem = t.distances_from(s.nodes);
        const double bound = std::ldexp(1.0, c.level + 2);
        for (VertexId v : c.members) {
            const double d = to_stem[t.f[v]];
            a.lemma_max_ratio = std::max(a.lemma_max_ratio, d / bound);
            if (!approx_leq(d, t.lambda * bound)) ++a.lemma_violations;
        }
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto d = t.distances_from(t.f[X[i]]);
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            const double dg = inst.metric.x_dist[i][j];
            const double dt = d[t.f[X[j]]];
            if (dt < dg * (1.0 - kRelTol)) ++a.contraction_violations;
            if (inst.is_subdivision(X[i]) || inst.is_subdivision(X[j])) continue;
            a.min_stretch = std::min(a.min_stretch, dt / dg);
            a.max_stretch = std::max(a.max_stretch, dt / dg);
        }
    }
    return a;
}

TreeSample sample_tree(const PreparedPaths& inst, std::uint64_t seed, const TreeOptions& opt) {
    TreeSample s;
    s.hierarchy = build_hierarchy(inst, seed);
    s.tree = build_tree(s.hierarchy, inst, opt.lambda.value_or(1.0));
    if (!opt.lambda && count_contractions(s.tree, inst) > 0) {
        s.tree = build_tree(s.hierarchy, inst, kSafeLambda);
        s.safe_mode = true;
    }
    return s;
}

TreeSample sample_tree_embedding(const EmbeddedGraph& g, const PathSystem& ps, std::uint64_t seed,
                                 const TreeOptions& opt) {
    PreparedPaths inst = prepare_paths(g, ps);
    TreeSample s = sample_tree(inst, seed, opt);
    for (TreeEdge& e : s.tree.edges) e.length /= inst.scale_factor;
    s.prepared = std::move(inst);
    return s;
}

EmbedTree extend_to_attachments(EmbedTree t, std::span<const Attachment> attachments) {
    for (const Attachment& at : attachments) {
        if (at.host >= t.f.size() || t.f[at.host] == kNone) {
            throw InputError("attachment host " + std::to_string(at.host) + " is not embedded");
        }
        if (!(at.length > 0.0)) throw InputError("attachment length must be positive");
        const std::size_t node = t.nodes.size();
        t.nodes.push_back(TreeNode{NodeKind::copy, at.vertex, kNone});
        t.edges.push_back(TreeEdge{t.f[at.host], node, at.length});
        if (t.f.size() <= at.vertex) t.f.resize(at.vertex + 1, kNone);
        if (t.f[at.vertex] != kNone) throw InputError("attachment vertex is already embedded");
        t.f[at.vertex] = node;
    }
    return t;
}

}  // namespace genusembed
