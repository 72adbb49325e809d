#pragma once

// Cut graphs from greedy systems of loops (tree-cotree construction).

#include <vector>

#include "genusembed/shortest_paths.h"
#include "genusembed/surface_map.h"

namespace genusembed {

/// A loop through the root: tree path root->u, edge {u, v}, tree path v->root.
struct Loop {
    std::vector<VertexId> to_u;    ///< root ... u
    EdgeId edge = 0;
    std::vector<VertexId> from_v;  ///< v ... root
    double length = 0.0;
    std::vector<EdgeId> edges;     ///< all edges of the loop, sorted
};

struct CutGraph {
    VertexId root = 0;
    std::vector<EdgeId> edges;     ///< H, sorted
    std::vector<Loop> loops;       ///< 2g loops, by increasing length
    DiskCertificate certificate;

    std::vector<VertexId> vertices(const EmbeddedGraph& g) const;
};

/// k shortest paths from a common root; X is the union of their vertices.
struct PathSystem {
    VertexId root = 0;
    std::vector<std::vector<VertexId>> paths;
    std::vector<VertexId> point_set;  ///< sorted

    std::size_t size() const { return paths.size(); }
};

DiskCertificate verify_disk_certificate(const EmbeddedGraph& g, std::span<const EdgeId> h);

/// Greedy system of loops rooted at r. Throws InputError for planar input.
CutGraph greedy_system_of_loops(const EmbeddedGraph& g, VertexId r);

/// The two tree paths of every loop, duplicates removed.
PathSystem decompose_into_paths(const CutGraph& c, const EmbeddedGraph& g, VertexId r);

/// True when every prefix of `path` has length d_G(root, endpoint of prefix).
bool is_prefix_shortest(const EmbeddedGraph& g, const std::vector<VertexId>& path,
                        const std::vector<double>& dist_from_root);

/// Approximate center: midpoint of a double-sweep diameter path.
VertexId default_root(const EmbeddedGraph& g);

/// Root-to-leaf paths of the shortest-path tree (used for planar inputs).
PathSystem tree_leaf_paths(const EmbeddedGraph& g, VertexId r);

/// Cut-graph path system for genus >= 1, shortest-path-tree leaf paths otherwise.
PathSystem default_path_system(const EmbeddedGraph& g, VertexId r);

}  // namespace genusembed
