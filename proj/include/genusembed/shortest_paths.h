#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "genusembed/surface_map.h"

namespace genusembed {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative slack used wherever a floating-point comparison feeds an assertion.
inline constexpr double kRelTol = 1e-9;

inline bool approx_equal(double a, double b) {
    return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}
inline bool approx_leq(double a, double b) { return a <= b || approx_equal(a, b); }

struct Arc {
    VertexId to;
    EdgeId edge;
    double length;
};

using Adjacency = std::vector<std::vector<Arc>>;

Adjacency adjacency(const EmbeddedGraph& g);

/// Multi-source Dijkstra. Unreachable vertices get kInfinity.
std::vector<double> dijkstra(const Adjacency& adj, std::span<const VertexId> sources);
std::vector<double> dijkstra(const EmbeddedGraph& g, VertexId source);

/// Rows of exact shortest-path distances, one per source.
using DistanceTable = std::vector<std::vector<double>>;

DistanceTable shortest_distances(const EmbeddedGraph& g, std::span<const VertexId> sources);

struct ShortestPathTree {
    VertexId root = 0;
    std::vector<VertexId> parent;      ///< kNone at the root
    std::vector<EdgeId> parent_edge;   ///< kNone at the root
    std::vector<double> dist;

    /// Vertex sequence root -> v along the tree.
    std::vector<VertexId> path_to(VertexId v) const;
};

/// Dijkstra tree from `root`; among equal-distance predecessors the smallest
/// vertex index wins, then the smallest edge index.
ShortestPathTree shortest_path_tree(const EmbeddedGraph& g, VertexId root);

}  // namespace genusembed
