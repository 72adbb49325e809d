#pragma once

// Random hierarchy of alternating partitions over the vertices of a family of
// shortest paths with a common root: at each level, a horizontal step assigns
// points to the first path (in random order) within a random radius, and a
// vertical step slices each part into randomly shifted distance-to-root bands.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "genusembed/cut_graph.h"
#include "genusembed/shortest_paths.h"
#include "genusembed/surface_map.h"

namespace genusembed {

struct RandomnessRecord {
    double alpha = 0.0;              ///< band offset, in [0, 1)
    double beta = 1.0;               ///< radius multiplier, in [1, 2)
    std::vector<std::size_t> sigma;  ///< processing order of the paths
    std::uint64_t seed = 0;
};

RandomnessRecord draw_randomness(std::uint64_t seed, std::size_t path_count);

struct Rescaled {
    EmbeddedGraph graph;
    double scale_factor = 1.0;  ///< multiplier applied to every length
};

/// Scales lengths so that the minimum distance between distinct vertices is 1.
Rescaled rescale_min_distance(const EmbeddedGraph& g);

struct Subdivided {
    EmbeddedGraph graph;  ///< original vertices keep their ids; new ones are appended
    PathSystem paths;
    std::vector<std::vector<EdgeId>> chain;  ///< per original edge: the edges replacing it, in u -> v order
    std::size_t original_vertex_count = 0;
};

/// Splits every path edge longer than 1 into ceil(length) equal segments.
Subdivided subdivide_long_path_edges(const EmbeddedGraph& g, const PathSystem& ps);

/// Distances the hierarchy and the tree need, precomputed once per instance.
struct PathMetric {
    std::vector<double> from_root;                 ///< d_G(r, v)
    std::vector<std::vector<double>> to_path;      ///< to_path[l][v] = d_G(v, P_l)
    std::vector<std::vector<std::size_t>> position;  ///< position[l][v] = index on P_l or kNone
    std::vector<std::vector<double>> offsets;      ///< offsets[l][a] = d_G(r, P_l[a])
    std::vector<std::size_t> x_index;              ///< vertex -> row of x_dist, kNone outside X
    std::vector<std::vector<double>> x_dist;       ///< pairwise distances over X
    double diameter = 0.0;                         ///< diameter of (X, d_G)

    static PathMetric compute(const EmbeddedGraph& g, const PathSystem& ps);
    double distance(VertexId a, VertexId b) const { return x_dist[x_index[a]][x_index[b]]; }
};

/// Instance ready for the hierarchy: rescaled, path edges subdivided, metric cached.
struct PreparedPaths {
    EmbeddedGraph graph;
    PathSystem paths;
    double scale_factor = 1.0;
    std::size_t original_vertex_count = 0;
    PathMetric metric;

    bool is_subdivision(VertexId v) const { return v >= original_vertex_count; }
};

PreparedPaths prepare_paths(const EmbeddedGraph& g, const PathSystem& ps);

struct Cluster {
    std::size_t id = 0;
    int level = 0;
    std::vector<VertexId> members;  ///< sorted
    std::size_t trunk = 0;          ///< path index
    std::optional<long long> band;  ///< absent for the top cluster
    std::size_t parent = kNone;
    double top = 0.0;
    double bottom = 0.0;
};

/// One horizontal child A_s of a cluster, with the ids of its vertical children.
struct HorizontalChild {
    std::size_t trunk = 0;
    std::vector<VertexId> members;
    std::vector<std::size_t> bands;
    double top = 0.0;
    double bottom = 0.0;
};

struct PartitionHierarchy {
    std::vector<Cluster> clusters;
    std::vector<std::vector<std::size_t>> levels;          ///< levels[i] = ids of C_i
    std::vector<std::vector<HorizontalChild>> children;    ///< by parent cluster id
    int top_level = 0;
    double aspect = 0.0;
    RandomnessRecord randomness;
    double scale_factor = 1.0;

    const Cluster& top_cluster() const { return clusters[levels[top_level].front()]; }
};

double horizontal_radius(int level, double beta);
double band_width(int level);

/// Band index j with (j - 1 + alpha) w <= d < (j + alpha) w.
long long band_index(double dist_from_root, int level, double alpha);

/// Horizontal partitioning of `members` at `level`; empty children are dropped,
/// the rest keep sigma order.
std::vector<HorizontalChild> horizontal_step(std::span<const VertexId> members, int level, double beta,
                                             std::span<const std::size_t> sigma, const PathMetric& metric);

struct Band {
    long long index = 0;
    std::vector<VertexId> members;
};

/// Vertical partitioning into nonempty bands, by increasing band index.
std::vector<Band> vertical_step(std::span<const VertexId> members, int level, double alpha,
                                std::span<const double> from_root);

PartitionHierarchy build_hierarchy(const PreparedPaths& inst, const RandomnessRecord& rnd);
PartitionHierarchy build_hierarchy(const PreparedPaths& inst, std::uint64_t seed);

struct HierarchyAudit {
    bool refinement = true;
    bool partition = true;
    bool singletons_on_trunk = true;
    std::size_t diameter_violations = 0;  ///< clusters with diam >= 2^{i+2}
    double max_diameter_ratio = 0.0;      ///< max over clusters of diam / 2^i
};

HierarchyAudit audit_hierarchy(const PartitionHierarchy& h, const PreparedPaths& inst);

}  // namespace genusembed
