#pragma once

// Random planar graphs from a graph on a surface: the cut graph's points are
// embedded into a random tree, the rest of the graph (drawn in the cut disk)
// is split into planar pieces, and every piece is hung from the tree at a
// portal chosen through random Lipschitz partitions of the residue.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genusembed/cut_graph.h"
#include "genusembed/rng.h"
#include "genusembed/tree_embedding.h"

namespace genusembed {

/// A vertex w added on a boundary edge, with its two neighbours.
struct HostLink {
    VertexId x = kNone;      ///< neighbour in X, at distance 1/2
    VertexId outer = kNone;  ///< neighbour outside Y
};

struct PlanarInstance {
    EmbeddedGraph g2;             ///< after boundary subdivision; ids of the input are kept
    std::vector<EdgeId> cut;      ///< cut graph, as edges of g2
    std::vector<VertexId> X;      ///< sorted
    std::vector<VertexId> Y;      ///< X plus the boundary subdivision vertices, sorted
    std::vector<VertexId> W;      ///< Y minus X, sorted
    std::vector<HostLink> host_of;         ///< by vertex; x == kNone outside W
    std::vector<std::size_t> y_index;      ///< vertex -> row of clique, kNone outside Y
    DistanceTable clique;                  ///< clique[i][j] = d_{g2}(Y[i], Y[j])
    EmbeddedGraph residue;                 ///< same vertex ids as g2
    std::vector<EdgeId> residue_edge_origin;  ///< residue edge -> g2 edge
    double y_dilation = kInfinity;         ///< dil of Y in g2 plus the clique

    bool in_y(VertexId v) const { return y_index[v] != kNone; }
    bool is_portal_vertex(VertexId v) const { return host_of[v].x != kNone; }
};

/// Splits every edge between X and V \ X at distance 1/2 from its X end.
/// `cut` is carried over unchanged. Lengths must already be rescaled.
PlanarInstance subdivide_boundary_edges(const EmbeddedGraph& g, std::span<const VertexId> x,
                                        std::span<const EdgeId> cut);

/// Fills the clique distances, the planar residue and the Y dilation.
void build_clique_and_residue(PlanarInstance& inst);

/// max over pairs of A of d_{G[A]}(u, v) / d_G(u, v); infinite when G[A]
/// disconnects a pair.
double dilation(const Adjacency& adj, std::span<const VertexId> a);
double dilation(const EmbeddedGraph& g, std::span<const VertexId> a);

struct LipschitzPartition {
    int scale = 0;
    double delta = 1.0;
    std::vector<std::vector<VertexId>> clusters;  ///< sorted, ordered by first member
    std::vector<std::size_t> cluster_of;          ///< by vertex
    std::vector<double> offsets;                  ///< band offsets drawn, in draw order
    std::size_t carved = 0;                       ///< clusters re-split by ball carving
};

inline constexpr int kKprRounds = 3;

/// One partition of `residue` with diameter scale `delta`, drawing offsets from `rng`.
LipschitzPartition kpr_partition(const EmbeddedGraph& residue, const Adjacency& adj, int scale, Rng& rng);

/// Largest scale used for `residue`: ceil(log2 of a diameter bound) + 2.
int kpr_top_scale(const EmbeddedGraph& residue);

/// Partitions at scales 2^0 .. 2^top from the lipschitz stream of `seed`.
std::vector<LipschitzPartition> kpr_hierarchy(const EmbeddedGraph& residue, std::uint64_t seed);

struct LipschitzAudit {
    bool partition = true;                ///< disjoint and covering
    std::size_t hard_violations = 0;      ///< clusters of weak diameter > 2 delta
    std::size_t within_delta = 0;         ///< clusters of weak diameter <= delta
    std::size_t clusters = 0;
    double max_diameter_ratio = 0.0;      ///< max weak diameter / delta
};

LipschitzAudit audit_lipschitz(const EmbeddedGraph& residue, const LipschitzPartition& p);

/// Per scale: max over residue edges of Pr[split] * delta / length, over `seeds` seeds.
std::vector<double> estimate_lipschitz(const EmbeddedGraph& residue, std::size_t seeds, std::uint64_t first_seed = 0);

struct PortalAssignment {
    std::vector<VertexId> portal_of;  ///< by vertex; kNone inside Y
    std::vector<int> scale_used;      ///< by vertex; -1 inside Y
    std::vector<VertexId> used;       ///< distinct portals, sorted
};

PortalAssignment assign_portals(const PlanarInstance& inst, std::span<const LipschitzPartition> parts);

struct Assembled {
    EmbeddedGraph graph;
    std::vector<std::size_t> vmap;  ///< g2 vertex -> output vertex
};

/// Tree on Y joined with one residue piece per portal in use.
Assembled assemble_one_sum(const EmbedTree& tree, const PlanarInstance& inst, const PortalAssignment& portals);

struct PlanarOptions {
    std::optional<double> lambda;  ///< passed to the tree sampler
};

/// Everything that does not depend on the seed.
struct PlanarPlan {
    EmbeddedGraph input;
    int genus = 0;
    double scale_factor = 1.0;
    CutGraph cut;
    PathSystem paths;            ///< on the rescaled input
    PreparedPaths tree_inst;     ///< path edges subdivided
    PlanarInstance inst;
    std::vector<Attachment> attachments;
    std::vector<int> residue_genera;
};

PlanarPlan prepare_planarization(const EmbeddedGraph& g);

struct Provenance {
    std::uint64_t seed = 0;
    int genus = 0;
    double scale_factor = 1.0;
    double lambda = 1.0;
    bool safe_mode = false;
    std::size_t empty_trunk_fallbacks = 0;
    std::size_t ball_carves = 0;
    std::size_t tree_nodes = 0;
    std::size_t portals_used = 0;
    int top_scale = -1;
};

struct PlanarizationSample {
    EmbeddedGraph planar_out;       ///< in the units of the input
    std::vector<std::size_t> vmap;  ///< input vertex -> output vertex
    Provenance provenance;
    EmbedTree tree;                             ///< on Y, rescaled units
    std::vector<LipschitzPartition> partitions;
    PortalAssignment portals;
};

PlanarizationSample sample_planarization(const PlanarPlan& plan, std::uint64_t seed, const PlanarOptions& opt = {});

/// prepare_planarization followed by sample_planarization. Planar input is returned unchanged.
PlanarizationSample planarize(const EmbeddedGraph& g, std::uint64_t seed, const PlanarOptions& opt = {});

}  // namespace genusembed
