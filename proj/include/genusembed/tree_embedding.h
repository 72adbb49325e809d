#pragma once

// Random tree over the path points, assembled bottom-up along the hierarchy:
// vertical composition glues the trees of a part's bands along a copy of the
// trunk (the stem); horizontal composition joins the parts of a cluster by a
// star of root-to-root edges of length lambda * 2^i.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "genusembed/alternating_partitions.h"

namespace genusembed {

enum class NodeKind { copy, stem };

struct TreeNode {
    NodeKind kind = NodeKind::stem;
    VertexId source = 0;          ///< X-vertex (copy) or trunk vertex (stem) it stands for
    std::size_t cluster = kNone;  ///< cluster that created it
};

struct TreeEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    double length = 0.0;
};

/// A path of tree nodes standing for consecutive trunk vertices lo..hi.
struct Stem {
    std::size_t trunk = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::vector<std::size_t> nodes;  ///< nodes[a - lo] stands for trunk vertex a
    bool synthetic = false;          ///< made up because the trunk child was empty

    bool covers(std::size_t a) const { return lo <= a && a <= hi; }
};

struct ClusterTree {
    std::size_t root = 0;
    Stem stem;
};

/// Arena in which cluster trees are created and glued.
class TreeBuilder {
public:
    std::size_t add_node(NodeKind kind, VertexId source, std::size_t cluster);
    void add_edge(std::size_t a, std::size_t b, double length);
    /// Merges `drop` into `keep`.
    void identify(std::size_t keep, std::size_t drop);
    std::size_t find(std::size_t x) const;

    std::size_t node_count() const { return nodes_.size(); }
    const TreeNode& node(std::size_t x) const { return nodes_[x]; }
    std::span<const TreeEdge> edges() const { return edges_; }

private:
    std::vector<TreeNode> nodes_;
    std::vector<TreeEdge> edges_;
    mutable std::vector<std::size_t> rep_;
};

/// Read-only view of one trunk path.
struct TrunkView {
    std::size_t index = 0;
    std::span<const VertexId> vertices;
    std::span<const double> offsets;  ///< d_G(r, vertices[a])
};

/// Indices a with offsets[a] in [top, bottom]; nullopt when none.
std::optional<std::pair<std::size_t, std::size_t>> literal_range(const TrunkView& trunk, double top, double bottom);

/// Trunk vertex closest to [top, bottom] (ties toward the root).
std::size_t nearest_trunk_index(const TrunkView& trunk, double top, double bottom);

/// Single-node tree of a level-0 cluster {v}; v must lie on the trunk.
ClusterTree base_tree(TreeBuilder& b, std::size_t cluster, VertexId v, const TrunkView& trunk);

/// Glues the band trees of one horizontal child along a fresh copy of the
/// trunk covering [top, bottom] and every child stem.
ClusterTree vertical_composition(TreeBuilder& b, std::span<const ClusterTree> children, const TrunkView& trunk,
                                 double top, double bottom, std::size_t cluster);

/// Stem made up for a cluster whose trunk child is empty.
ClusterTree synthetic_stem(TreeBuilder& b, const TrunkView& trunk, double top, double bottom, std::size_t cluster);

/// Joins every child root to the hub root by an edge of `edge_length`.
/// `hub` indexes `children`; the result inherits the hub's stem and root.
ClusterTree horizontal_composition(TreeBuilder& b, std::span<const ClusterTree> children, std::size_t hub,
                                   double edge_length);

struct EmbedTree {
    std::vector<TreeNode> nodes;
    std::vector<TreeEdge> edges;
    std::vector<std::size_t> f;            ///< vertex -> node, kNone outside the embedded set
    std::vector<Stem> stems;               ///< by cluster id
    std::vector<std::size_t> roots;        ///< by cluster id
    double lambda = 1.0;
    std::size_t empty_trunk_fallbacks = 0;

    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;
    std::vector<double> distances_from(std::span<const std::size_t> sources) const;
    std::vector<double> distances_from(std::size_t source) const;
};

EmbedTree build_tree(const PartitionHierarchy& h, const PreparedPaths& inst, double lambda = 1.0);

struct TreeAudit {
    bool is_tree = true;
    bool injective = true;
    bool stem_fidelity = true;
    std::size_t lemma_violations = 0;      ///< d_T(f(v), stem(A)) > lambda 2^{i+2}
    double lemma_max_ratio = 0.0;          ///< max of d_T(f(v), stem(A)) / 2^{i+2}
    std::size_t contraction_violations = 0;
    double min_stretch = kInfinity;        ///< over pairs of original vertices
    double max_stretch = 0.0;
};

/// Structural and metric checks on a tree built in the units of `inst`.
TreeAudit audit_tree(const EmbedTree& t, const PartitionHierarchy& h, const PreparedPaths& inst);

/// Pairs of X-vertices (subdivision points included) that the tree contracts.
std::size_t count_contractions(const EmbedTree& t, const PreparedPaths& inst);

struct TreeOptions {
    std::optional<double> lambda;  ///< fixed root-edge scale; unset = 1 with fallback to 4
};

struct TreeSample {
    PreparedPaths prepared;
    PartitionHierarchy hierarchy;
    EmbedTree tree;          ///< in the prepared (rescaled) units
    bool safe_mode = false;  ///< contraction at lambda = 1 forced a rebuild
};

inline constexpr double kSafeLambda = 4.0;

/// Hierarchy + tree for one seed on an already prepared instance.
TreeSample sample_tree(const PreparedPaths& inst, std::uint64_t seed, const TreeOptions& opt = {});

/// Rescale, subdivide, build hierarchy and tree; tree lengths in the original units.
TreeSample sample_tree_embedding(const EmbeddedGraph& g, const PathSystem& ps, std::uint64_t seed,
                                 const TreeOptions& opt = {});

struct Attachment {
    VertexId vertex;  ///< new leaf
    VertexId host;    ///< embedded vertex it hangs from
    double length;
};

/// Adds each attachment as a leaf hanging off f(host).
EmbedTree extend_to_attachments(EmbedTree t, std::span<const Attachment> attachments);

}  // namespace genusembed
