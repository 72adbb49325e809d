#pragma once

// Combinatorial maps: graphs drawn on orientable surfaces, encoded by a
// rotation system (the counterclockwise cyclic order of darts at each vertex).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace genusembed {

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// One end of an edge. Dart `end == 0` sits at `Edge::u`, `end == 1` at `Edge::v`.
struct Dart {
    EdgeId edge = 0;
    std::uint8_t end = 0;

    std::size_t index() const { return 2 * edge + end; }
    Dart opposite() const { return Dart{edge, static_cast<std::uint8_t>(end ^ 1U)}; }
    static Dart from_index(std::size_t i) { return Dart{i / 2, static_cast<std::uint8_t>(i % 2)}; }

    friend bool operator==(const Dart&, const Dart&) = default;
    friend auto operator<=>(const Dart&, const Dart&) = default;
};

struct Edge {
    std::string name;
    VertexId u = 0;
    VertexId v = 0;
    double length = 1.0;

    VertexId endpoint(std::uint8_t end) const { return end == 0 ? u : v; }
    VertexId other(VertexId x) const { return x == u ? v : u; }
    bool is_loop() const { return u == v; }
};

class EmbeddedGraph {
public:
    EmbeddedGraph() = default;
    explicit EmbeddedGraph(std::string name) : name_(std::move(name)) {}

    VertexId add_vertex(std::string name);
    EdgeId add_edge(std::string name, VertexId u, VertexId v, double length);
    void set_rotation(VertexId v, std::vector<Dart> darts);
    void set_length(EdgeId e, double length) { edges_[e].length = length; }
    void set_name(std::string name) { name_ = std::move(name); }

    const std::string& name() const { return name_; }
    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t dart_count() const { return 2 * edges_.size(); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Dart> rotation(VertexId v) const { return rotations_[v]; }
    VertexId tail(Dart d) const { return edges_[d.edge].endpoint(d.end); }
    VertexId head(Dart d) const { return edges_[d.edge].endpoint(d.end ^ 1U); }

    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    /// Copy with vertices and edges reordered by natural identifier order.
    /// Rotations are carried over unchanged (up to relabelling).
    EmbeddedGraph canonical() const;

    friend bool operator==(const EmbeddedGraph&, const EmbeddedGraph&);

private:
    std::string name_;
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Dart>> rotations_;
    std::unordered_map<std::string, VertexId> vertex_index_;
    std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Natural ordering of identifiers: digit runs compare numerically ("v2" < "v10").
bool natural_less(const std::string& a, const std::string& b);

std::string dart_name(const EmbeddedGraph& g, Dart d);

enum class DiagnosticKind {
    unknown_edge,
    missing_dart,
    duplicate_dart,
    wrong_vertex,
    nonpositive_length,
};

struct Diagnostic {
    DiagnosticKind kind;
    std::string message;
};

const char* to_string(DiagnosticKind k);

std::vector<Diagnostic> validate_map(const EmbeddedGraph& g);

/// Throws InputError carrying the diagnostics when the map is invalid.
void require_valid_map(const EmbeddedGraph& g);

/// Characters the pipelines use in the names they generate.
inline constexpr const char* kReservedNameChars = "~^:";

/// Throws InputError when a vertex or edge name contains a reserved character.
void require_plain_identifiers(const EmbeddedGraph& g);

struct FaceSet {
    std::vector<std::vector<Dart>> faces;
};

/// successor[d.index()] = next dart counterclockwise around tail(d).
std::vector<std::size_t> rotation_successor(const EmbeddedGraph& g);

/// Orbits of the face permutation d -> rotation_successor(opposite(d)).
FaceSet trace_faces(const EmbeddedGraph& g);

/// Face count for the Euler formula: dart orbits plus one face per isolated vertex.
std::size_t face_count(const EmbeddedGraph& g);

struct Components {
    std::vector<std::size_t> of_vertex;
    std::size_t count = 0;
};

Components connected_components(const EmbeddedGraph& g);
bool is_connected(const EmbeddedGraph& g);

/// Genus of the surface the rotation system defines. Requires a connected valid map.
int euler_genus(const EmbeddedGraph& g);

/// Genus of every connected component.
std::vector<int> component_genera(const EmbeddedGraph& g);

/// A map built out of another one, with provenance of every vertex and edge.
struct SubMap {
    EmbeddedGraph graph;
    std::vector<VertexId> vertex_origin;
    std::vector<EdgeId> edge_origin;
};

/// Subgraph on `edge_subset` and its endpoints; rotations are the originals
/// restricted to the surviving darts.
SubMap induced_embedded_subgraph(const EmbeddedGraph& g, std::span<const EdgeId> edge_subset);

/// Combinatorial check that the complement of `h` in the surface of `g` is a disk.
struct DiskCertificate {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
    bool connected = false;
    int ambient_genus = 0;
    bool pass = false;
};

DiskCertificate disk_certificate(const EmbeddedGraph& g, std::span<const EdgeId> h);

/// Result of cutting the surface open along a cut graph.
struct CutMap {
    EmbeddedGraph graph;
    std::vector<VertexId> vertex_origin;  ///< copy -> original vertex
    std::vector<EdgeId> edge_origin;      ///< copy -> original edge
    std::vector<bool> boundary;           ///< edge lies on the boundary of the cut disk
};

/// Cuts `g` along `h`. Every vertex of `h` gets one copy per corner between
/// consecutive cut darts; every cut edge gets one boundary copy per side.
/// The result is a planar map whose boundary walk is the single face of `h`.
CutMap cut_along(const EmbeddedGraph& g, std::span<const EdgeId> h);

}  // namespace genusembed
