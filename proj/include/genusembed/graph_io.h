#pragma once

// Line-oriented text format for embedded graphs:
//
//   graph <name>
//   vertex <vid>
//   edge <eid> <u> <v> <length>
//   rotation <vid> <eid>.<0|1> ...      (counterclockwise)
//   map <vid> <node-id>                 (optional, vertex map of a sample)
//   # comment

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "genusembed/surface_map.h"

namespace genusembed {

struct GraphDocument {
    EmbeddedGraph graph;
    std::vector<std::pair<std::string, std::string>> vertex_map;
};

/// Strict parse. The returned graph is in canonical (natural identifier) order.
GraphDocument parse_document(std::istream& in);
EmbeddedGraph parse_graph(std::istream& in);
EmbeddedGraph parse_graph_string(const std::string& text);
EmbeddedGraph load_graph(const std::string& path);

/// Canonical serialization: vertices and edges sorted by identifier, lengths
/// printed in shortest round-trip form.
void write_graph(std::ostream& out, const EmbeddedGraph& g);
std::string emit_graph(const EmbeddedGraph& g);

std::string format_length(double x);

}  // namespace genusembed
