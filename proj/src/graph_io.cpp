#include "genusembed/graph_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "genusembed/errors.h"

namespace genusembed {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
    throw InputError("line " + std::to_string(lineno) + ": " + what);
}

double parse_double(const std::string& s, std::size_t lineno) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) fail(lineno, "bad length '" + s + "'");
    return x;
}

}  // namespace

GraphDocument parse_document(std::istream& in) {
    struct EdgeLine {
        std::string name, u, v;
        double length;
        std::size_t lineno;
    };
    struct RotationLine {
        std::string vertex;
        std::vector<std::string> darts;
        std::size_t lineno;
    };
    std::string graph_name;
    bool have_header = false;
    std::vector<std::string> vertices;
    std::set<std::string> vertex_set;
    std::vector<EdgeLine> edges;
    std::set<std::string> edge_set;
    std::vector<RotationLine> rotations;
    std::set<std::string> rotated;
    GraphDocument doc;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto tok = split_tokens(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "graph") {
            if (have_header) fail(lineno, "duplicate graph header");
            if (tok.size() != 2) fail(lineno, "expected: graph <name>");
            graph_name = tok[1];
            have_header = true;
            continue;
        }
        if (!have_header) fail(lineno, "missing graph header");
        if (kw == "vertex") {
            if (tok.size() != 2) fail(lineno, "expected: vertex <vid>");
            if (!vertex_set.insert(tok[1]).second) fail(lineno, "duplicate vertex " + tok[1]);
            vertices.push_back(tok[1]);
        } else if (kw == "edge") {
            if (tok.size() != 5) fail(lineno, "expected: edge <eid> <u> <v> <length>");
            if (!edge_set.insert(tok[1]).second) fail(lineno, "duplicate edge " + tok[1]);
            edges.push_back({tok[1], tok[2], tok[3], parse_double(tok[4], lineno), lineno});
        } else if (kw == "rotation") {
            if (tok.size() < 2) fail(lineno, "expected: rotation <vid> <dart>...");
            if (!rotated.insert(tok[1]).second) fail(lineno, "duplicate rotation for " + tok[1]);
            rotations.push_back({tok[1], std::vector<std::string>(tok.begin() + 2, tok.end()), lineno});
        } else if (kw == "map") {
            if (tok.size() != 3) fail(lineno, "expected: map <vid> <node-id>");
            doc.vertex_map.emplace_back(tok[1], tok[2]);
        } else {
            fail(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (!have_header) throw InputError("missing graph header");

    EmbeddedGraph g(graph_name);
    for (const auto& v : vertices) g.add_vertex(v);
    for (const auto& e : edges) {
        auto u = g.find_vertex(e.u);
        auto v = g.find_vertex(e.v);
        if (!u) fail(e.lineno, "edge " + e.name + " references unknown vertex " + e.u);
        if (!v) fail(e.lineno, "edge " + e.name + " references unknown vertex " + e.v);
        g.add_edge(e.name, *u, *v, e.length);
    }
    for (const auto& r : rotations) {
        auto v = g.find_vertex(r.vertex);
        if (!v) fail(r.lineno, "rotation for unknown vertex " + r.vertex);
        std::vector<Dart> darts;
        for (const auto& ds : r.darts) {
            const auto dot = ds.rfind('.');
            if (dot == std::string::npos) fail(r.lineno, "bad dart '" + ds + "'");
            const std::string end = ds.substr(dot + 1);
            if (end != "0" && end != "1") fail(r.lineno, "bad dart end in '" + ds + "'");
            auto e = g.find_edge(ds.substr(0, dot));
            if (!e) fail(r.lineno, "dart '" + ds + "' references unknown edge");
            darts.push_back(Dart{*e, static_cast<std::uint8_t>(end == "1" ? 1 : 0)});
        }
        g.set_rotation(*v, std::move(darts));
    }
    for (const auto& v : vertices) {
        if (!rotated.count(v)) throw InputError("missing rotation for vertex " + v);
    }
    doc.graph = g.canonical();
    return doc;
}

EmbeddedGraph parse_graph(std::istream& in) { return parse_document(in).graph; }

EmbeddedGraph parse_graph_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_graph(ss);
}

EmbeddedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_graph(in);
}

std::string format_length(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_graph(std::ostream& out, const EmbeddedGraph& graph) {
    const EmbeddedGraph g = graph.canonical();
    out << "graph " << (g.name().empty() ? "unnamed" : g.name()) << "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) out << "vertex " << g.vertex_name(v) << "\n";
    for (const Edge& e : g.edges()) {
        out << "edge " << e.name << " " << g.vertex_name(e.u) << " " << g.vertex_name(e.v) << " "
            << format_length(e.length) << "\n";
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "rotation " << g.vertex_name(v);
        for (Dart d : g.rotation(v)) out << " " << dart_name(g, d);
        out << "\n";
    }
}

std::string emit_graph(const EmbeddedGraph& g) {
    std::ostringstream ss;
    write_graph(ss, g);
    return ss.str();
}

}  // namespace genusembed
