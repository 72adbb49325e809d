#include "genusembed/surface_map.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "genusembed/errors.h"

namespace genusembed {

VertexId EmbeddedGraph::add_vertex(std::string name) {
    const VertexId id = vertex_names_.size();
    vertex_index_.emplace(name, id);
    vertex_names_.push_back(std::move(name));
    rotations_.emplace_back();
    return id;
}

EdgeId EmbeddedGraph::add_edge(std::string name, VertexId u, VertexId v, double length) {
    const EdgeId id = edges_.size();
    edge_index_.emplace(name, id);
    edges_.push_back(Edge{std::move(name), u, v, length});
    return id;
}

void EmbeddedGraph::set_rotation(VertexId v, std::vector<Dart> darts) { rotations_[v] = std::move(darts); }

std::optional<VertexId> EmbeddedGraph::find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> EmbeddedGraph::find_edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

EmbeddedGraph EmbeddedGraph::canonical() const {
    std::vector<VertexId> vorder(vertex_count());
    std::iota(vorder.begin(), vorder.end(), 0);
    std::stable_sort(vorder.begin(), vorder.end(),
                     [&](VertexId a, VertexId b) { return natural_less(vertex_names_[a], vertex_names_[b]); });
    std::vector<EdgeId> eorder(edge_count());
    std::iota(eorder.begin(), eorder.end(), 0);
    std::stable_sort(eorder.begin(), eorder.end(),
                     [&](EdgeId a, EdgeId b) { return natural_less(edges_[a].name, edges_[b].name); });

    std::vector<VertexId> vnew(vertex_count());
    std::vector<EdgeId> enew(edge_count());
    EmbeddedGraph out(name_);
    for (std::size_t i = 0; i < vorder.size(); ++i) {
        vnew[vorder[i]] = i;
        out.add_vertex(vertex_names_[vorder[i]]);
    }
    for (std::size_t i = 0; i < eorder.size(); ++i) {
        const Edge& e = edges_[eorder[i]];
        enew[eorder[i]] = i;
        out.add_edge(e.name, vnew[e.u], vnew[e.v], e.length);
    }
    for (VertexId v = 0; v < vertex_count(); ++v) {
        std::vector<Dart> rot;
        rot.reserve(rotations_[v].size());
        for (Dart d : rotations_[v]) rot.push_back(d.edge < enew.size() ? Dart{enew[d.edge], d.end} : d);
        out.set_rotation(vnew[v], std::move(rot));
    }
    return out;
}

bool operator==(const EmbeddedGraph& a, const EmbeddedGraph& b) {
    if (a.name_ != b.name_ || a.vertex_names_ != b.vertex_names_ || a.rotations_ != b.rotations_) return false;
    if (a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
        const Edge& x = a.edges_[i];
        const Edge& y = b.edges_[i];
        if (x.name != y.name || x.u != y.u || x.v != y.v || x.length != y.length) return false;
    }
    return true;
}

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0;
    std::size_t j = 0;
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && is_digit(a[ie])) ++ie;
            while (je < b.size() && is_digit(b[je])) ++je;
            std::size_t is = i;
            std::size_t js = j;
            while (is + 1 < ie && a[is] == '0') ++is;
            while (js + 1 < je && b[js] == '0') ++js;
            const std::string_view da(a.data() + is, ie - is);
            const std::string_view db(b.data() + js, je - js);
            if (da.size() != db.size()) return da.size() < db.size();
            if (da != db) return da < db;
            if (ie - i != je - j) return ie - i < je - j;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
            ++i;
            ++j;
        }
    }
    return (a.size() - i) < (b.size() - j);
}

std::string dart_name(const EmbeddedGraph& g, Dart d) {
    return (d.edge < g.edge_count() ? g.edge(d.edge).name : std::to_string(d.edge)) + "." +
           std::to_string(static_cast<int>(d.end));
}

const char* to_string(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::unknown_edge: return "unknown edge";
        case DiagnosticKind::missing_dart: return "missing dart";
        case DiagnosticKind::duplicate_dart: return "duplicate dart";
        case DiagnosticKind::wrong_vertex: return "dart at wrong vertex";
        case DiagnosticKind::nonpositive_length: return "nonpositive length";
    }
    return "unknown";
}

std::vector<Diagnostic> validate_map(const EmbeddedGraph& g) {
    std::vector<Diagnostic> out;
    std::vector<bool> seen(g.dart_count(), false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (Dart d : g.rotation(v)) {
            if (d.edge >= g.edge_count() || d.end > 1) {
                out.push_back({DiagnosticKind::unknown_edge,
                               "rotation of " + g.vertex_name(v) + " lists unknown dart " + dart_name(g, d)});
                continue;
            }
            if (seen[d.index()]) {
                out.push_back({DiagnosticKind::duplicate_dart,
                               "dart " + dart_name(g, d) + " listed again at " + g.vertex_name(v)});
                continue;
            }
            seen[d.index()] = true;
            if (g.tail(d) != v) {
                out.push_back({DiagnosticKind::wrong_vertex, "dart " + dart_name(g, d) + " listed at " +
                                                                 g.vertex_name(v) + " but belongs to " +
                                                                 g.vertex_name(g.tail(d))});
            }
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            const Dart d = Dart::from_index(i);
            out.push_back({DiagnosticKind::missing_dart, "dart " + dart_name(g, d) + " is in no rotation"});
        }
    }
    for (const Edge& e : g.edges()) {
        if (!(e.length > 0.0) || !std::isfinite(e.length)) {
            std::ostringstream msg;
            msg << "edge " << e.name << " has nonpositive length " << e.length;
            out.push_back({DiagnosticKind::nonpositive_length, msg.str()});
        }
    }
    return out;
}

void require_valid_map(const EmbeddedGraph& g) {
    const auto diags = validate_map(g);
    if (diags.empty()) return;
    std::string msg = "invalid map:";
    for (const auto& d : diags) msg += "\n  " + d.message;
    throw InputError(msg);
}

std::vector<std::size_t> rotation_successor(const EmbeddedGraph& g) {
    std::vector<std::size_t> succ(g.dart_count(), kNone);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto rot = g.rotation(v);
        for (std::size_t i = 0; i < rot.size(); ++i) succ[rot[i].index()] = rot[(i + 1) % rot.size()].index();
    }
    return succ;
}

FaceSet trace_faces(const EmbeddedGraph& g) {
    require_valid_map(g);
    const auto succ = rotation_successor(g);
    FaceSet fs;
    std::vector<bool> visited(g.dart_count(), false);
    for (std::size_t start = 0; start < g.dart_count(); ++start) {
        if (visited[start]) continue;
        std::vector<Dart> face;
        std::size_t d = start;
        while (!visited[d]) {
            visited[d] = true;
            face.push_back(Dart::from_index(d));
            d = succ[d ^ 1U];
        }
        fs.faces.push_back(std::move(face));
    }
    return fs;
}

std::size_t face_count(const EmbeddedGraph& g) {
    std::size_t isolated = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) isolated += g.rotation(v).empty() ? 1 : 0;
    return trace_faces(g).faces.size() + isolated;
}

Components connected_components(const EmbeddedGraph& g) {
    Components c;
    c.of_vertex.assign(g.vertex_count(), kNone);
    std::vector<std::vector<VertexId>> adj(g.vertex_count());
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (c.of_vertex[s] != kNone) continue;
        std::queue<VertexId> q;
        q.push(s);
        c.of_vertex[s] = c.count;
        while (!q.empty()) {
            const VertexId x = q.front();
            q.pop();
            for (VertexId y : adj[x]) {
                if (c.of_vertex[y] == kNone) {
                    c.of_vertex[y] = c.count;
                    q.push(y);
                }
            }
        }
        ++c.count;
    }
    return c;
}

bool is_connected(const EmbeddedGraph& g) { return g.vertex_count() > 0 && connected_components(g).count == 1; }

namespace {

int genus_from_counts(long long v, long long e, long long f) {
    const long long chi = v - e + f;
    check_internal((2 - chi) % 2 == 0 && chi <= 2, "Euler characteristic " + std::to_string(chi) +
                                                       " is not of the form 2 - 2g");
    return static_cast<int>((2 - chi) / 2);
}

}  // namespace

int euler_genus(const EmbeddedGraph& g) {
    require_valid_map(g);
    if (!is_connected(g)) throw InputError("genus certificate requires a connected map");
    return genus_from_counts(static_cast<long long>(g.vertex_count()), static_cast<long long>(g.edge_count()),
                             static_cast<long long>(face_count(g)));
}

std::vector<int> component_genera(const EmbeddedGraph& g) {
    const FaceSet fs = trace_faces(g);
    const Components comps = connected_components(g);
    std::vector<long long> v(comps.count, 0);
    std::vector<long long> e(comps.count, 0);
    std::vector<long long> f(comps.count, 0);
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        ++v[comps.of_vertex[x]];
        if (g.rotation(x).empty()) ++f[comps.of_vertex[x]];
    }
    for (const Edge& ed : g.edges()) ++e[comps.of_vertex[ed.u]];
    for (const auto& face : fs.faces) ++f[comps.of_vertex[g.tail(face.front())]];
    std::vector<int> out(comps.count);
    for (std::size_t c = 0; c < comps.count; ++c) out[c] = genus_from_counts(v[c], e[c], f[c]);
    return out;
}

SubMap induced_embedded_subgraph(const EmbeddedGraph& g, std::span<const EdgeId> edge_subset) {
    std::vector<bool> keep(g.edge_count(), false);
    for (EdgeId e : edge_subset) {
        if (e >= g.edge_count()) throw InputError("unknown edge identifier " + std::to_string(e));
        keep[e] = true;
    }
    std::vector<bool> vkeep(g.vertex_count(), false);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (keep[e]) vkeep[g.edge(e).u] = vkeep[g.edge(e).v] = true;
    }
    SubMap sub;
    sub.graph = EmbeddedGraph(g.name());
    std::vector<VertexId> vnew(g.vertex_count(), kNone);
    std::vector<EdgeId> enew(g.edge_count(), kNone);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!vkeep[v]) continue;
        vnew[v] = sub.graph.add_vertex(g.vertex_name(v));
        sub.vertex_origin.push_back(v);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!keep[e]) continue;
        const Edge& ed = g.edge(e);
        enew[e] = sub.graph.add_edge(ed.name, vnew[ed.u], vnew[ed.v], ed.length);
        sub.edge_origin.push_back(e);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!vkeep[v]) continue;
        std::vector<Dart> rot;
        for (Dart d : g.rotation(v)) {
            if (d.edge < g.edge_count() && keep[d.edge]) rot.push_back(Dart{enew[d.edge], d.end});
        }
        sub.graph.set_rotation(vnew[v], std::move(rot));
    }
    return sub;
}

void require_plain_identifiers(const EmbeddedGraph& g) {
    auto check = [](const std::string& kind, const std::string& name) {
        if (name.find_first_of(kReservedNameChars) != std::string::npos) {
            throw InputError(kind + " name '" + name + "' uses a reserved character (one of " + kReservedNameChars + ")");
        }
    };
    for (VertexId v = 0; v < g.vertex_count(); ++v) check("vertex", g.vertex_name(v));
    for (const Edge& e : g.edges()) check("edge", e.name);
}

DiskCertificate disk_certificate(const EmbeddedGraph& g, std::span<const EdgeId> h) {
    DiskCertificate cert;
    cert.ambient_genus = euler_genus(g);
    const SubMap sub = induced_embedded_subgraph(g, h);
    cert.vertices = sub.graph.vertex_count();
    cert.edges = sub.graph.edge_count();
    cert.faces = cert.vertices == 0 ? 0 : face_count(sub.graph);
    cert.connected = is_connected(sub.graph);
    const long long chi = static_cast<long long>(cert.vertices) - static_cast<long long>(cert.edges) +
                          static_cast<long long>(cert.faces);
    cert.pass = cert.connected && cert.faces == 1 && chi == 2 - 2LL * cert.ambient_genus;
    return cert;
}

CutMap cut_along(const EmbeddedGraph& g, std::span<const EdgeId> h) {
    const DiskCertificate cert = disk_certificate(g, h);
    if (!cert.pass) throw InputError("cut graph complement is not a disk");

    std::vector<bool> in_h(g.edge_count(), false);
    for (EdgeId e : h) in_h[e] = true;

    CutMap out;
    out.graph = EmbeddedGraph(g.name() + "-cut");
    const std::size_t nd = g.dart_count();
    // Per dart: the vertex copy holding it (non-cut darts), and for cut darts
    // the corner whose gap starts / ends at it.
    std::vector<VertexId> copy_of_dart(nd, kNone);
    std::vector<VertexId> corner_starting(nd, kNone);
    std::vector<VertexId> corner_ending(nd, kNone);
    struct Corner {
        VertexId copy;
        std::size_t start;  // cut dart opening the gap
        std::size_t end;    // cut dart closing the gap
        std::vector<std::size_t> inner;
    };
    std::vector<Corner> corners;
    std::vector<VertexId> plain_copy(g.vertex_count(), kNone);

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto rot = g.rotation(v);
        std::vector<std::size_t> cut_pos;
        for (std::size_t i = 0; i < rot.size(); ++i) {
            if (in_h[rot[i].edge]) cut_pos.push_back(i);
        }
        if (cut_pos.empty()) {
            const VertexId c = out.graph.add_vertex(g.vertex_name(v));
            out.vertex_origin.push_back(v);
            plain_copy[v] = c;
            for (Dart d : rot) copy_of_dart[d.index()] = c;
            continue;
        }
        for (std::size_t k = 0; k < cut_pos.size(); ++k) {
            const std::size_t a = cut_pos[k];
            const std::size_t b = cut_pos[(k + 1) % cut_pos.size()];
            const VertexId c = out.graph.add_vertex(g.vertex_name(v) + "@" + std::to_string(k));
            out.vertex_origin.push_back(v);
            Corner corner{c, rot[a].index(), rot[b].index(), {}};
            for (std::size_t i = (a + 1) % rot.size(); i != b; i = (i + 1) % rot.size()) {
                corner.inner.push_back(rot[i].index());
                copy_of_dart[rot[i].index()] = c;
            }
            corner_starting[rot[a].index()] = c;
            corner_ending[rot[b].index()] = c;
            corners.push_back(std::move(corner));
        }
    }

    // Edge copies: one per non-cut edge, two boundary sides per cut edge.
    std::vector<EdgeId> copy_of_edge(g.edge_count(), kNone);
    std::vector<EdgeId> side_of_dart(nd, kNone);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!in_h[e]) {
            copy_of_edge[e] = out.graph.add_edge(ed.name, copy_of_dart[2 * e], copy_of_dart[2 * e + 1], ed.length);
            out.edge_origin.push_back(e);
            out.boundary.push_back(false);
            continue;
        }
        for (std::uint8_t end = 0; end < 2; ++end) {
            const std::size_t d = 2 * e + end;
            side_of_dart[d] = out.graph.add_edge(ed.name + "|" + std::to_string(end), corner_ending[d],
                                                 corner_starting[d ^ 1U], ed.length);
            out.edge_origin.push_back(e);
            out.boundary.push_back(true);
        }
    }

    auto mapped = [&](std::size_t d) {
        const Dart od = Dart::from_index(d);
        return Dart{copy_of_edge[od.edge], od.end};
    };
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (plain_copy[v] == kNone) continue;
        std::vector<Dart> rot;
        for (Dart d : g.rotation(v)) rot.push_back(mapped(d.index()));
        out.graph.set_rotation(plain_copy[v], std::move(rot));
    }
    for (const Corner& c : corners) {
        std::vector<Dart> rot;
        rot.push_back(Dart{side_of_dart[c.start ^ 1U], 1});
        for (std::size_t d : c.inner) rot.push_back(mapped(d));
        rot.push_back(Dart{side_of_dart[c.end], 0});
        out.graph.set_rotation(c.copy, std::move(rot));
    }

    check_internal(validate_map(out.graph).empty(), "cut map failed validation");
    const auto genera = component_genera(out.graph);
    check_internal(std::all_of(genera.begin(), genera.end(), [](int x) { return x == 0; }),
                   "cut map is not planar");
    return out;
}

}  // namespace genusembed
