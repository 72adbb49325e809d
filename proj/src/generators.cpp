#include "genusembed/generators.h"

#include "genusembed/errors.h"

namespace genusembed {

namespace {

std::string cell(const std::string& prefix, char kind, int i, int j) {
    return prefix + kind + std::to_string(i) + "_" + std::to_string(j);
}

// Appends a torus grid to `g`; returns the vertex id of cell (0, 0).
VertexId append_torus(EmbeddedGraph& g, int m, int n, const std::string& prefix) {
    const VertexId base = g.vertex_count();
    auto vid = [&](int i, int j) { return base + static_cast<VertexId>(((i + m) % m) * n + (j + n) % n); };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) g.add_vertex(cell(prefix, 'v', i, j));
    const EdgeId ebase = g.edge_count();
    // Edge (i, j, east) = ebase + 2 * (i n + j); (i, j, south) = that + 1.
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            g.add_edge(cell(prefix, 'h', i, j), vid(i, j), vid(i, j + 1), 1.0);
            g.add_edge(cell(prefix, 's', i, j), vid(i, j), vid(i + 1, j), 1.0);
        }
    }
    auto east = [&](int i, int j) { return ebase + 2 * static_cast<EdgeId>(((i + m) % m) * n + (j + n) % n); };
    auto south = [&](int i, int j) { return east(i, j) + 1; };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            g.set_rotation(vid(i, j), {Dart{south(i - 1, j), 1}, Dart{east(i, j), 0}, Dart{south(i, j), 0},
                                       Dart{east(i, j - 1), 1}});
        }
    }
    return base;
}

void append_to_rotation(EmbeddedGraph& g, VertexId v, Dart d) {
    auto rot = std::vector<Dart>(g.rotation(v).begin(), g.rotation(v).end());
    rot.push_back(d);
    g.set_rotation(v, std::move(rot));
}

}  // namespace

Family parse_family(const std::string& s) {
    if (s == "torus-grid") return Family::torus_grid;
    if (s == "genus-sum") return Family::genus_sum;
    if (s == "bouquet") return Family::bouquet;
    if (s == "path-star") return Family::path_star;
    if (s == "planar-grid") return Family::planar_grid;
    throw InputError("unknown generator family '" + s + "'");
}

EmbeddedGraph torus_grid(int rows, int cols) {
    if (rows < 3 || cols < 3) throw InputError("torus-grid needs rows, cols >= 3");
    EmbeddedGraph g("torus-grid-" + std::to_string(rows) + "x" + std::to_string(cols));
    append_torus(g, rows, cols, "");
    return g.canonical();
}

EmbeddedGraph genus_sum(int genus, int m) {
    if (genus < 1 || m < 3) throw InputError("genus-sum needs genus >= 1 and rows >= 3");
    EmbeddedGraph g("genus-sum-" + std::to_string(genus) + "x" + std::to_string(m));
    std::vector<VertexId> bases;
    for (int t = 0; t < genus; ++t) bases.push_back(append_torus(g, m, m, "t" + std::to_string(t) + "_"));
    for (int t = 0; t + 1 < genus; ++t) {
        // Far corner of grid t to the origin cell of grid t+1.
        const VertexId a = bases[t] + static_cast<VertexId>((m / 2) * m + m / 2);
        const VertexId b = bases[t + 1];
        const EdgeId e = g.add_edge("b" + std::to_string(t), a, b, 1.0);
        append_to_rotation(g, a, Dart{e, 0});
        append_to_rotation(g, b, Dart{e, 1});
    }
    return g.canonical();
}

EmbeddedGraph bouquet(int genus) {
    if (genus < 1) throw InputError("bouquet needs genus >= 1");
    EmbeddedGraph g("bouquet-" + std::to_string(genus));
    const VertexId o = g.add_vertex("o");
    std::vector<Dart> rot;
    for (int i = 1; i <= genus; ++i) {
        const EdgeId a = g.add_edge("a" + std::to_string(i), o, o, 1.0);
        const EdgeId b = g.add_edge("b" + std::to_string(i), o, o, 1.0);
        rot.insert(rot.end(), {Dart{a, 0}, Dart{b, 0}, Dart{a, 1}, Dart{b, 1}});
    }
    g.set_rotation(o, std::move(rot));
    return g.canonical();
}

EmbeddedGraph path_star(int arms, int length) {
    if (arms < 1 || length < 1) throw InputError("path-star needs arms, length >= 1");
    EmbeddedGraph g("path-star-" + std::to_string(arms) + "x" + std::to_string(length));
    const VertexId r = g.add_vertex("r");
    std::vector<Dart> root_rot;
    for (int a = 0; a < arms; ++a) {
        VertexId prev = r;
        EdgeId prev_edge = kNone;
        for (int j = 1; j <= length; ++j) {
            const VertexId v = g.add_vertex(cell("", 'a', a, j));
            const EdgeId e = g.add_edge(cell("", 'e', a, j), prev, v, 1.0);
            if (prev == r) {
                root_rot.push_back(Dart{e, 0});
            } else {
                g.set_rotation(prev, {Dart{prev_edge, 1}, Dart{e, 0}});
            }
            prev = v;
            prev_edge = e;
        }
        g.set_rotation(prev, {Dart{prev_edge, 1}});
    }
    g.set_rotation(r, std::move(root_rot));
    return g.canonical();
}

EmbeddedGraph planar_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InputError("planar-grid needs rows, cols >= 1");
    EmbeddedGraph g("planar-grid-" + std::to_string(rows) + "x" + std::to_string(cols));
    auto vid = [&](int i, int j) { return static_cast<VertexId>(i * cols + j); };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g.add_vertex(cell("", 'v', i, j));
    std::vector<EdgeId> east(rows * cols, kNone);
    std::vector<EdgeId> south(rows * cols, kNone);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) east[vid(i, j)] = g.add_edge(cell("", 'h', i, j), vid(i, j), vid(i, j + 1), 1.0);
            if (i + 1 < rows) south[vid(i, j)] = g.add_edge(cell("", 's', i, j), vid(i, j), vid(i + 1, j), 1.0);
        }
    }
    // Counterclockwise with row index growing downwards: E, N, W, S.
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            std::vector<Dart> rot;
            if (j + 1 < cols) rot.push_back(Dart{east[vid(i, j)], 0});
            if (i > 0) rot.push_back(Dart{south[vid(i - 1, j)], 1});
            if (j > 0) rot.push_back(Dart{east[vid(i, j - 1)], 1});
            if (i + 1 < rows) rot.push_back(Dart{south[vid(i, j)], 0});
            g.set_rotation(vid(i, j), std::move(rot));
        }
    }
    return g.canonical();
}

EmbeddedGraph generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::torus_grid: return torus_grid(spec.rows, spec.cols);
        case Family::genus_sum: return genus_sum(spec.genus, spec.rows);
        case Family::bouquet: return bouquet(spec.genus);
        case Family::path_star: return path_star(spec.arms, spec.arm_length);
        case Family::planar_grid: return planar_grid(spec.rows, spec.cols);
    }
    throw InputError("unknown generator family");
}

}  // namespace genusembed
