#pragma once

#include <string>
#include <vector>

#include "genusembed/shortest_paths.h"
#include "genusembed/surface_map.h"

namespace testsupport {

using genusembed::Dart;
using genusembed::EmbeddedGraph;

/// a-b-c-d-a, unit lengths unless given.
inline EmbeddedGraph square(std::vector<double> len = {1, 1, 1, 1}) {
    EmbeddedGraph g("square");
    for (const char* n : {"a", "b", "c", "d"}) g.add_vertex(n);
    g.add_edge("ab", 0, 1, len[0]);
    g.add_edge("bc", 1, 2, len[1]);
    g.add_edge("cd", 2, 3, len[2]);
    g.add_edge("da", 3, 0, len[3]);
    g.set_rotation(0, {Dart{0, 0}, Dart{3, 1}});
    g.set_rotation(1, {Dart{1, 0}, Dart{0, 1}});
    g.set_rotation(2, {Dart{2, 0}, Dart{1, 1}});
    g.set_rotation(3, {Dart{3, 0}, Dart{2, 1}});
    return g;
}

/// Path v0 - v1 - ... with the given edge lengths.
inline EmbeddedGraph path(const std::vector<double>& len) {
    EmbeddedGraph g("path");
    for (std::size_t i = 0; i <= len.size(); ++i) g.add_vertex("v" + std::to_string(i));
    for (std::size_t i = 0; i < len.size(); ++i) g.add_edge("e" + std::to_string(i), i, i + 1, len[i]);
    for (std::size_t i = 0; i <= len.size(); ++i) {
        std::vector<Dart> rot;
        if (i > 0) rot.push_back(Dart{i - 1, 1});
        if (i < len.size()) rot.push_back(Dart{i, 0});
        g.set_rotation(i, rot);
    }
    return g;
}

/// One vertex, loops a and b with darts in cyclic order a, b, a', b'.
inline EmbeddedGraph two_loop_bouquet() {
    EmbeddedGraph g("bouquet");
    g.add_vertex("o");
    g.add_edge("a", 0, 0, 1.0);
    g.add_edge("b", 0, 0, 1.0);
    g.set_rotation(0, {Dart{0, 0}, Dart{1, 0}, Dart{0, 1}, Dart{1, 1}});
    return g;
}

/// All-pairs distances by Floyd-Warshall, independent of the Dijkstra code.
inline std::vector<std::vector<double>> floyd_warshall(const EmbeddedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, genusembed::kInfinity));
    for (std::size_t v = 0; v < n; ++v) d[v][v] = 0.0;
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
            }
        }
    }
    return d;
}

}  // namespace testsupport
