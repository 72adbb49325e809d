#pragma once

#include <string>

#include "genusembed/surface_map.h"

namespace genusembed {

enum class Family { torus_grid, genus_sum, bouquet, path_star, planar_grid };

struct GeneratorSpec {
    Family family = Family::torus_grid;
    int rows = 3;
    int cols = 3;
    int genus = 1;
    int arms = 1;
    int arm_length = 1;
};

Family parse_family(const std::string& s);

/// C_m x C_n with the same (N, E, S, W) rotation at every vertex. Genus 1.
EmbeddedGraph torus_grid(int rows, int cols);

/// `genus` torus grids of size m x m chained by unit bridge edges. Genus `genus`.
EmbeddedGraph genus_sum(int genus, int m);

/// One vertex with 2g interleaved unit loops a1 b1 a1' b1' ... Genus g.
EmbeddedGraph bouquet(int genus);

/// k unit paths of length L sharing the root "r". Planar.
EmbeddedGraph path_star(int arms, int length);

/// Plane m x n grid. Planar.
EmbeddedGraph planar_grid(int rows, int cols);

EmbeddedGraph generate(const GeneratorSpec& spec);

}  // namespace genusembed
