#pragma once

// Monte-Carlo distortion estimates for the tree and planar samplers, an exact
// enumeration oracle for small tree instances, and CSV reporting.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genusembed/planarization.h"
#include "genusembed/tree_embedding.h"

namespace genusembed {

enum class SamplerKind { tree, planar };

SamplerKind parse_sampler(const std::string& s);

struct PairRecord {
    VertexId u = 0;
    VertexId v = 0;
    double d_g = 0.0;
    double mean_out = 0.0;
    double max_out = 0.0;
    std::size_t samples = 0;

    double stretch() const { return mean_out / d_g; }
};

struct DistortionReport {
    std::vector<PairRecord> pairs;
    double distortion = 0.0;               ///< max over pairs of mean_out / d_g
    double min_stretch = kInfinity;        ///< over every pair and sample
    double mean_sample_max_stretch = 0.0;  ///< mean over samples of the worst pair
    std::size_t seeds = 0;
    std::uint64_t first_seed = 0;
    bool all_pairs = true;
    std::size_t safe_mode_samples = 0;
    double wall_seconds = 0.0;
};

struct DistortionOptions {
    SamplerKind sampler = SamplerKind::planar;
    std::size_t seeds = 1;
    std::uint64_t first_seed = 0;
    std::optional<VertexId> root;    ///< tree sampler: root of the path system
    std::optional<double> lambda;
    std::size_t all_pairs_limit = 400;
    std::size_t sampled_pairs = 100000;
    unsigned threads = 0;            ///< 0 = hardware concurrency
};

/// Pair universe over `points` (sorted): all pairs up to the limit, else a
/// seeded uniform sample of distinct pairs, sorted.
std::vector<std::pair<VertexId, VertexId>> distortion_pairs(const std::vector<VertexId>& points,
                                                            const DistortionOptions& opt);

/// Runs the sampler for seeds first_seed .. first_seed + seeds - 1. The result
/// does not depend on the number of threads.
DistortionReport empirical_distortion(const EmbeddedGraph& g, const DistortionOptions& opt);

struct OracleResult {
    std::vector<VertexId> points;  ///< original vertices covered
    DistanceTable expected;        ///< by vertex id; NaN outside points
    std::size_t trees = 0;
};

inline constexpr std::size_t kOracleMaxPaths = 3;
inline constexpr std::size_t kOracleMaxPoints = 40;
inline constexpr int kOracleMaxGridBits = 8;

/// Exact mean of d_T over every permutation and a midpoint grid of
/// 2^grid_bits x 2^grid_bits (alpha, beta) values, in the units of `g`.
OracleResult bruteforce_expectation_oracle(const EmbeddedGraph& g, const PathSystem& ps, int grid_bits);

/// CSV: header, one row per pair, then an aggregate footer row.
void write_distortion_csv(std::ostream& out, const EmbeddedGraph& g, const DistortionReport& r);

}  // namespace genusembed
