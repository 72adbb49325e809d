#include "genusembed/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include "genusembed/errors.h"
#include "genusembed/graph_io.h"
#include "genusembed/rng.h"

namespace genusembed {

SamplerKind parse_sampler(const std::string& s) {
    if (s == "tree") return SamplerKind::tree;
    if (s == "planar") return SamplerKind::planar;
    throw InputError("unknown sampler '" + s + "' (expected tree or planar)");
}

std::vector<std::pair<VertexId, VertexId>> distortion_pairs(const std::vector<VertexId>& points,
                                                            const DistortionOptions& opt) {
    const std::size_t n = points.size();
    const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
    std::vector<std::pair<VertexId, VertexId>> out;
    if (n <= opt.all_pairs_limit || opt.sampled_pairs >= total) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(points[i], points[j]);
        }
        return out;
    }
    Rng rng = Rng::stream(opt.first_seed, Stream::pair_sample);
    std::set<std::pair<VertexId, VertexId>> chosen;
    while (chosen.size() < opt.sampled_pairs) {
        const auto i = static_cast<std::size_t>(rng.below(n));
        const auto j = static_cast<std::size_t>(rng.below(n));
        if (i == j) continue;
        chosen.insert({points[std::min(i, j)], points[std::max(i, j)]});
    }
    return {chosen.begin(), chosen.end()};
}

namespace {

struct SampleView {
    Adjacency adj;
    std::vector<std::size_t> image;
    bool safe_mode = false;
};

Adjacency tree_adjacency(const EmbedTree& t, double unscale) {
    Adjacency adj(t.nodes.size());
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        const TreeEdge& e = t.edges[i];
        adj[e.a].push_back(Arc{e.b, i, e.length / unscale});
        adj[e.b].push_back(Arc{e.a, i, e.length / unscale});
    }
    return adj;
}

class Sampler {
public:
    Sampler(const EmbeddedGraph& g, const DistortionOptions& opt) : opt_(opt) {
        if (opt.sampler == SamplerKind::tree) {
            const VertexId r = opt.root ? *opt.root : default_root(g);
            tree_inst_ = prepare_paths(g, default_path_system(g, r));
            for (VertexId v : tree_inst_.paths.point_set) {
                if (!tree_inst_.is_subdivision(v)) points_.push_back(v);
            }
        } else {
            plan_ = prepare_planarization(g);
            points_.resize(g.vertex_count());
            std::iota(points_.begin(), points_.end(), VertexId{0});
        }
    }

    const std::vector<VertexId>& points() const { return points_; }

    SampleView draw(std::uint64_t seed) const {
        SampleView s;
        if (opt_.sampler == SamplerKind::tree) {
            const TreeSample t = sample_tree(tree_inst_, seed, TreeOptions{opt_.lambda});
            s.adj = tree_adjacency(t.tree, tree_inst_.scale_factor);
            s.image = t.tree.f;
            s.safe_mode = t.safe_mode;
        } else {
            const PlanarizationSample p = sample_planarization(plan_, seed, PlanarOptions{opt_.lambda});
            s.adj = adjacency(p.planar_out);
            s.image = p.vmap;
            s.safe_mode = p.provenance.safe_mode;
        }
        return s;
    }

private:
    DistortionOptions opt_;
    PreparedPaths tree_inst_;
    PlanarPlan plan_;
    std::vector<VertexId> points_;
};

struct SeedResult {
    std::vector<double> d;
    bool safe_mode = false;
};

SeedResult evaluate(const Sampler& sampler, std::uint64_t seed, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    const SampleView s = sampler.draw(seed);
    SeedResult r;
    r.safe_mode = s.safe_mode;
    r.d.resize(pairs.size());
    std::vector<double> row;
    VertexId current = kNone;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].first != current) {
            current = pairs[k].first;
            const std::size_t src[] = {s.image[current]};
            row = dijkstra(s.adj, src);
        }
        r.d[k] = row[s.image[pairs[k].second]];
    }
    return r;
}

}  // namespace

DistortionReport empirical_distortion(const EmbeddedGraph& g, const DistortionOptions& opt) {
    if (opt.seeds == 0) throw InputError("at least one seed is required");
    const auto start = std::chrono::steady_clock::now();
    const Sampler sampler(g, opt);
    const auto pairs = distortion_pairs(sampler.points(), opt);

    DistortionReport rep;
    rep.seeds = opt.seeds;
    rep.first_seed = opt.first_seed;
    rep.all_pairs = pairs.size() * 2 == sampler.points().size() * (sampler.points().size() - 1);
    rep.pairs.resize(pairs.size());
    {
        std::vector<VertexId> sources;
        for (const auto& p : pairs) {
            if (sources.empty() || sources.back() != p.first) sources.push_back(p.first);
        }
        const DistanceTable dg = shortest_distances(g, sources);
        std::size_t row = 0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (k > 0 && pairs[k].first != pairs[k - 1].first) ++row;
            rep.pairs[k] = PairRecord{pairs[k].first, pairs[k].second, dg[row][pairs[k].second], 0.0, 0.0, 0};
        }
    }

    unsigned threads = opt.threads != 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, opt.seeds));
    std::vector<double> sum(pairs.size(), 0.0);
    double sum_worst = 0.0;
    for (std::size_t base = 0; base < opt.seeds; base += threads) {
        const std::size_t block = std::min<std::size_t>(threads, opt.seeds - base);
        std::vector<SeedResult> results(block);
        std::vector<std::exception_ptr> errors(block);
        auto work = [&](std::size_t i) {
            try {
                results[i] = evaluate(sampler, opt.first_seed + base + i, pairs);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        };
        if (block == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < block; ++i) pool.emplace_back(work, i);
            for (auto& t : pool) t.join();
        }
        // Accumulate in seed order so the sums match a sequential run bit for bit.
        for (std::size_t i = 0; i < block; ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            const SeedResult& r = results[i];
            rep.safe_mode_samples += r.safe_mode ? 1 : 0;
            double worst = 0.0;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                PairRecord& p = rep.pairs[k];
                sum[k] += r.d[k];
                p.max_out = std::max(p.max_out, r.d[k]);
                const double st = r.d[k] / p.d_g;
                rep.min_stretch = std::min(rep.min_stretch, st);
                worst = std::max(worst, st);
            }
            sum_worst += worst;
        }
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        PairRecord& p = rep.pairs[k];
        p.samples = opt.seeds;
        p.mean_out = sum[k] / static_cast<double>(opt.seeds);
        rep.distortion = std::max(rep.distortion, p.stretch());
    }
    rep.mean_sample_max_stretch = sum_worst / static_cast<double>(opt.seeds);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

OracleResult bruteforce_expectation_oracle(const EmbeddedGraph& g, const PathSystem& ps, int grid_bits) {
    if (ps.size() > kOracleMaxPaths) throw InputError("oracle supports at most 3 paths");
    if (ps.point_set.size() > kOracleMaxPoints) throw InputError("oracle supports at most 40 points");
    if (grid_bits < 0 || grid_bits > kOracleMaxGridBits) throw InputError("oracle grid_bits must be in [0, 8]");
    const PreparedPaths inst = prepare_paths(g, ps);

    OracleResult out;
    for (VertexId v : inst.paths.point_set) {
        if (!inst.is_subdivision(v)) out.points.push_back(v);
    }
    const std::size_t n = g.vertex_count();
    DistanceTable sum(n, std::vector<double>(n, 0.0));
    const std::size_t cells = std::size_t{1} << grid_bits;
    std::vector<std::size_t> sigma(ps.size());
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        for (std::size_t a = 0; a < cells; ++a) {
            for (std::size_t b = 0; b < cells; ++b) {
                RandomnessRecord rnd;
                rnd.alpha = (static_cast<double>(a) + 0.5) / static_cast<double>(cells);
                rnd.beta = 1.0 + (static_cast<double>(b) + 0.5) / static_cast<double>(cells);
                rnd.sigma = sigma;
                const PartitionHierarchy h = build_hierarchy(inst, rnd);
                EmbedTree t = build_tree(h, inst, 1.0);
                if (count_contractions(t, inst) > 0) t = build_tree(h, inst, kSafeLambda);
                for (VertexId u : out.points) {
                    const auto d = t.distances_from(t.f[u]);
                    for (VertexId v : out.points) sum[u][v] += d[t.f[v]] / inst.scale_factor;
                }
                ++out.trees;
            }
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    out.expected.assign(n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
    for (VertexId u : out.points) {
        for (VertexId v : out.points) out.expected[u][v] = sum[u][v] / static_cast<double>(out.trees);
    }
    return out;
}

void write_distortion_csv(std::ostream& out, const EmbeddedGraph& g, const DistortionReport& r) {
    out << "u,v,d_g,mean_out,max_out,stretch\n";
    for (const PairRecord& p : r.pairs) {
        out << g.vertex_name(p.u) << ',' << g.vertex_name(p.v) << ',' << format_length(p.d_g) << ','
            << format_length(p.mean_out) << ',' << format_length(p.max_out) << ',' << format_length(p.stretch())
            << '\n';
    }
    out << "aggregate," << r.seeds << ',' << r.pairs.size() << ',' << format_length(r.min_stretch) << ','
        << format_length(r.mean_sample_max_stretch) << ',' << format_length(r.distortion) << '\n';
}

}  // namespace genusembed
