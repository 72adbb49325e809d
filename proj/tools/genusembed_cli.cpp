// Command-line front end: gen, genus, cutgraph, partitions, tree, planarize, eval.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "genusembed/errors.h"
#include "genusembed/generators.h"
#include "genusembed/graph_io.h"
#include "genusembed/harness.h"
#include "genusembed/planarization.h"

using namespace genusembed;

namespace {

struct Common {
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    std::string root;
};

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

VertexId resolve_root(const EmbeddedGraph& g, const std::string& name) {
    if (name.empty()) return default_root(g);
    const auto v = g.find_vertex(name);
    if (!v) throw InputError("unknown root vertex '" + name + "'");
    return *v;
}

std::string names(const EmbeddedGraph& g, const std::vector<VertexId>& vs) {
    std::string out;
    for (VertexId v : vs) out += " " + g.vertex_name(v);
    return out;
}

std::string run_gen(const GeneratorSpec& spec) { return emit_graph(generate(spec)); }

std::string run_genus(const Common& c) {
    const EmbeddedGraph g = load_graph(c.input);
    require_valid_map(g);
    if (!is_connected(g)) throw InputError("graph is not connected");
    return std::to_string(euler_genus(g)) + "\n";
}

std::string path_lines(const EmbeddedGraph& g, const PathSystem& ps) {
    std::string out;
    for (std::size_t k = 0; k < ps.paths.size(); ++k) out += "path " + std::to_string(k) + names(g, ps.paths[k]) + "\n";
    return out;
}

std::string run_cutgraph(const Common& c, const std::string& paths_file) {
    const EmbeddedGraph g = load_graph(c.input);
    require_valid_map(g);
    const VertexId r = resolve_root(g, c.root);
    const CutGraph cg = greedy_system_of_loops(g, r);
    const PathSystem ps = decompose_into_paths(cg, g, r);
    std::ostringstream out;
    out << "root " << g.vertex_name(r) << "\n";
    out << "genus " << euler_genus(g) << "\n";
    const DiskCertificate& cert = cg.certificate;
    out << "certificate vertices " << cert.vertices << " edges " << cert.edges << " faces " << cert.faces
        << " connected " << cert.connected << " pass " << cert.pass << "\n";
    for (std::size_t k = 0; k < cg.loops.size(); ++k) {
        const Loop& l = cg.loops[k];
        std::vector<VertexId> walk = l.to_u;
        walk.insert(walk.end(), l.from_v.begin(), l.from_v.end());
        out << "loop " << k << " edge " << g.edge(l.edge).name << " length " << format_length(l.length) << " vertices"
            << names(g, walk) << "\n";
    }
    out << "cut";
    for (EdgeId e : cg.edges) out << " " << g.edge(e).name;
    out << "\n";
    out << path_lines(g, ps);
    if (!paths_file.empty()) write_out(paths_file, path_lines(g, ps));
    return out.str();
}

std::string run_partitions(const Common& c) {
    const EmbeddedGraph g = load_graph(c.input);
    require_valid_map(g);
    const VertexId r = resolve_root(g, c.root);
    const PreparedPaths inst = prepare_paths(g, default_path_system(g, r));
    const PartitionHierarchy h = build_hierarchy(inst, c.seed);
    const EmbeddedGraph& pg = inst.graph;
    std::ostringstream out;
    out << "randomness alpha=" << format_length(h.randomness.alpha) << " beta=" << format_length(h.randomness.beta)
        << " sigma=";
    for (std::size_t i = 0; i < h.randomness.sigma.size(); ++i) out << (i ? "," : "") << h.randomness.sigma[i];
    out << "\n";
    out << path_lines(pg, inst.paths);
    for (int i = h.top_level; i >= 0; --i) {
        for (std::size_t id : h.levels[i]) {
            const Cluster& cl = h.clusters[id];
            out << "cluster " << i << " " << id << " trunk " << cl.trunk << " band "
                << (cl.band ? std::to_string(*cl.band) : std::string("-")) << " parent "
                << (cl.parent == kNone ? std::string("-") : std::to_string(cl.parent)) << " members"
                << names(pg, cl.members) << "\n";
        }
    }
    const HierarchyAudit a = audit_hierarchy(h, inst);
    out << "# refinement " << a.refinement << " partition " << a.partition << " singletons_on_trunk "
        << a.singletons_on_trunk << " diameter_violations " << a.diameter_violations << " max_diameter_ratio "
        << format_length(a.max_diameter_ratio) << "\n";
    return out.str();
}

std::string run_tree(const Common& c, std::optional<double> lambda) {
    const EmbeddedGraph g = load_graph(c.input);
    require_valid_map(g);
    const VertexId r = resolve_root(g, c.root);
    const TreeSample s = sample_tree_embedding(g, default_path_system(g, r), c.seed, TreeOptions{lambda});
    const EmbeddedGraph& pg = s.prepared.graph;
    std::ostringstream out;
    out << "# seed " << c.seed << " lambda " << format_length(s.tree.lambda) << "\n";
    for (std::size_t k = 0; k < s.tree.nodes.size(); ++k) {
        const TreeNode& n = s.tree.nodes[k];
        out << "node " << k << " kind " << (n.kind == NodeKind::copy ? "copy" : "stem") << " source "
            << pg.vertex_name(n.source) << " cluster " << n.cluster << "\n";
    }
    for (const TreeEdge& e : s.tree.edges) out << "tedge " << e.a << " " << e.b << " " << format_length(e.length) << "\n";
    for (VertexId v = 0; v < s.tree.f.size(); ++v) {
        if (s.tree.f[v] != kNone) out << "map " << pg.vertex_name(v) << " " << s.tree.f[v] << "\n";
    }
    const TreeAudit a = audit_tree(s.tree, s.hierarchy, s.prepared);
    out << "# safe_mode " << s.safe_mode << " empty_trunk_fallbacks " << s.tree.empty_trunk_fallbacks << " is_tree "
        << a.is_tree << " contraction_violations " << a.contraction_violations << "\n";
    return out.str();
}

std::string run_planarize(const Common& c, std::optional<double> lambda) {
    const EmbeddedGraph g = load_graph(c.input);
    const PlanarPlan plan = prepare_planarization(g);
    const PlanarizationSample s = sample_planarization(plan, c.seed, PlanarOptions{lambda});
    std::ostringstream out;
    write_graph(out, s.planar_out);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "map " << g.vertex_name(v) << " " << s.planar_out.vertex_name(s.vmap[v]) << "\n";
    }
    const Provenance& p = s.provenance;
    out << "# provenance\n";
    out << "# seed " << p.seed << "\n";
    out << "# genus " << p.genus << "\n";
    out << "# scale_factor " << format_length(p.scale_factor) << "\n";
    out << "# lambda " << format_length(p.lambda) << "\n";
    out << "# safe_mode " << p.safe_mode << "\n";
    out << "# empty_trunk_fallbacks " << p.empty_trunk_fallbacks << "\n";
    out << "# ball_carves " << p.ball_carves << "\n";
    out << "# tree_nodes " << p.tree_nodes << "\n";
    out << "# portals_used " << p.portals_used << "\n";
    if (plan.genus > 0) {
        const std::vector<double> beta = estimate_lipschitz(plan.inst.residue, 16);
        out << "# beta_hat";
        for (double b : beta) out << " " << format_length(b);
        out << "\n";
    }
    return out.str();
}

std::string run_eval(const Common& c, const std::string& mode, std::size_t samples, unsigned threads) {
    const EmbeddedGraph g = load_graph(c.input);
    require_valid_map(g);
    DistortionOptions opt;
    opt.sampler = parse_sampler(mode);
    opt.seeds = samples;
    opt.first_seed = c.seed;
    opt.threads = threads;
    if (!c.root.empty()) opt.root = resolve_root(g, c.root);
    const DistortionReport r = empirical_distortion(g, opt);
    std::ostringstream out;
    write_distortion_csv(out, g, r);
    std::cerr << "seeds " << r.seeds << " pairs " << r.pairs.size() << " distortion " << format_length(r.distortion)
              << " min_stretch " << format_length(r.min_stretch) << " wall_seconds " << r.wall_seconds << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random planar and tree embeddings of graphs on surfaces"};
    app.require_subcommand(1);
    Common c;
    GeneratorSpec spec;
    std::string family = "torus-grid";
    std::string paths_file;
    std::optional<double> lambda;
    std::string mode = "planar";
    std::size_t samples = 100;
    unsigned threads = 0;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("file", c.input, "input graph")->required();
        sub->add_option("--seed", c.seed, "random seed");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("--family", family, "torus-grid | genus-sum | bouquet | path-star | planar-grid");
    gen->add_option("--rows", spec.rows);
    gen->add_option("--cols", spec.cols);
    gen->add_option("--genus", spec.genus);
    gen->add_option("--arms", spec.arms);
    gen->add_option("--length", spec.arm_length);
    gen->add_option("--seed", c.seed, "accepted for uniformity; generators are deterministic");
    gen->add_option("--out", c.output);

    CLI::App* genus = app.add_subcommand("genus", "print the Euler genus");
    add_input(genus);

    CLI::App* cut = app.add_subcommand("cutgraph", "greedy system of loops");
    add_input(cut);
    cut->add_option("--root", c.root);
    cut->add_option("--emit-paths", paths_file, "also write the path system to this file");

    CLI::App* parts = app.add_subcommand("partitions", "hierarchy of alternating partitions");
    add_input(parts);
    parts->add_option("--root", c.root);

    CLI::App* tree = app.add_subcommand("tree", "random tree embedding of the path points");
    add_input(tree);
    tree->add_option("--root", c.root);
    tree->add_option("--lambda", lambda, "fixed root-edge scale");

    CLI::App* plan = app.add_subcommand("planarize", "random planar graph");
    add_input(plan);
    plan->add_option("--out", c.output);
    plan->add_option("--safe-lambda", lambda, "fixed root-edge scale for the tree");

    CLI::App* eval = app.add_subcommand("eval", "Monte-Carlo distortion estimate as CSV");
    add_input(eval);
    eval->add_option("--mode", mode, "tree | planar");
    eval->add_option("--samples", samples);
    eval->add_option("--root", c.root);
    eval->add_option("--threads", threads);
    eval->add_option("--out", c.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        std::string text;
        if (*gen) {
            spec.family = parse_family(family);
            text = run_gen(spec);
        } else if (*genus) {
            text = run_genus(c);
        } else if (*cut) {
            text = run_cutgraph(c, paths_file);
        } else if (*parts) {
            text = run_partitions(c);
        } else if (*tree) {
            text = run_tree(c, lambda);
        } else if (*plan) {
            text = run_planarize(c, lambda);
        } else if (*eval) {
            text = run_eval(c, mode, samples, threads);
        }
        write_out(c.output, text);
        return 0;
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.internal() ? 2 : 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
