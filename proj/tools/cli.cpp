#include "cli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "picard_strata/balance.hpp"
#include "picard_strata/degree_class.hpp"
#include "picard_strata/dual_graph.hpp"
#include "picard_strata/errors.hpp"
#include "picard_strata/graph_io.hpp"
#include "picard_strata/oracle.hpp"
#include "picard_strata/strata.hpp"

namespace picard_strata {

namespace {

using nlohmann::json;

std::string join_ids(const DualGraph& g) {
    std::string s;
    for (const Vertex& v : g.vertices()) {
        if (!s.empty()) s += ' ';
        s += v.id;
    }
    return s;
}

json vertices_json(const DualGraph& g) {
    json a = json::array();
    for (const Vertex& v : g.vertices()) a.push_back(v.id);
    return a;
}

std::string format_tuple(const std::vector<long long>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::vector<long long> load_multidegree(const std::string& inline_json,
                                        const std::string& file, int expect_len) {
    if (!inline_json.empty() && !file.empty())
        throw validation_error("pass the multidegree inline or as a file, not both");
    if (!inline_json.empty()) return multidegree_from_json(inline_json, expect_len);
    if (!file.empty()) return multidegree_from_json_file(file, expect_len);
    throw validation_error("a multidegree is required (--multidegree or --md-file)");
}

// Deterministic degree-0 class representatives: every twister class has a
// reduced representative with 0 <= v_i < k_i away from the last vertex, so a
// lexicographic scan of that box finds one vector per class label.
std::vector<std::vector<long long>> degree_zero_representatives(const DualGraph& g,
                                                                const DegreeClassGroup& grp) {
    const int n = g.vertex_count();
    std::map<std::vector<long long>, std::vector<long long>> reps; // label -> vector
    if (n == 1) return {{0}};
    std::vector<long long> cur(static_cast<size_t>(n), 0);
    auto sweep = [&](auto&& self, int v, long long sum) -> void {
        if (v == n - 1) {
            cur[static_cast<size_t>(v)] = -sum;
            auto label = grp.class_label(cur);
            if (!reps.count(label)) reps.emplace(std::move(label), cur);
            return;
        }
        for (long long x = 0; x < g.nonloop_degree(v); ++x) {
            cur[static_cast<size_t>(v)] = x;
            self(self, v + 1, sum + x);
        }
    };
    sweep(sweep, 0, 0);
    if (static_cast<long long>(reps.size()) != grp.class_count())
        throw internal_error("reduced degree-0 box missed a twister class");
    std::vector<std::vector<long long>> out;
    out.reserve(reps.size());
    for (auto& [label, vec] : reps) out.push_back(std::move(vec));
    return out;
}

struct CommandContext {
    std::ostream& out;
    bool as_json = false;
};

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

void cmd_classify(CommandContext ctx, const DualGraph& graph,
                  const std::vector<long long>& degrees, std::optional<long long> degree) {
    Multidegree md(graph, degrees);
    if (degree && *degree != md.total())
        throw validation_error("--degree " + std::to_string(*degree) +
                               " does not match the multidegree total " +
                               std::to_string(md.total()));
    const BalanceClass c = classify(md);
    if (ctx.as_json) {
        json doc;
        doc["format"] = 1;
        doc["command"] = "classify";
        doc["vertices"] = vertices_json(graph);
        doc["multidegree"] = degrees;
        doc["degree"] = md.total();
        doc["class"] = to_string(c);
        emit(ctx.out, doc);
    } else {
        ctx.out << to_string(c) << "\n";
    }
}

void cmd_balanced(CommandContext ctx, const DualGraph& graph, long long degree,
                  bool stably_only) {
    BalancedEnumeration res = enumerate_balanced(graph, degree, stably_only);
    if (ctx.as_json) {
        json doc;
        doc["format"] = 1;
        doc["command"] = "balanced";
        doc["vertices"] = vertices_json(graph);
        doc["degree"] = degree;
        doc["stably_only"] = stably_only;
        doc["count"] = res.multidegrees.size();
        doc["multidegrees"] = json::array();
        for (size_t i = 0; i < res.multidegrees.size(); ++i)
            doc["multidegrees"].push_back({{"degrees", res.multidegrees[i].degrees()},
                                           {"class", to_string(res.classes[i])}});
        if (!res.diagnostic.empty()) doc["diagnostic"] = res.diagnostic;
        emit(ctx.out, doc);
    } else {
        ctx.out << "vertices: " << join_ids(graph) << "\n";
        ctx.out << "degree: " << degree << "\n";
        if (!res.diagnostic.empty()) ctx.out << "note: " << res.diagnostic << "\n";
        ctx.out << "count: " << res.multidegrees.size() << "\n";
        for (size_t i = 0; i < res.multidegrees.size(); ++i)
            ctx.out << "  " << format_tuple(res.multidegrees[i].degrees()) << "  "
                    << to_string(res.classes[i]) << "\n";
    }
}

void cmd_class_group(CommandContext ctx, const DualGraph& graph,
                     std::optional<long long> degree, bool representatives) {
    DegreeClassGroup grp = class_group(graph);
    std::vector<std::vector<long long>> reps;
    if (representatives) {
        if (!degree)
            throw validation_error("--representatives needs --degree to pick the class degree");
        reps = degree_zero_representatives(graph, grp);
        const bool quasi = [&] {
            if (!graph.is_connected() || graph.arithmetic_genus() < 2) return false;
            StabilityClass sc = classify_stability(graph);
            return sc == StabilityClass::Stable || sc == StabilityClass::QuasistableNotStable;
        }();
        for (auto& r : reps) {
            r[0] += *degree;
            if (quasi) r = semibalanced_representative(graph, Multidegree(graph, r)).degrees();
        }
    }
    if (ctx.as_json) {
        json doc;
        doc["format"] = 1;
        doc["command"] = "class-group";
        doc["vertices"] = vertices_json(graph);
        doc["invariant_factors"] = grp.invariant_factors();
        doc["class_count"] = grp.class_count();
        if (representatives) {
            doc["degree"] = *degree;
            doc["representatives"] = reps;
        }
        emit(ctx.out, doc);
    } else {
        ctx.out << "vertices: " << join_ids(graph) << "\n";
        ctx.out << "invariant factors:";
        if (grp.invariant_factors().empty()) ctx.out << " (trivial group)";
        for (long long f : grp.invariant_factors()) ctx.out << " " << f;
        ctx.out << "\n";
        ctx.out << "class count: " << grp.class_count() << "\n";
        if (representatives) {
            ctx.out << "representatives (degree " << *degree << "):\n";
            for (const auto& r : reps) ctx.out << "  " << format_tuple(r) << "\n";
        }
    }
}

void cmd_strata_generators(CommandContext ctx, long long genus, long long degree) {
    const std::vector<VineGenerator> gens = enumerate_special_vine_generators(genus, degree);
    const GcdInvariant inv = gcd_invariant(genus, degree);
    if (ctx.as_json) {
        json doc;
        doc["format"] = 1;
        doc["command"] = "strata-generators";
        doc["genus"] = genus;
        doc["degree"] = degree;
        doc["gcd_invariant"] = inv.value;
        doc["generators"] = json::array();
        for (const VineGenerator& v : gens)
            doc["generators"].push_back({{"g1", v.g1}, {"g2", v.g2}, {"k", v.k}});
        emit(ctx.out, doc);
    } else {
        ctx.out << "genus: " << genus << "  degree: " << degree << "  gcd invariant: "
                << inv.value << "\n";
        if (gens.empty()) {
            ctx.out << "no d-special vine curves: every stable curve is d-general\n";
            return;
        }
        for (const VineGenerator& v : gens) {
            ctx.out << "  (g1=" << v.g1 << ", g2=" << v.g2 << ", k=" << v.k << ")  m:";
            for (long long m : v.m_values) ctx.out << " " << m;
            ctx.out << "\n";
        }
    }
}

void cmd_lattice(CommandContext ctx, long long genus, bool as_dot) {
    StratumLattice lat = divisor_lattice(genus);
    if (as_dot) {
        ctx.out << "digraph strata_lattice {\n";
        ctx.out << "  rankdir=BT;\n";
        for (long long m : lat.nodes()) ctx.out << "  \"" << m << "\";\n";
        for (const auto& [src, dst] : lat.cover_edges())
            ctx.out << "  \"" << src << "\" -> \"" << dst << "\";\n";
        ctx.out << "}\n";
        return;
    }
    if (ctx.as_json) {
        json doc;
        doc["format"] = 1;
        doc["command"] = "lattice";
        doc["genus"] = genus;
        doc["nodes"] = lat.nodes();
        doc["cover_edges"] = json::array();
        for (const auto& [src, dst] : lat.cover_edges())
            doc["cover_edges"].push_back({src, dst});
        doc["top"] = lat.top();
        doc["bottom"] = lat.bottom();
        emit(ctx.out, doc);
    } else {
        ctx.out << "genus: " << genus << "  (2g-2 = " << 2 * genus - 2 << ")\n";
        ctx.out << "strata:";
        for (long long m : lat.nodes()) ctx.out << " " << m;
        ctx.out << "\n";
        ctx.out << "covers (upward toward 1):\n";
        for (const auto& [src, dst] : lat.cover_edges())
            ctx.out << "  " << src << " -> " << dst << "\n";
    }
}

void cmd_stable_model(CommandContext ctx, const DualGraph& graph, bool as_dot) {
    DualGraph model = stable_model(graph);
    if (as_dot) {
        ctx.out << graph_to_dot(model);
        return;
    }
    if (ctx.as_json) {
        ctx.out << graph_to_json(model, 2) << "\n";
    } else {
        ctx.out << "vertices: " << join_ids(model) << "\n";
        for (const Vertex& v : model.vertices())
            ctx.out << "  " << v.id << "  genus " << v.genus << "\n";
        ctx.out << "edges: " << model.edge_count() << "\n";
        for (const auto& [a, b] : model.edges())
            ctx.out << "  " << model.vertex(a).id << " -- " << model.vertex(b).id << "\n";
    }
}

int cmd_oracle_verify(CommandContext ctx, const CorpusSpec& spec,
                      std::optional<std::pair<long long, long long>> range, int threads) {
    VerifyReport report = verify_corpus(spec, range, threads);
    if (ctx.as_json) {
        json doc;
        doc["format"] = 1;
        doc["command"] = "oracle-verify";
        doc["graphs"] = report.graphs;
        doc["checks"] = report.checks;
        doc["ok"] = report.ok();
        if (!report.ok()) {
            const VerifyWitness& w = *report.first_disagreement;
            json wit;
            wit["check"] = w.check;
            wit["graph"] = json::parse(w.graph_json);
            if (w.multidegree) wit["multidegree"] = *w.multidegree;
            if (w.degree) wit["degree"] = *w.degree;
            wit["expected"] = w.expected;
            wit["actual"] = w.actual;
            doc["witness"] = wit;
        }
        emit(ctx.out, doc);
    } else {
        ctx.out << "graphs: " << report.graphs << "\n";
        ctx.out << "checks: " << report.checks << "\n";
        if (report.ok()) {
            ctx.out << "all fast-path operations agree with their brute-force counterparts\n";
        } else {
            const VerifyWitness& w = *report.first_disagreement;
            ctx.out << "DISAGREEMENT in " << w.check << "\n";
            ctx.out << "graph: " << w.graph_json << "\n";
            if (w.multidegree) ctx.out << "multidegree: " << format_tuple(*w.multidegree) << "\n";
            if (w.degree) ctx.out << "degree: " << *w.degree << "\n";
            ctx.out << "expected: " << w.expected << "\n";
            ctx.out << "actual:   " << w.actual << "\n";
        }
    }
    return report.ok() ? 0 : 1;
}

std::pair<long long, long long> parse_degree_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw validation_error("--degree-range expects the form a..b");
    try {
        const long long a = std::stoll(text.substr(0, sep));
        const long long b = std::stoll(text.substr(sep + 2));
        if (a > b) throw validation_error("--degree-range expects a <= b");
        return {a, b};
    } catch (const std::invalid_argument&) {
        throw validation_error("--degree-range expects integers of the form a..b");
    } catch (const std::out_of_range&) {
        throw validation_error("--degree-range bounds out of range");
    }
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"balanced multidegrees, degree class groups and moduli strata "
                 "of nodal curves via their dual graphs"};
    app.name("picard-strata");
    app.require_subcommand(1);

    int exit_code = 0;

    // classify
    std::string cl_graph, cl_md, cl_md_file;
    std::optional<long long> cl_degree;
    bool cl_json = false;
    auto* classify_cmd =
        app.add_subcommand("classify", "classify one multidegree against the Basic Inequality");
    classify_cmd->add_option("--graph", cl_graph, "graph JSON file")->required();
    classify_cmd->add_option("--multidegree", cl_md, "inline JSON integer array");
    classify_cmd->add_option("--md-file", cl_md_file, "file with a JSON integer array");
    classify_cmd->add_option("--degree", cl_degree, "expected total degree (cross-checked)");
    classify_cmd->add_flag("--json", cl_json, "machine-readable output");
    classify_cmd->callback([&] {
        DualGraph g = graph_from_json_file(cl_graph);
        auto degrees = load_multidegree(cl_md, cl_md_file, g.vertex_count());
        cmd_classify({out, cl_json}, g, degrees, cl_degree);
    });

    // balanced
    std::string ba_graph;
    long long ba_degree = 0;
    bool ba_stably = false, ba_json = false;
    auto* balanced_cmd =
        app.add_subcommand("balanced", "enumerate balanced multidegrees of a total degree");
    balanced_cmd->add_option("--graph", ba_graph, "graph JSON file")->required();
    balanced_cmd->add_option("--degree", ba_degree, "total degree")->required();
    balanced_cmd->add_flag("--stably-only", ba_stably, "keep only stably balanced multidegrees");
    balanced_cmd->add_flag("--json", ba_json, "machine-readable output");
    balanced_cmd->callback([&] {
        DualGraph g = graph_from_json_file(ba_graph);
        cmd_balanced({out, ba_json}, g, ba_degree, ba_stably);
    });

    // class-group
    std::string cg_graph;
    std::optional<long long> cg_degree;
    bool cg_reps = false, cg_json = false;
    auto* cg_cmd = app.add_subcommand("class-group", "degree class group of the dual graph");
    cg_cmd->add_option("--graph", cg_graph, "graph JSON file")->required();
    cg_cmd->add_option("--degree", cg_degree, "total degree for class representatives");
    cg_cmd->add_flag("--representatives", cg_reps, "emit one representative per class");
    cg_cmd->add_flag("--json", cg_json, "machine-readable output");
    cg_cmd->callback([&] {
        DualGraph g = graph_from_json_file(cg_graph);
        cmd_class_group({out, cg_json}, g, cg_degree, cg_reps);
    });

    // strata-generators
    long long sg_genus = 0, sg_degree = 0;
    bool sg_json = false;
    auto* sg_cmd = app.add_subcommand("strata-generators",
                                      "minimal d-special vine curves of a given genus");
    sg_cmd->add_option("--genus", sg_genus, "arithmetic genus (>= 2)")->required();
    sg_cmd->add_option("--degree", sg_degree, "total degree (>= 1)")->required();
    sg_cmd->add_flag("--json", sg_json, "machine-readable output");
    sg_cmd->callback([&] { cmd_strata_generators({out, sg_json}, sg_genus, sg_degree); });

    // lattice
    long long la_genus = 0;
    bool la_dot = false, la_json = false;
    auto* la_cmd =
        app.add_subcommand("lattice", "stratum lattice on the positive divisors of 2g-2");
    la_cmd->add_option("--genus", la_genus, "arithmetic genus (>= 2)")->required();
    la_cmd->add_flag("--dot", la_dot, "DOT digraph output");
    la_cmd->add_flag("--json", la_json, "machine-readable output");
    la_cmd->callback([&] {
        if (la_dot && la_json) throw validation_error("--dot and --json are exclusive");
        cmd_lattice({out, la_json}, la_genus, la_dot);
    });

    // stable-model
    std::string sm_graph;
    bool sm_dot = false, sm_json = false;
    auto* sm_cmd =
        app.add_subcommand("stable-model", "contract all exceptional components");
    sm_cmd->add_option("--graph", sm_graph, "graph JSON file")->required();
    sm_cmd->add_flag("--dot", sm_dot, "DOT output of the stable model");
    sm_cmd->add_flag("--json", sm_json, "graph JSON output");
    sm_cmd->callback([&] {
        if (sm_dot && sm_json) throw validation_error("--dot and --json are exclusive");
        DualGraph g = graph_from_json_file(sm_graph);
        cmd_stable_model({out, sm_json}, g, sm_dot);
    });

    // oracle-verify
    CorpusSpec ov_spec;
    ov_spec.max_edges = 9;
    std::string ov_range, ov_filter = "any";
    int ov_threads = 0;
    bool ov_json = false;
    auto* ov_cmd = app.add_subcommand(
        "oracle-verify", "check fast-path operations against brute-force references");
    ov_cmd->add_option("--max-vertices", ov_spec.max_vertices, "corpus vertex bound (<= 5)")
        ->required();
    ov_cmd->add_option("--max-genus", ov_spec.max_genus, "corpus arithmetic genus bound (<= 8)")
        ->required();
    ov_cmd->add_option("--max-edges", ov_spec.max_edges, "corpus edge bound (<= 9)");
    ov_cmd->add_option("--degree-range", ov_range, "degrees to sweep, a..b (default 0..2g-3)");
    ov_cmd->add_option("--filter", ov_filter, "any|stable|quasistable|semistable");
    ov_cmd->add_option("--threads", ov_threads,
                       "worker cap (default: PICARD_STRATA_THREADS or hardware)");
    ov_cmd->add_flag("--json", ov_json, "machine-readable output");
    ov_cmd->callback([&] {
        std::optional<std::pair<long long, long long>> range;
        if (!ov_range.empty()) range = parse_degree_range(ov_range);
        if (ov_filter == "any") ov_spec.filter = StabilityFilter::Any;
        else if (ov_filter == "stable") ov_spec.filter = StabilityFilter::Stable;
        else if (ov_filter == "quasistable") ov_spec.filter = StabilityFilter::Quasistable;
        else if (ov_filter == "semistable") ov_spec.filter = StabilityFilter::Semistable;
        else throw validation_error("unknown --filter '" + ov_filter + "'");
        exit_code = cmd_oracle_verify({out, ov_json}, ov_spec, range, ov_threads);
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

} // namespace picard_strata
