// Command-line front end: generate, check, score-partition, absorbers,
// profile, solve, sweep.

#include "ohc/absorption.hpp"
#include "ohc/conditions.hpp"
#include "ohc/edge_list.hpp"
#include "ohc/extremal.hpp"
#include "ohc/hamilton.hpp"
#include "ohc/report.hpp"
#include "ohc/sweep.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ohc;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kPartial = 3;

struct Global {
    std::uint64_t seed = 0;
    bool json = false;
    std::string out;
    std::optional<std::string> timestamp;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Input {
    std::string bytes;
    OrientedGraph graph;
};

Input load(const std::string& path) {
    Input in{slurp(path), {}};
    in.graph = parse_edge_list(in.bytes);
    return in;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

RunManifest manifest(const Global& g, std::string command, const std::string& input, Json params) {
    RunManifest m;
    m.command = std::move(command);
    m.input_digest = input.empty() ? "" : digest(input);
    m.seed = g.seed;
    m.params = std::move(params);
    m.timestamp = manifest_timestamp(g.timestamp);
    return m;
}

std::vector<VertexId> parse_ids(const std::string& text) {
    std::vector<VertexId> ids;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) ids.push_back(std::stoul(tok));
    return ids;
}

void require_vertex(const OrientedGraph& g, VertexId v) {
    if (v >= g.order()) throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v) + " out of range");
}

std::string margin_text(const std::optional<Rational>& m) { return m ? to_string(*m) : "inf"; }

// ---------------------------------------------------------------------------

struct GenerateOpts {
    std::size_t n = 0;
    std::size_t a = 0;
    std::size_t ac_edges = 0;
    std::size_t d_edges = 0;
    std::string out;
};

int run_generate(const Global& g, const GenerateOpts& o) {
    auto p = table_params(o.n, o.a);
    p.ac_edges = o.ac_edges;
    p.d_edges = o.d_edges;
    p.seed = g.seed;
    const auto inst = generate_extremal(p);
    const std::string edges = emit_edge_list(inst.graph);
    write_text(o.out, edges);
    const Json result{{"params", params_json(inst.params)},
                      {"partition", partition_json(inst.partition)},
                      {"arcs", inst.graph.arc_count()}};
    const std::string report = emit_report(manifest(g, "generate", edges, params_json(p)), result);
    if (!o.out.empty()) write_text(o.out + ".json", report);
    if (g.json && !o.out.empty()) std::cout << report;
    return kOk;
}

struct CheckOpts {
    std::string input;
    std::string condition;
    std::string sigma;
    std::string set;
};

int run_check(const Global& g, const CheckOpts& o) {
    const auto in = load(o.input);
    ConditionReport r;
    Json params{{"condition", o.condition}};
    if (o.condition == "ore") {
        r = check_ore(in.graph);
    } else if (o.condition == "semideg") {
        r = check_semidegree_consequence(in.graph);
    } else if (o.condition == "gh") {
        r = check_ghouila_houri(in.graph);
    } else if (o.condition == "woodall") {
        r = check_woodall(in.graph);
    } else if (o.condition == "nash-williams") {
        r = check_nash_williams(in.graph);
    } else {
        if (o.sigma.empty()) throw CLI::ValidationError("--sigma", "sparse-set needs --sigma");
        const Rational sigma = parse_rational(o.sigma);
        const auto ids = parse_ids(o.set);
        for (VertexId v : ids) require_vertex(in.graph, v);
        r = check_sparse_set_bound(in.graph, VertexSet::from_range(in.graph.order(), ids), sigma);
        params["sigma"] = rational_json(sigma);
        params["set"] = ids;
    }
    if (g.json)
        write_text(g.out, emit_report(manifest(g, "check", in.bytes, params), condition_json(r)));
    else
        std::cout << r.condition << ": " << (r.satisfied ? "satisfied" : "violated") << " (margin "
                  << margin_text(r.margin) << ")\n";
    return r.satisfied ? kOk : kNegative;
}

struct ScoreOpts {
    std::string input;
    std::string partition;
    std::string eta = "1/20";
    std::string c_eta = "1";
    std::string reading = "template";
};

int run_score(const Global& g, const ScoreOpts& o) {
    const auto in = load(o.input);
    const Rational eta = parse_rational(o.eta);
    const Rational c_eta = parse_rational(o.c_eta);
    const SizeReading reading = o.reading == "literal" ? SizeReading::Literal : SizeReading::Template;
    Json result;
    ExtremalityReport rep;
    if (!o.partition.empty()) {
        Json pj = Json::parse(slurp(o.partition));
        // Accept a bare partition or a generate sidecar.
        if (pj.contains("result")) pj = pj["result"];
        if (pj.contains("partition")) pj = pj["partition"];
        const Partition4 part = partition_from_json(pj, in.graph.order());
        rep = verify_partition(in.graph, part, eta, c_eta, reading);
        result = {{"partition", partition_json(part)}, {"report", extremality_json(rep)}};
    } else {
        PartitionSearchOptions opt;
        opt.seed = g.seed;
        opt.reading = reading;
        const auto found = find_extremal_partition(in.graph, eta, c_eta, opt);
        if (!found) throw Error(ErrorKind::TooLarge, "partition search needs 4 <= n <= 512");
        rep = found->report;
        result = {{"partition", partition_json(found->partition)}, {"report", extremality_json(rep)}, {"searched", true}};
    }
    const Json params{{"eta", rational_json(eta)}, {"c_eta", rational_json(c_eta)}, {"reading", o.reading}};
    if (g.json) {
        write_text(g.out, emit_report(manifest(g, "score-partition", in.bytes, params), result));
    } else {
        std::cout << "verdict: " << (rep.verdict ? "eta-extremal" : "not eta-extremal") << "\n";
        for (const auto& e : rep.entries) std::cout << "  " << e.name << " slack " << to_string(e.slack) << "\n";
        if (rep.min_eta) std::cout << "min eta: " << to_string(*rep.min_eta) << "\n";
    }
    return rep.verdict ? kOk : kNegative;
}

struct AbsorberOpts {
    std::string input;
    std::string pair;
    std::string kind = "strong";
    std::size_t k = 1;
    std::optional<std::size_t> cap;
    std::string alpha1 = "1/64";
};

int run_absorbers(const Global& g, const AbsorberOpts& o) {
    const auto in = load(o.input);
    const auto ids = parse_ids(o.pair);
    if (ids.size() != 2) throw CLI::ValidationError("--pair", "expected u,v");
    const VertexId u = ids[0];
    const VertexId v = ids[1];
    require_vertex(in.graph, u);
    require_vertex(in.graph, v);
    Json items = Json::array();
    Json params{{"pair", ids}, {"kind", o.kind}};
    if (o.cap) params["cap"] = *o.cap;
    if (o.kind == "connector") {
        params["k"] = o.k;
        for (const auto& c : enumerate_connectors(in.graph, u, v, o.k, o.cap)) items.push_back(c.path.vertices);
    } else if (o.kind == "strong") {
        for (const auto& a : enumerate_strong_absorbers(in.graph, u, v, o.cap)) items.push_back({a.w, a.z});
    } else {
        const Rational alpha1 = parse_rational(o.alpha1);
        params["alpha1"] = rational_json(alpha1);
        for (const auto& a : enumerate_weak_absorbers(in.graph, u, v, alpha1, o.cap ? o.cap : kDefaultWeakCap))
            items.push_back({a.w, a.w2, a.z2, a.z});
    }
    if (g.json) {
        const Json result{{"count", items.size()}, {"items", items}};
        write_text(g.out, emit_report(manifest(g, "absorbers", in.bytes, params), result));
    } else {
        std::cout << items.size() << " " << o.kind << (o.kind == "connector" ? "s" : " absorbers") << "\n";
        for (const auto& it : items) std::cout << "  " << it.dump() << "\n";
    }
    return kOk;
}

int run_profile(const Global& g, const std::string& input) {
    const auto in = load(input);
    const auto prof = connectivity_profile(in.graph);
    const Json result = profile_json(prof);
    if (g.json || !g.out.empty()) {
        write_text(g.out, emit_report(manifest(g, "profile", in.bytes, Json::object()), result));
    } else {
        std::cout << prof.size() << " non-arc pairs, " << result["flagged"].get<std::size_t>() << " flagged\n";
    }
    return kOk;
}

struct SolveOpts {
    std::string input;
    std::string method = "dp";
};

int run_solve(const Global& g, const SolveOpts& o) {
    const auto in = load(o.input);
    HamiltonResult r;
    if (o.method == "brute")
        r = exact_brute(in.graph);
    else if (o.method == "dp")
        r = exact_dp(in.graph);
    else
        r = find_hamilton_absorption(in.graph, PipelineParams{}, g.seed);
    if (g.json) {
        write_text(g.out, emit_report(manifest(g, "solve", in.bytes, {{"method", o.method}}), result_json(r)));
    } else {
        std::cout << to_string(r.verdict) << "\n";
        if (r.certificate) {
            for (VertexId v : r.certificate->vertices) std::cout << v << ' ';
            std::cout << "\n";
        }
        if (const auto st = r.failed_stage()) std::cout << "failed stage: " << *st << "\n";
    }
    return r.verdict == Verdict::CycleFound ? kOk : kNegative;
}

int run_sweep_cmd(const Global& g, const std::string& spec_path, std::optional<std::size_t> workers) {
    const std::string bytes = slurp(spec_path);
    Json spec_json;
    try {
        spec_json = Json::parse(bytes);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("sweep spec is not JSON: ") + e.what());
    }
    SweepSpec spec = SweepSpec::from_json(spec_json);
    if (workers) spec.workers = *workers;
    const auto outcome = run_sweep(spec);
    Global gm = g;
    gm.seed = spec.seed;
    // Worker count does not affect results, so it stays out of the manifest.
    write_text(g.out, emit_report(manifest(gm, "sweep", bytes, spec.to_json()), outcome.report));
    if (!g.out.empty() && !g.json) {
        for (const auto& s : outcome.report["suites"])
            std::cerr << s["kind"].get<std::string>() << ": " << s["summary"].dump() << "\n";
    }
    return outcome.all_passed ? kOk : kPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oriented-graph Hamiltonicity toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Global global;
    std::string ts;
    app.add_option("--seed", global.seed, "Seed for every randomised step");
    app.add_flag("--json", global.json, "Emit a versioned JSON report");
    app.add_option("--out", global.out, "Write the report to this file");
    auto* ts_opt = app.add_option("--timestamp", ts, "Timestamp recorded in the manifest");

    GenerateOpts gen;
    auto* c_gen = app.add_subcommand("generate", "Sharp non-Hamiltonian construction");
    c_gen->add_option("--n", gen.n)->required();
    c_gen->add_option("--a", gen.a)->required();
    c_gen->add_option("--ac-edges", gen.ac_edges);
    c_gen->add_option("--d-edges", gen.d_edges);

    CheckOpts chk;
    auto* c_chk = app.add_subcommand("check", "Evaluate a degree condition");
    c_chk->add_option("--input", chk.input)->required();
    c_chk->add_option("--condition", chk.condition)
        ->required()
        ->check(CLI::IsMember({"ore", "semideg", "gh", "woodall", "nash-williams", "sparse-set"}));
    c_chk->add_option("--sigma", chk.sigma);
    c_chk->add_option("--set", chk.set);

    ScoreOpts sc;
    auto* c_sc = app.add_subcommand("score-partition", "Score a four-class partition for eta-extremality");
    c_sc->add_option("--input", sc.input)->required();
    c_sc->add_option("--partition", sc.partition, "JSON partition; searched for when omitted");
    c_sc->add_option("--eta", sc.eta);
    c_sc->add_option("--ceta", sc.c_eta);
    c_sc->add_option("--reading", sc.reading)->check(CLI::IsMember({"template", "literal"}));

    AbsorberOpts ab;
    auto* c_ab = app.add_subcommand("absorbers", "Enumerate connectors or absorbers of a pair");
    c_ab->add_option("--input", ab.input)->required();
    c_ab->add_option("--pair", ab.pair)->required();
    c_ab->add_option("--kind", ab.kind)->check(CLI::IsMember({"strong", "weak", "connector"}));
    c_ab->add_option("--k", ab.k)->check(CLI::Range(1, 3));
    c_ab->add_option("--cap", ab.cap);
    c_ab->add_option("--alpha1", ab.alpha1);

    std::string prof_input;
    auto* c_prof = app.add_subcommand("profile", "Connectivity profile of all non-arc pairs");
    c_prof->add_option("--input", prof_input)->required();

    SolveOpts sv;
    auto* c_sv = app.add_subcommand("solve", "Decide or search for a Hamilton cycle");
    c_sv->add_option("--input", sv.input)->required();
    c_sv->add_option("--method", sv.method)->check(CLI::IsMember({"brute", "dp", "absorb"}));

    std::string spec_path;
    std::optional<std::size_t> workers;
    auto* c_sw = app.add_subcommand("sweep", "Run experiment suites from a JSON spec");
    c_sw->add_option("--spec", spec_path)->required();
    c_sw->add_option("--workers", workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    if (ts_opt->count() > 0) global.timestamp = ts;

    try {
        if (c_gen->parsed()) {
            gen.out = global.out;
            return run_generate(global, gen);
        }
        if (c_chk->parsed()) return run_check(global, chk);
        if (c_sc->parsed()) return run_score(global, sc);
        if (c_ab->parsed()) return run_absorbers(global, ab);
        if (c_prof->parsed()) return run_profile(global, prof_input);
        if (c_sv->parsed()) return run_solve(global, sv);
        if (c_sw->parsed()) return run_sweep_cmd(global, spec_path, workers);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
