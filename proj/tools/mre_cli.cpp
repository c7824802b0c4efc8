// Command-line front end: explanation queries, baselines, GBF curves and the
// benchmark reproduction.
//
// Exit codes: 0 success, 1 parse/validation error, 2 impossible evidence,
// 3 benchmark mismatch.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mre/baselines.hpp"
#include "mre/bench.hpp"
#include "mre/infer.hpp"
#include "mre/kmre.hpp"
#include "mre/model.hpp"
#include "mre/relevance.hpp"
#include "mre/search.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInput = 1, kImpossible = 2, kMismatch = 3 };

struct Source {
    std::string fixture;
    std::string path;
};

mre::Network load(const Source& src) {
    if (!src.fixture.empty() && !src.path.empty())
        throw std::invalid_argument("give exactly one of --fixture or --network");
    if (!src.path.empty()) return mre::load_network_file(src.path);
    if (!src.fixture.empty()) return mre::fixture(src.fixture);
    throw std::invalid_argument("give one of --fixture or --network");
}

void add_source(CLI::App* cmd, Source& src) {
    cmd->add_option("--fixture", src.fixture, "Embedded fixture id (circuit, vacation1, vacation100, academe, asia, circuit2)");
    cmd->add_option("--network", src.path, "Network JSON file");
}

json scored_json(const mre::Network& net, const mre::ScoredExplanation& s) {
    json j;
    json x = json::object();
    for (const auto& [v, st] : s.x.bindings()) x[net.name(v)] = net.variable(v).states[st];
    j["explanation"] = x;
    j["text"] = net.format(s.x);
    j["score_kind"] = mre::score_kind_name(s.kind);
    j["score"] = std::isfinite(s.score) ? json(s.score) : json("inf");
    j["prior"] = s.prior;
    j["posterior"] = s.posterior;
    if (s.kind == mre::ScoreKind::Gbf) j["strength"] = mre::strength_name(s.strength);
    if (s.equivalents > 1) j["equivalents"] = s.equivalents;
    return j;
}

void print_rows(const mre::Network& net, const std::vector<mre::ScoredExplanation>& rows) {
    int rank = 0;
    for (const auto& s : rows) {
        std::string text = net.format(s.x);
        std::string extra;
        if (s.kind == mre::ScoreKind::Gbf) extra = std::string("  ") + mre::strength_name(s.strength);
        if (s.equivalents > 1) extra += "  [stands for " + std::to_string(s.equivalents) + " tied explanations]";
        std::printf("%2d. %-60s %10s%s\n", ++rank, text.c_str(), mre::format_score(s.score).c_str(), extra.c_str());
    }
}

struct ExplainArgs {
    Source src;
    std::vector<std::string> evidence;
    std::vector<std::string> targets;
    std::string method = "kmre";
    std::size_t k = 3;
    std::string format = "table";
    bool verbose = false;
    bool no_prune = false;
    double gbf_floor = 1.0;
    bool no_floor = false;
    bool no_collapse = false;
    std::string kmre_mode = "admitted";
    mre::BaselineParams params;
};

int cmd_explain(const ExplainArgs& a) {
    const mre::Network net = load(a.src);
    const mre::Assignment e = net.parse_bindings(a.evidence);
    if (e.empty()) throw std::invalid_argument("at least one --evidence VAR=state is required");
    std::vector<int> targets;
    for (const auto& t : a.targets) targets.push_back(net.index_of(t));
    mre::BaselineParams params = a.params;
    params.k = a.k;
    mre::check_params(params);

    json out;
    out["method"] = a.method;
    out["evidence"] = net.format(e);
    std::vector<mre::ScoredExplanation> rows;
    std::vector<mre::Exclusion> witnesses;

    if (a.method == "mre") {
        rows.push_back(mre::mre(net, e, {.prune = !a.no_prune}, targets));
    } else if (a.method == "kmre") {
        mre::KmreOptions o;
        o.k = a.k;
        o.use_floor = !a.no_floor;
        o.gbf_floor = a.gbf_floor;
        o.collapse = !a.no_collapse;
        if (a.kmre_mode == "full")
            o.mode = mre::KmreMode::Full;
        else if (a.kmre_mode != "admitted")
            throw std::invalid_argument("--kmre-mode must be admitted or full");
        auto res = mre::select_kmre(mre::score_all(net, e, targets), o);
        rows = res.selected;
        witnesses = res.excluded;
    } else if (a.method == "kmap") {
        rows = mre::k_map(net, e, a.k, targets);
    } else if (a.method == "ksimp") {
        for (const auto& s : mre::k_simp(net, e, params, targets)) rows.push_back(s.result);
    } else if (a.method == "etree" || a.method == "cetree") {
        auto tree = a.method == "etree" ? mre::explanation_tree(net, e, params, targets)
                                        : mre::causal_explanation_tree(net, e, params, targets);
        if (a.format == "json") {
            json t = json::parse(mre::tree_to_json(net, tree));
            out["tree"] = t;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << mre::tree_to_text(net, tree);
        }
        return kOk;
    } else {
        throw std::invalid_argument("unknown method '" + a.method + "'");
    }

    if (a.format == "json") {
        out["results"] = json::array();
        for (const auto& r : rows) out["results"].push_back(scored_json(net, r));
        if (a.verbose && !witnesses.empty()) {
            out["dominated"] = json::array();
            for (const auto& w : witnesses)
                out["dominated"].push_back({{"candidate", net.format(w.candidate.x)},
                                            {"score", w.candidate.score},
                                            {"relation", mre::dominance_name(w.relation)},
                                            {"witness", net.format(w.witness.x)},
                                            {"witness_score", w.witness.score}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        print_rows(net, rows);
        if (a.verbose)
            for (const auto& w : witnesses)
                std::printf("    dominated: %s %s  (%s by %s %s)\n", net.format(w.candidate.x).c_str(),
                            mre::format_score(w.candidate.score).c_str(), mre::dominance_name(w.relation),
                            net.format(w.witness.x).c_str(), mre::format_score(w.witness.score).c_str());
    }
    return kOk;
}

int cmd_bench(const std::vector<std::string>& ids, const std::string& format, bool ignore_known) {
    std::vector<std::string> names;
    for (const auto& id : ids.empty() ? std::vector<std::string>{"all"} : ids)
        for (auto& n : mre::resolve_scenarios(id)) names.push_back(n);
    std::vector<mre::ScenarioReport> reports;
    for (const auto& n : names) reports.push_back(mre::run_scenario(n));
    std::cout << (format == "json" ? mre::report_json(reports) + "\n" : mre::report_text(reports));
    bool ok = true;
    for (const auto& r : reports)
        for (const auto& row : r.rows)
            if (!row.pass && !(ignore_known && row.expected.known_issue)) ok = false;
    return ok ? kOk : kMismatch;
}

int cmd_curve(double ratio, double delta, const std::string& grid, const std::string& out_path) {
    if ((ratio > 0) == (delta > 0)) throw std::invalid_argument("give exactly one of --fixed-ratio or --fixed-delta");
    auto rows = mre::gbf_curve(mre::parse_grid(grid), ratio > 0 ? mre::CurveMode::FixedRatio : mre::CurveMode::FixedDelta,
                               ratio > 0 ? ratio : delta);
    std::string csv = mre::curve_csv(rows);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot write '" + out_path + "'");
        f << csv;
    }
    return kOk;
}

int cmd_validate(const Source& src) {
    mre::NetworkSpec spec;
    if (!src.path.empty()) {
        std::ifstream in(src.path);
        if (!in) throw std::invalid_argument("cannot open '" + src.path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        spec = mre::parse_network(ss.str());
    } else {
        spec = load(src).spec();
    }
    auto problems = mre::validate(spec);
    if (problems.empty()) {
        std::cout << "ok\n";
        return kOk;
    }
    for (const auto& p : problems) std::cerr << p << "\n";
    return kInput;
}

int cmd_show(const Source& src, const std::string& format) {
    const mre::Network net = load(src);
    if (format == "json") {
        std::cout << mre::serialize_network(net.spec());
        return kOk;
    }
    for (int v = 0; v < static_cast<int>(net.size()); ++v) {
        const auto& var = net.variable(v);
        std::string states, parents;
        for (const auto& s : var.states) states += (states.empty() ? "" : ", ") + s;
        for (int p : net.parents(v)) parents += (parents.empty() ? "" : ", ") + net.name(p);
        std::printf("%-18s %-12s {%s}%s\n", var.name.c_str(), mre::role_name(var.role), states.c_str(),
                    parents.empty() ? "" : ("  <- " + parents).c_str());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Most relevant explanations in discrete Bayesian networks"};
    app.require_subcommand(1);

    ExplainArgs ex;
    auto* explain = app.add_subcommand("explain", "Explain evidence with one method");
    add_source(explain, ex.src);
    explain->add_option("--evidence,-e", ex.evidence, "Evidence binding VAR=state (repeatable)");
    explain->add_option("--targets", ex.targets, "Override target variables (comma-separated)")->delimiter(',');
    explain->add_option("--method,-m", ex.method, "mre | kmre | kmap | ksimp | etree | cetree");
    explain->add_option("--k", ex.k, "Number of explanations");
    explain->add_option("--format", ex.format, "table | json")->check(CLI::IsMember({"table", "json"}));
    explain->add_flag("--verbose,-v", ex.verbose, "Show dominance witnesses for pruned candidates");
    explain->add_flag("--no-prune", ex.no_prune, "Disable the d-separation prune in mre");
    explain->add_option("--gbf-floor", ex.gbf_floor, "K-MRE inclusion floor (exclusive)");
    explain->add_flag("--no-floor", ex.no_floor, "Disable the K-MRE floor");
    explain->add_flag("--no-collapse", ex.no_collapse, "Keep interchangeable tied explanations separate");
    explain->add_option("--kmre-mode", ex.kmre_mode, "admitted | full");
    explain->add_option("--threshold-et-mi", ex.params.et_mi_threshold, "Explanation tree MI threshold (bits)");
    explain->add_option("--threshold-et-prob", ex.params.et_branch_prob_threshold, "Explanation tree branch probability threshold");
    explain->add_option("--threshold-cet", ex.params.cet_flow_threshold, "Causal tree flow threshold (bits)");
    explain->add_option("--threshold-simp", ex.params.simp_likelihood_factor, "K-SIMP likelihood reduction factor");

    std::vector<std::string> bench_ids;
    std::string bench_format = "table";
    bool ignore_known = false;
    auto* bench = app.add_subcommand("bench", "Reproduce the reference tables");
    bench->add_option("ids", bench_ids, "Scenario or fixture ids, or 'all'");
    bench->add_option("--format", bench_format, "table | json")->check(CLI::IsMember({"table", "json"}));
    bench->add_flag("--ignore-known", ignore_known, "Do not fail on rows flagged as known reference inconsistencies");

    double ratio = 0, delta = 0;
    std::string grid = "0.01:0.49:0.01", out_path;
    auto* curve = app.add_subcommand("curve", "GBF as a function of the prior");
    curve->add_option("--fixed-ratio", ratio, "Belief update ratio r (posterior = r * prior)");
    curve->add_option("--fixed-delta", delta, "Probability increase (posterior = prior + delta)");
    curve->add_option("--grid", grid, "lo:hi:step");
    curve->add_option("--out,-o", out_path, "CSV output path (default stdout)");

    Source vsrc;
    auto* validate = app.add_subcommand("validate", "Validate a network");
    add_source(validate, vsrc);

    Source ssrc;
    std::string show_format = "table";
    auto* show = app.add_subcommand("show", "Pretty-print a network");
    add_source(show, ssrc);
    show->add_option("--format", show_format, "table | json")->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*explain) return cmd_explain(ex);
        if (*bench) return cmd_bench(bench_ids, bench_format, ignore_known);
        if (*curve) return cmd_curve(ratio, delta, grid, out_path);
        if (*validate) return cmd_validate(vsrc);
        if (*show) return cmd_show(ssrc, show_format);
    } catch (const mre::ImpossibleEvidence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kImpossible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kOk;
}
