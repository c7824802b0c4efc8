#include "mre/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "mre/baselines.hpp"
#include "mre/infer.hpp"
#include "mre/kmre.hpp"
#include "mre/relevance.hpp"
#include "mre/search.hpp"

namespace mre {

namespace {

using M = BenchMethod;

ExpectedRow row(M m, int rank, Bindings x, double score, double tol, std::string source) {
    ExpectedRow r;
    r.method = m;
    r.rank = rank;
    r.explanation = std::move(x);
    r.score = score;
    r.tolerance = tol;
    r.source = std::move(source);
    return r;
}

ExpectedRow with_note(ExpectedRow r, std::string note, bool known_issue = false) {
    r.note = std::move(note);
    r.known_issue = known_issue;
    return r;
}

const Bindings kCircuitEvidence{{"Input", "current"}, {"TotalOutput", "current"}};

std::vector<Scenario> build_scenarios() {
    std::vector<Scenario> out;
    const double t2 = 0.005, t4 = 0.00005, tv = 0.0005, exact = 1e-9;
    const std::string def = "defective";

    {
        Scenario s{"circuit", "circuit", kCircuitEvidence, {}};
        auto& r = s.rows;
        const std::string sec = "reference posteriors";
        r.push_back(row(M::Posterior, 0, {{"A", def}}, 0.391, tv, sec));
        r.push_back(row(M::Posterior, 0, {{"B", def}}, 0.649, tv, sec));
        r.push_back(row(M::Posterior, 0, {{"C", def}}, 0.446, tv, sec));
        r.push_back(row(M::Posterior, 0, {{"D", def}}, 0.301, tv, sec));
        const std::string t = "reference GBF ranking";
        r.push_back(row(M::GbfScore, 0, {{"B", def}, {"C", def}}, 42.62, t2, t));
        r.push_back(row(M::GbfScore, 0, {{"A", "ok"}, {"B", def}, {"C", def}}, 42.15, t2, t));
        r.push_back(row(M::GbfScore, 0, {{"B", def}, {"C", def}, {"D", "ok"}}, 39.93, t2, t));
        r.push_back(row(M::GbfScore, 0, {{"A", "ok"}, {"B", def}, {"C", def}, {"D", "ok"}}, 39.56, t2, t));
        r.push_back(with_note(row(M::GbfScore, 0, {{"A", def}}, 39.44, t2 + 0.01, t),
                              "printed as 39.45 in the method comparison; one unit of last-digit slack allowed"));
        r.push_back(with_note(row(M::GbfScore, 0, {{"A", def}, {"B", "ok"}}, 36.98, t2, t),
                              "model value 36.9871 under the stated parameters", true));
        r.push_back(with_note(row(M::GbfScore, 0, {{"A", def}, {"C", "ok"}}, 35.99, t2, t),
                              "model value 35.9973 under the stated parameters", true));
        r.push_back(row(M::GbfScore, 0, {{"B", def}, {"D", def}}, 35.88, t2, t));
        r.push_back(row(M::Kmre, 1, {{"B", def}, {"C", def}}, 42.62, t2, "reference method comparison"));
        r.push_back(row(M::Kmre, 2, {{"A", def}}, 39.45, t2, "reference method comparison"));
        r.push_back(row(M::Kmre, 3, {{"B", def}, {"D", def}}, 35.88, t2, "reference method comparison"));
        r.push_back(row(M::Kmap, 1, {{"A", "ok"}, {"B", def}, {"C", def}, {"D", "ok"}}, 0.0128, t4, "reference method comparison"));
        r.push_back(row(M::Kmap, 2, {{"A", def}, {"B", "ok"}, {"C", "ok"}, {"D", "ok"}}, 0.0099, t4, "reference method comparison"));
        r.push_back(row(M::Kmap, 3, {{"A", "ok"}, {"B", def}, {"C", "ok"}, {"D", def}}, 0.0082, t4, "reference method comparison"));
        r.push_back(row(M::Ksimp, 1, {{"B", def}, {"D", def}}, 0.9818, t4, "reference method comparison"));
        r.push_back(row(M::Ksimp, 2, {{"B", def}, {"C", def}}, 0.9683, t4, "reference method comparison"));
        r.push_back(row(M::Ksimp, 3, {{"A", def}}, 0.9014, t4, "reference method comparison"));
        ExpectedRow c = row(M::Cbf, 0, {{"A", def}}, 1.03, t2, "reference explaining-away value");
        c.given = {{"B", def}, {"C", def}};
        r.push_back(c);
        out.push_back(std::move(s));
    }

    const std::string hl = "healthy", un = "unhealthy", loc = "VacationLocation";
    {
        Scenario s{"vacation1-alive", "vacation1", {{"Alive", "alive"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison, alive (one-state)";
        r.push_back(row(M::Kmre, 1, {{"Healthy", hl}}, 1.3378, tv, t));
        r.push_back(row(M::Kmre, 2, {{loc, "home"}}, 1.0078, tv, t));
        r.push_back(row(M::KmreCount, 0, {}, 2, exact, t));
        r.push_back(row(M::Kmap, 1, {{"Healthy", hl}, {loc, "hiking"}}, 0.6336, tv, t));
        r.push_back(row(M::Kmap, 2, {{"Healthy", hl}, {loc, "home"}}, 0.1584, tv, t));
        r.push_back(row(M::Kmap, 3, {{"Healthy", un}, {loc, "home"}}, 0.1440, tv, t));
        r.push_back(row(M::Ksimp, 1, {{"Healthy", hl}}, 0.9900, tv, t));
        r.push_back(row(M::Ksimp, 2, {{loc, "home"}}, 0.9450, tv, t));
        r.push_back(row(M::KsimpCount, 0, {}, 2, exact, t));
        out.push_back(std::move(s));
    }
    {
        Scenario s{"vacation1-dead", "vacation1", {{"Alive", "dead"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison, dead (one-state)";
        r.push_back(row(M::Kmre, 1, {{"Healthy", un}, {loc, "hiking"}}, 36.00, tv, t));
        r.push_back(row(M::KmreCount, 0, {}, 1, exact, t));
        r.push_back(row(M::Kmap, 1, {{"Healthy", un}, {loc, "hiking"}}, 0.0360, tv, t));
        r.push_back(row(M::Kmap, 2, {{"Healthy", un}, {loc, "home"}}, 0.0160, tv, t));
        r.push_back(row(M::Kmap, 3, {{"Healthy", hl}, {loc, "hiking"}}, 0.0064, tv, t));
        r.push_back(row(M::Ksimp, 1, {{"Healthy", un}, {loc, "hiking"}}, 0.9000, tv, t));
        r.push_back(row(M::Ksimp, 2, {{"Healthy", un}}, 0.2600, tv, t));
        r.push_back(row(M::Ksimp, 3, {{loc, "hiking"}}, 0.0624, tv, t));
        out.push_back(std::move(s));
    }
    const std::string anytrip = "trail1 stands for the 100 interchangeable trails (\"any trip\")";
    {
        Scenario s{"vacation100-alive", "vacation100", {{"Alive", "alive"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison, alive (multi-state)";
        r.push_back(row(M::Kmre, 1, {{"Healthy", hl}}, 1.3378, tv, t));
        r.push_back(with_note(row(M::Kmre, 2, {{loc, "trail1"}}, 1.0034, tv, t), anytrip));
        r.push_back(row(M::KmreCount, 0, {}, 2, exact, t));
        r.push_back(row(M::Kmap, 1, {{"Healthy", un}, {loc, "home"}}, 0.1440, tv, t));
        r.push_back(row(M::Kmap, 2, {{"Healthy", hl}, {loc, "home"}}, 0.0792, tv, t));
        r.push_back(with_note(row(M::Kmap, 3, {{"Healthy", hl}, {loc, "trail1"}}, 0.0071, tv, t), anytrip));
        r.push_back(row(M::Ksimp, 1, {{"Healthy", hl}}, 0.9900, tv, t));
        r.push_back(row(M::Ksimp, 2, {{loc, "home"}}, 0.9300, tv, t));
        r.push_back(row(M::KsimpCount, 0, {}, 2, exact, t));
        out.push_back(std::move(s));
    }
    {
        Scenario s{"vacation100-dead", "vacation100", {{"Alive", "dead"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison, dead (multi-state)";
        r.push_back(row(M::Kmre, 1, {{"Healthy", un}}, 26.0000, tv, t));
        r.push_back(row(M::Kmre, 2, {{loc, "home"}}, 1.2310, tv, t));
        r.push_back(row(M::KmreCount, 0, {}, 2, exact, t));
        r.push_back(row(M::Kmap, 1, {{"Healthy", un}, {loc, "home"}}, 0.0160, tv, t));
        r.push_back(row(M::Kmap, 2, {{"Healthy", hl}, {loc, "home"}}, 0.0008, tv, t));
        r.push_back(with_note(row(M::Kmap, 3, {{"Healthy", un}, {loc, "trail1"}}, 0.0004, tv, t), anytrip));
        r.push_back(with_note(row(M::Ksimp, 1, {{"Healthy", un}, {loc, "trail1"}}, 0.9000, tv, t), anytrip));
        r.push_back(row(M::Ksimp, 2, {{"Healthy", un}}, 0.2600, tv, t));
        r.push_back(row(M::Ksimp, 3, {{loc, "home"}}, 0.0700, tv, t));
        out.push_back(std::move(s));
    }
    {
        Scenario s{"academe", "academe", {{"FinalMark", "fail"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison";
        r.push_back(row(M::Kmre, 1, {{"Theory", "bad"}}, 3.0205, t4, t));
        r.push_back(row(M::Kmre, 2, {{"Practice", "bad"}, {"Extra", "no"}}, 2.2986, t4, t));
        r.push_back(with_note(
            row(M::Kmre, 3, {{"Theory", "good"}, {"Practice", "bad"}, {"OtherFactors", "minus"}}, 2.0209, t4, t),
            "this explanation scores 2.0209 but (Practice=bad) 2.2266 is a subset with a higher score, "
            "so it is strongly dominated",
            true));
        r.push_back(row(M::Kmap, 1,
                        {{"Theory", "bad"}, {"Practice", "good"}, {"Extra", "no"}, {"OtherFactors", "plus"}},
                        0.0958, t4, t));
        r.push_back(row(M::Kmap, 2,
                        {{"Theory", "bad"}, {"Practice", "average"}, {"Extra", "no"}, {"OtherFactors", "plus"}},
                        0.0399, t4, t));
        r.push_back(with_note(
            row(M::Kmap, 3,
                {{"Theory", "average"}, {"Practice", "bad"}, {"Extra", "no"}, {"OtherFactors", "plus"}}, 0.0399,
                t4, t),
            "printed score repeats row 2; this configuration has joint 0.0239 and the third-ranked one 0.0319",
            true));
        r.push_back(row(M::Ksimp, 1, {{"Theory", "bad"}, {"Extra", "no"}}, 0.9600, t4, t));
        r.push_back(with_note(row(M::Ksimp, 2, {{"Theory", "average"}, {"Practice", "average"}}, 0.7260, t4, t),
                              "printed label says bad practice, whose likelihood is 1.0; the 0.7260 row is "
                              "(average theory, average practice)"));
        r.push_back(row(M::KsimpCount, 0, {}, 2, exact, t));
        out.push_back(std::move(s));
    }
    const std::string flipped = "printed label has its negations flipped; the score is checked";
    {
        Scenario s{"asia-dyspnea", "asia", {{"Dyspnea", "yes"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison, dyspnea";
        r.push_back(row(M::Kmre, 1, {{"Bronchitis", "yes"}}, 6.1391, t4, t));
        r.push_back(row(M::Kmre, 2, {{"LungCancer", "yes"}}, 1.9678, t4, t));
        r.push_back(row(M::Kmre, 3, {{"Tuberculosis", "yes"}}, 1.8276, t4, t));
        r.push_back(row(M::Kmap, 1, {{"Bronchitis", "yes"}, {"LungCancer", "no"}, {"Tuberculosis", "no"}}, 0.3313,
                        t4, t));
        r.push_back(row(M::Kmap, 2, {{"Bronchitis", "no"}, {"LungCancer", "no"}, {"Tuberculosis", "no"}}, 0.0521,
                        t4, t));
        r.push_back(with_note(row(M::Kmap, 3, {{"Bronchitis", "yes"}, {"LungCancer", "yes"}, {"Tuberculosis", "no"}},
                                  0.0521, t4, t),
                              "printed score repeats row 2; this configuration has joint 0.0281", true));
        r.push_back(with_note(row(M::Ksimp, 1, {{"Bronchitis", "yes"}, {"LungCancer", "yes"}}, 0.9000, t4, t),
                              flipped));
        r.push_back(row(M::Ksimp, 2, {{"Bronchitis", "yes"}}, 0.8080, t4, t));
        r.push_back(row(M::Ksimp, 3, {{"Tuberculosis", "no"}}, 0.4323, t4, t));
        out.push_back(std::move(s));
    }
    {
        Scenario s{"asia-xray", "asia", {{"X_ray", "abnormal"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison, abnormal X-ray";
        r.push_back(row(M::Kmre, 1, {{"LungCancer", "yes"}}, 16.4231, t4, t));
        r.push_back(row(M::Kmre, 2, {{"Tuberculosis", "yes"}}, 9.6886, t4, t));
        r.push_back(row(M::Kmre, 3, {{"Bronchitis", "yes"}}, 1.2535, t4, t));
        r.push_back(row(M::Kmap, 1, {{"Bronchitis", "yes"}, {"LungCancer", "yes"}, {"Tuberculosis", "no"}}, 0.0305,
                        t4, t));
        r.push_back(with_note(row(M::Kmap, 2, {{"Bronchitis", "no"}, {"LungCancer", "no"}, {"Tuberculosis", "no"}},
                                  0.0261, t4, t),
                              "published label shows Bronchitis present; 0.0261 is the joint with Bronchitis absent "
                              "(present gives 0.0207)"));
        r.push_back(row(M::Kmap, 3, {{"Bronchitis", "no"}, {"LungCancer", "yes"}, {"Tuberculosis", "no"}}, 0.0228,
                        t4, t));
        r.push_back(with_note(row(M::Ksimp, 1, {{"LungCancer", "yes"}}, 0.9800, t4, t), flipped));
        r.push_back(row(M::Ksimp, 2, {{"Tuberculosis", "no"}}, 0.1012, t4, t));
        out.push_back(std::move(s));
    }
    {
        Scenario s{"circuit2", "circuit2", {{"E", "low"}}, {}};
        auto& r = s.rows;
        const std::string t = "reference comparison";
        r.push_back(row(M::Kmre, 1, {{"OK3", "abnormal"}}, 4.0, exact, t));
        r.push_back(row(M::Kmre, 2, {{"OK1", "abnormal"}, {"OK2", "abnormal"}}, 2.0, exact, t));
        r.push_back(row(M::KmreCount, 0, {}, 2, exact, t));
        const std::string tie = "five configurations tie at 0.1250; only the score is checked";
        for (int k = 1; k <= 3; ++k) r.push_back(with_note(row(M::Kmap, k, {}, 0.1250, exact, t), tie));
        r.push_back(row(M::Ksimp, 1, {{"OK3", "abnormal"}}, 1.0, exact, t));
        r.push_back(row(M::Ksimp, 2, {{"OK1", "abnormal"}, {"OK2", "abnormal"}}, 1.0, exact, t));
        r.push_back(row(M::KsimpCount, 0, {}, 2, exact, t));
        out.push_back(std::move(s));
    }
    return out;
}

struct Outputs {
    std::vector<ScoredExplanation> all, kmre, kmap;
    std::vector<SimplifiedExplanation> ksimp;
};

std::string fmt_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

const char* bench_method_name(BenchMethod m) {
    switch (m) {
        case M::Posterior: return "posterior";
        case M::GbfScore: return "gbf";
        case M::Cbf: return "cbf";
        case M::Kmre: return "kmre";
        case M::KmreCount: return "kmre-count";
        case M::Kmap: return "kmap";
        case M::Ksimp: return "ksimp";
        case M::KsimpCount: return "ksimp-count";
    }
    return "?";
}

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> all = build_scenarios();
    return all;
}

const Scenario& scenario(const std::string& id) {
    for (const auto& s : scenarios())
        if (s.id == id) return s;
    throw std::invalid_argument("unknown scenario '" + id + "'");
}

std::vector<std::string> resolve_scenarios(const std::string& selector) {
    std::vector<std::string> out;
    for (const auto& s : scenarios())
        if (selector == "all" || s.id == selector || s.network == selector) out.push_back(s.id);
    if (out.empty()) throw std::invalid_argument("unknown benchmark '" + selector + "'");
    return out;
}

bool ScenarioReport::pass() const { return failures() == 0; }

int ScenarioReport::failures() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const RowResult& r) { return !r.pass; }));
}

bool within(double computed, double expected, double tol) {
    if (std::isinf(computed) || std::isinf(expected)) return computed == expected;
    return std::abs(computed - expected) <= tol + 1e-12;
}

ScenarioReport run_scenario(const std::string& id) {
    const Scenario& sc = scenario(id);
    const Network net = fixture(sc.network);
    const Assignment e = net.assign(sc.evidence);

    Outputs o;
    o.all = score_all(net, e);
    o.kmre = select_kmre(o.all).selected;
    o.kmap = k_map(net, e, 3);
    o.ksimp = k_simp(net, e);

    ScenarioReport rep;
    rep.id = id;
    for (const auto& ex : sc.rows) {
        RowResult rr;
        rr.expected = ex;
        const Assignment want = net.assign(ex.explanation);
        auto take = [&](const Assignment& got, double score) {
            rr.computed_explanation = net.format(got);
            rr.computed_score = score;
            rr.explanation_ok = ex.explanation.empty() || got == want;
        };
        auto ranked = [&](const std::vector<ScoredExplanation>& list) {
            if (ex.rank >= 1 && static_cast<std::size_t>(ex.rank) <= list.size()) {
                const auto& s = list[ex.rank - 1];
                take(s.x, s.score);
            } else {
                rr.computed_explanation = "(missing)";
                rr.computed_score = std::nan("");
                rr.explanation_ok = false;
            }
        };
        switch (ex.method) {
            case M::Posterior: take(want, prob(net, want, e)); break;
            case M::GbfScore: {
                auto it = std::find_if(o.all.begin(), o.all.end(), [&](const auto& s) { return s.x == want; });
                take(want, it == o.all.end() ? std::nan("") : it->score);
                break;
            }
            case M::Cbf: take(want, cbf(net, want, e, net.assign(ex.given))); break;
            case M::Kmre: ranked(o.kmre); break;
            case M::Kmap: ranked(o.kmap); break;
            case M::Ksimp: {
                std::vector<ScoredExplanation> l;
                for (const auto& s : o.ksimp) l.push_back(s.result);
                ranked(l);
                break;
            }
            case M::KmreCount:
                rr.computed_explanation = "";
                rr.computed_score = static_cast<double>(o.kmre.size());
                break;
            case M::KsimpCount:
                rr.computed_explanation = "";
                rr.computed_score = static_cast<double>(o.ksimp.size());
                break;
        }
        rr.delta = rr.computed_score - ex.score;
        rr.pass = rr.explanation_ok && within(rr.computed_score, ex.score, ex.tolerance);
        rep.rows.push_back(std::move(rr));
    }
    return rep;
}

std::string format_score(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, std::abs(v) >= 10.0 ? "%.2f" : "%.4f", v);
    return buf;
}

std::string expected_label(const Scenario& sc, const ExpectedRow& row) {
    const Network net = fixture(sc.network);
    return net.format(net.assign(row.explanation));
}

std::string report_text(const std::vector<ScenarioReport>& reports) {
    std::string out;
    char line[512];
    for (const auto& rep : reports) {
        const Scenario& sc = scenario(rep.id);
        out += "== " + rep.id + "  (" + sc.network + ")\n";
        std::snprintf(line, sizeof line, "  %-4s %-11s %-4s %-60s %10s %10s %10s\n", "ok", "method", "rank",
                      "explanation", "expected", "computed", "delta");
        out += line;
        for (const auto& r : rep.rows) {
            std::string expl = r.computed_explanation;
            if (!r.explanation_ok && !r.expected.explanation.empty()) expl += " [label mismatch]";
            std::snprintf(line, sizeof line, "  %-4s %-11s %-4s %-60s %10s %10s %+10.6f\n", r.pass ? "PASS" : "FAIL",
                          bench_method_name(r.expected.method),
                          r.expected.rank ? std::to_string(r.expected.rank).c_str() : "-", expl.c_str(),
                          format_score(r.expected.score).c_str(), format_score(r.computed_score).c_str(), r.delta);
            out += line;
            if (!r.explanation_ok && !r.expected.explanation.empty())
                out += "       expected: " + expected_label(sc, r.expected) + "\n";
            if (!r.pass && !r.expected.note.empty()) out += "       note: " + r.expected.note + "\n";
        }
        out += "  " + std::to_string(rep.rows.size() - rep.failures()) + "/" + std::to_string(rep.rows.size()) +
               " rows pass\n";
    }
    return out;
}

std::string report_json(const std::vector<ScenarioReport>& reports) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& rep : reports) {
        nlohmann::ordered_json rj;
        rj["scenario"] = rep.id;
        rj["network"] = scenario(rep.id).network;
        rj["pass"] = rep.pass();
        rj["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rep.rows) {
            nlohmann::ordered_json x;
            x["method"] = bench_method_name(r.expected.method);
            x["rank"] = r.expected.rank;
            x["explanation"] = r.computed_explanation;
            if (!r.expected.explanation.empty()) x["expected_explanation"] = expected_label(scenario(rep.id), r.expected);
            x["expected"] = r.expected.score;
            x["computed"] = std::isfinite(r.computed_score) ? nlohmann::ordered_json(r.computed_score)
                                                             : nlohmann::ordered_json(fmt_full(r.computed_score));
            x["delta"] = std::isfinite(r.delta) ? nlohmann::ordered_json(r.delta) : nlohmann::ordered_json(nullptr);
            x["tolerance"] = r.expected.tolerance;
            x["explanation_ok"] = r.explanation_ok;
            x["pass"] = r.pass;
            x["known_issue"] = r.expected.known_issue;
            x["source"] = r.expected.source;
            if (!r.expected.note.empty()) x["note"] = r.expected.note;
            rj["rows"].push_back(std::move(x));
        }
        j.push_back(std::move(rj));
    }
    return j.dump(2);
}

}  // namespace mre
