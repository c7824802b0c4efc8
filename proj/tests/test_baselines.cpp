#include <doctest.h>

#include <cmath>
#include <functional>
#include <json.hpp>

#include "mre/baselines.hpp"
#include "mre/bench.hpp"
#include "mre/infer.hpp"

using namespace mre;

namespace {

const Network& circuit() {
    static const Network n = fixture("circuit");
    return n;
}
Assignment circuit_evidence() { return circuit().assign({{"Input", "current"}, {"TotalOutput", "current"}}); }

// Visits every node with the branch leading to it.
void walk(const TreeNode& node, const Assignment& branch,
          const std::function<void(const TreeNode&, const Assignment&)>& f) {
    f(node, branch);
    for (const auto& e : node.edges)
        for (const auto& c : e.child) walk(c, branch.merged(Assignment{{node.variable, e.state}}), f);
}

}  // namespace

TEST_CASE("K-MAP on the circuit") {
    const auto rows = k_map(circuit(), circuit_evidence(), 3);
    REQUIRE(rows.size() == 3);
    const double expected[] = {0.0128, 0.0099, 0.0082};
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(rows[i].score - expected[i]) <= 0.00005);
    CHECK(circuit().format(rows[0].x) == "(A=ok, B=defective, C=defective, D=ok)");
}

TEST_CASE("K-MAP scores are joint probabilities, nonincreasing, and the posteriors sum to one") {
    const Network net = fixture("academe");
    const auto e = net.assign({{"FinalMark", "fail"}});
    const auto rows = k_map(net, e, 36);
    REQUIRE(rows.size() == 36);
    const Factor joint = brute_force_joint(net);
    double total = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) CHECK(rows[i].score <= rows[i - 1].score);
        CHECK(std::fabs(rows[i].score - brute_force_mass(net, joint, rows[i].x.merged(e))) <= 1e-12);
        total += rows[i].posterior;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k_map(net, e, 1000).size() == 36);
}

TEST_CASE("vacation K-MAP given alive") {
    const Network net = fixture("vacation1");
    const auto rows = k_map(net, net.assign({{"Alive", "alive"}}), 1);
    CHECK(net.format(rows[0].x) == "(Healthy=healthy, VacationLocation=hiking)");
    CHECK(rows[0].score == doctest::Approx(0.6336).epsilon(1e-12));
}

TEST_CASE("K-SIMP reproduces the circuit, academe and circuit2 results") {
    auto scores = [](const std::vector<SimplifiedExplanation>& rows) {
        std::vector<double> out;
        for (const auto& r : rows) out.push_back(r.result.score);
        return out;
    };
    const auto c = k_simp(circuit(), circuit_evidence());
    REQUIRE(c.size() == 3);
    CHECK(circuit().format(c[0].result.x) == "(B=defective, D=defective)");
    CHECK(circuit().format(c[1].result.x) == "(B=defective, C=defective)");
    CHECK(circuit().format(c[2].result.x) == "(A=defective)");
    const double ce[] = {0.9818, 0.9683, 0.9014};
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(scores(c)[i] - ce[i]) <= 0.00005);

    const Network ac = fixture("academe");
    const auto a = k_simp(ac, ac.assign({{"FinalMark", "fail"}}));
    REQUIRE(a.size() == 2);
    CHECK(std::fabs(a[0].result.score - 0.9600) <= 0.00005);
    CHECK(std::fabs(a[1].result.score - 0.7260) <= 0.00005);

    const Network c2 = fixture("circuit2");
    const auto d = k_simp(c2, c2.assign({{"E", "low"}}));
    REQUIRE(d.size() == 2);
    CHECK(d[0].result.score == doctest::Approx(1.0));
    CHECK(d[1].result.score == doctest::Approx(1.0));
}

TEST_CASE("K-SIMP never loses more than the allowed likelihood fraction per deletion") {
    for (const auto& sc : scenarios()) {
        const Network net = fixture(sc.network);
        const BaselineParams params;
        for (const auto& s : k_simp(net, net.assign(sc.evidence), params)) {
            INFO(sc.id << " " << net.format(s.result.x));
            CHECK(s.result.score >= std::pow(1 - params.simp_likelihood_factor, s.deletions) * s.source_likelihood - 1e-12);
            CHECK(s.result.x.subset_of(s.source));
            CHECK(static_cast<int>(s.source.size() - s.result.x.size()) == s.deletions);
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(check_params({}));
    BaselineParams p;
    p.k = 0;
    CHECK_THROWS(check_params(p));
    p = {};
    p.cet_flow_threshold = -1;
    CHECK_THROWS(check_params(p));
}

TEST_CASE("explanation-tree roots") {
    const BaselineParams params;
    CHECK(circuit().name(explanation_tree(circuit(), circuit_evidence(), params).root.variable) == "A");
    for (const char* id : {"vacation1", "vacation100"})
        for (const char* obs : {"alive", "dead"}) {
            const Network net = fixture(id);
            INFO(id << " " << obs);
            CHECK(net.name(explanation_tree(net, net.assign({{"Alive", obs}}), params).root.variable) ==
                  "VacationLocation");
        }
}

TEST_CASE("causal explanation trees: circuit root, vacation root, asia best branches") {
    const BaselineParams params;
    CHECK(circuit().name(causal_explanation_tree(circuit(), circuit_evidence(), params).root.variable) == "A");
    const Network vac = fixture("vacation1");
    CHECK(vac.name(causal_explanation_tree(vac, vac.assign({{"Alive", "dead"}}), params).root.variable) == "Healthy");
    const Network asia = fixture("asia");
    auto best = [&](const char* var, const char* state) {
        return asia.format(tree_branches(causal_explanation_tree(asia, asia.assign({{var, state}}), params)).front().path);
    };
    CHECK(best("Dyspnea", "yes") == "(Bronchitis=yes)");
    CHECK(best("X_ray", "abnormal") == "(LungCancer=yes)");
}

TEST_CASE("tree labels match oracle quantities and expanded nodes meet their thresholds") {
    const BaselineParams params;
    for (const auto& sc : scenarios()) {
        const Network net = fixture(sc.network);
        const Assignment e = net.assign(sc.evidence);
        const Factor joint = brute_force_joint(net);
        const double pe = brute_force_mass(net, joint, e);
        INFO(sc.id);

        const auto et = explanation_tree(net, e, params);
        walk(et.root, {}, [&](const TreeNode& node, const Assignment& branch) {
            if (!node.forced) CHECK(node.criterion / std::log(2.0) >= params.et_mi_threshold - 1e-12);
            for (const auto& edge : node.edges) {
                const auto path = branch.merged(Assignment{{node.variable, edge.state}});
                CHECK(std::fabs(edge.label - brute_force_mass(net, joint, path.merged(e)) / pe) <= 1e-9);
            }
        });

        const auto cet = causal_explanation_tree(net, e, params);
        walk(cet.root, {}, [&](const TreeNode& node, const Assignment& branch) {
            if (!node.forced) CHECK(node.criterion / std::log(2.0) >= params.cet_flow_threshold - 1e-12);
            for (const auto& edge : node.edges) {
                const auto path = branch.merged(Assignment{{node.variable, edge.state}});
                const Network cut = net.mutilated(path);
                const double pdo = brute_force_mass(cut, brute_force_joint(cut), e);
                if (pdo > 0) CHECK(std::fabs(edge.label - std::log(pdo / pe)) <= 1e-9);
            }
        });
    }
}

TEST_CASE("causal tree with no causal path to the evidence is a forced root with zero flow") {
    NetworkSpec s;
    s.variables = {{"O", {"u", "v"}, Role::Observation}, {"T", {"a", "b"}, Role::Target}};
    Cpt o;
    o.child = "O";
    o.rows = {0.4, 0.6};
    Cpt t;
    t.child = "T";
    t.parents = {"O"};
    t.rows = {0.9, 0.1, 0.2, 0.8};
    s.cpts = {o, t};
    const Network net(s);
    const auto tree = causal_explanation_tree(net, net.assign({{"O", "u"}}));
    CHECK(tree.root.forced);
    CHECK(tree.root.criterion == doctest::Approx(0.0));
    CHECK(net.name(tree.root.variable) == "T");
}

TEST_CASE("tree rendering") {
    const Network vac = fixture("vacation1");
    const auto tree = explanation_tree(vac, vac.assign({{"Alive", "dead"}}));
    CHECK(tree_to_text(vac, tree) == "VacationLocation  [forced]\n  home: 0.2933\n  hiking: 0.7067\n");
    const auto doc = nlohmann::json::parse(tree_to_json(vac, tree));
    CHECK(doc["kind"] == "explanation_tree");
    const auto& j = doc["root"];
    CHECK(j["variable"] == "VacationLocation");
    CHECK(j["edges"].size() == 2);
    CHECK(j["edges"][0]["state"] == "home");
    CHECK(j["edges"][0]["label"] == "0.2933");
    CHECK(j["edges"][0]["label_value"].get<double>() == doctest::Approx(tree.root.edges[0].label));
}
