#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mre/bench.hpp"
#include "mre/infer.hpp"

using namespace mre;

namespace {

const Network& circuit() {
    static const Network n = fixture("circuit");
    return n;
}
const Network& asia() {
    static const Network n = fixture("asia");
    return n;
}

Assignment circuit_evidence() { return circuit().assign({{"Input", "current"}, {"TotalOutput", "current"}}); }

// Copy network: X uniform binary root, Y = X deterministically.
Network copy_pair() {
    NetworkSpec s;
    s.variables = {{"X", {"a", "b"}, Role::Target}, {"Y", {"a", "b"}, Role::Observation}};
    Cpt x;
    x.child = "X";
    x.rows = {0.5, 0.5};
    Cpt y;
    y.child = "Y";
    y.parents = {"X"};
    y.rows = {1, 0, 0, 1};
    s.cpts = {x, y};
    return Network(s);
}

}  // namespace

TEST_CASE("circuit gate posteriors") {
    const auto e = circuit_evidence();
    const double expected[] = {0.391, 0.649, 0.446, 0.301};
    const char* gates[] = {"A", "B", "C", "D"};
    for (int i = 0; i < 4; ++i) {
        INFO(gates[i]);
        CHECK(std::fabs(prob(circuit(), circuit().assign({{gates[i], "defective"}}), e) - expected[i]) <= 0.0005);
    }
}

TEST_CASE("P(x | x) is one and empty evidence gives the prior") {
    const auto x = asia().assign({{"Bronchitis", "yes"}, {"Smoking", "no"}});
    CHECK(prob(asia(), x, x) == doctest::Approx(1.0));
    CHECK(prob(asia(), asia().assign({{"Smoking", "yes"}})) == doctest::Approx(0.5));
}

TEST_CASE("asia posterior matches brute-force summation") {
    const Factor joint = brute_force_joint(asia());
    const auto e = asia().assign({{"Dyspnea", "yes"}});
    const auto x = asia().assign({{"Bronchitis", "yes"}});
    const double oracle = brute_force_mass(asia(), joint, x.merged(e)) / brute_force_mass(asia(), joint, e);
    CHECK(std::fabs(prob(asia(), x, e) - oracle) <= 1e-12);
    // Frozen value from an independent hand-written enumeration of the 2^8 joint.
    CHECK(oracle == doctest::Approx(0.8339673363).epsilon(1e-9));
}

TEST_CASE("impossible evidence is reported, not divided by") {
    CHECK_THROWS_AS(prob(circuit(), circuit().assign({{"A", "ok"}}), circuit().assign({{"Input", "noCurr"}})),
                    ImpossibleEvidence);
    CHECK_THROWS_AS(likelihood(circuit(), circuit().assign({{"TotalOutput", "current"}}),
                               circuit().assign({{"Input", "noCurr"}})),
                    ImpossibleEvidence);
}

TEST_CASE("likelihood examples") {
    const Network c2 = fixture("circuit2");
    CHECK(likelihood(c2, c2.assign({{"E", "low"}}), c2.assign({{"OK3", "abnormal"}})) == doctest::Approx(1.0));
    const Network ac = fixture("academe");
    CHECK(likelihood(ac, ac.assign({{"FinalMark", "fail"}}),
                     ac.assign({{"Theory", "bad"}, {"Practice", "bad"}, {"Extra", "no"}, {"OtherFactors", "minus"}})) ==
          doctest::Approx(1.0));
    // All parents of Dyspnea fixed: the likelihood is the CPT entry.
    CHECK(likelihood(asia(), asia().assign({{"Dyspnea", "yes"}}),
                     asia().assign({{"TbOrCa", "yes"}, {"Bronchitis", "no"}})) == doctest::Approx(0.7));
}

TEST_CASE("Bayes consistency: P(x|e) P(e) = P(e|x) P(x)") {
    const auto e = circuit_evidence();
    for (const auto& b : {std::pair{"A", "defective"}, std::pair{"B", "ok"}, std::pair{"D", "defective"}}) {
        const auto x = circuit().assign({b});
        const double lhs = prob(circuit(), x, e) * mass(circuit(), e);
        const double rhs = likelihood(circuit(), e, x) * prob(circuit(), x);
        CHECK(std::fabs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("interventions") {
    // Root intervention equals conditioning.
    const auto smoke = asia().assign({{"Smoking", "yes"}});
    const auto dys = asia().assign({{"Dyspnea", "yes"}});
    CHECK(std::fabs(prob_do(asia(), dys, {}, smoke) - prob(asia(), dys, smoke)) <= 1e-12);
    // Querying an intervened variable is rejected rather than answered trivially.
    const auto bron = asia().assign({{"Bronchitis", "yes"}});
    CHECK_THROWS_AS(prob_do(asia(), bron, dys, bron), std::invalid_argument);
    // Non-root intervention against the mutilated brute-force joint.
    const Network cut = asia().mutilated(bron);
    const Factor joint = brute_force_joint(cut);
    const double oracle = brute_force_mass(cut, joint, dys);
    CHECK(std::fabs(prob_do(asia(), dys, {}, bron) - oracle) <= 1e-12);
    CHECK(oracle == doctest::Approx(0.8064828).epsilon(1e-9));
    // Intervening on Bronchitis does not change Smoking, unlike conditioning.
    CHECK(prob_do(asia(), smoke, {}, bron) == doctest::Approx(0.5));
    CHECK(prob(asia(), smoke, bron) > 0.6);
}

TEST_CASE("brute-force joint: two-node product and normalization") {
    const Network pair = copy_pair();
    const Factor j = brute_force_joint(pair);
    CHECK(j.size() == 4);
    CHECK(j.sum() == doctest::Approx(1.0));
    CHECK(brute_force_mass(pair, j, pair.assign({{"X", "a"}, {"Y", "a"}})) == doctest::Approx(0.5));
    CHECK(brute_force_joint(asia()).sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS(brute_force_joint(asia(), 16));
}

TEST_CASE("circuit TotalOutput marginal: elimination equals brute force") {
    const Factor j = brute_force_joint(circuit());
    const int t = circuit().index_of("TotalOutput");
    const Factor ve = joint_marginal(circuit(), {t}, {});
    for (int s = 0; s < 2; ++s)
        CHECK(std::fabs(ve.values[s] - brute_force_mass(circuit(), j, Assignment{{t, s}})) <= 1e-12);
}

TEST_CASE("factor algebra") {
    Factor f({0}, {2});
    f.values = {0.2, 0.8};
    Factor g({0, 1}, {2, 3});
    g.values = {1, 2, 3, 4, 5, 6};
    const Factor p = factor_product(f, g);
    CHECK(p.at(std::vector<int>{1, 2}) == doctest::Approx(0.8 * 6));
    const Factor s = sum_out(p, 0);
    CHECK(s.scope == std::vector<int>{1});
    CHECK(s.values[0] == doctest::Approx(0.2 * 1 + 0.8 * 4));
    const Factor r = reduce(g, Assignment{{1, 1}});
    CHECK(r.at(std::vector<int>{1}) == doctest::Approx(5));
}

TEST_CASE("mutual information: copied bit and independence") {
    const Network pair = copy_pair();
    CHECK(mutual_information(pair, 0, 1, {}) == doctest::Approx(std::log(2.0)));
    CHECK(entropy(pair, 0, {}) == doctest::Approx(std::log(2.0)));
    CHECK(cond_mutual_information(pair, 0, {1}, {}) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(cond_mutual_information(pair, 0, {1}, Assignment{{1, 0}}), std::invalid_argument);
    const Network c = circuit();
    CHECK(mutual_information(c, c.index_of("A"), c.index_of("B"), {}) == doctest::Approx(0.0));
}

TEST_CASE("average conditional mutual information matches an oracle summation") {
    const Network ac = fixture("academe");
    const auto e = ac.assign({{"FinalMark", "fail"}});
    const Factor joint = brute_force_joint(ac);
    const int theory = ac.index_of("Theory");
    double total = 0.0;
    int count = 0;
    const double pe = brute_force_mass(ac, joint, e);
    for (int y : ac.targets()) {
        if (y == theory) continue;
        double mi = 0.0;
        for (int a = 0; a < ac.card(theory); ++a)
            for (int b = 0; b < ac.card(y); ++b) {
                const double pab = brute_force_mass(ac, joint, e.merged(Assignment{{theory, a}, {y, b}})) / pe;
                const double pa = brute_force_mass(ac, joint, e.merged(Assignment{{theory, a}})) / pe;
                const double pb = brute_force_mass(ac, joint, e.merged(Assignment{{y, b}})) / pe;
                if (pab > 0) mi += pab * std::log(pab / (pa * pb));
            }
        total += mi;
        ++count;
    }
    std::vector<int> others;
    for (int y : ac.targets())
        if (y != theory) others.push_back(y);
    CHECK(std::fabs(cond_mutual_information(ac, theory, others, e) - total / count) <= 1e-12);
}

TEST_CASE("causal information flow") {
    // Copied root: the flow is the root's entropy.
    const Network pair = copy_pair();
    CHECK(causal_information_flow(pair, 0, {1}, {}) == doctest::Approx(std::log(2.0)));
    // No directed path: zero flow.
    CHECK(causal_information_flow(pair, 1, {0}, {}) == doctest::Approx(0.0));

    // Asia, Bronchitis onto Dyspnea, against mutilated joints.
    const int b = asia().index_of("Bronchitis"), d = asia().index_of("Dyspnea");
    double pbx[2], pd[2][2], mix[2] = {0, 0};
    for (int s = 0; s < 2; ++s) {
        pbx[s] = prob(asia(), Assignment{{b, s}});
        const Network cut = asia().mutilated(Assignment{{b, s}});
        const Factor j = brute_force_joint(cut);
        for (int t = 0; t < 2; ++t) {
            pd[s][t] = brute_force_mass(cut, j, Assignment{{d, t}});
            mix[t] += pbx[s] * pd[s][t];
        }
    }
    double flow = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) flow += pbx[s] * pd[s][t] * std::log(pd[s][t] / mix[t]);
    CHECK(std::fabs(causal_information_flow(asia(), b, {d}, {}) - flow) <= 1e-12);
}

TEST_CASE("min-fill order eliminates every requested variable once") {
    std::vector<Factor> fs;
    for (int v = 0; v < static_cast<int>(asia().size()); ++v) fs.push_back(cpt_factor(asia(), v));
    std::vector<int> vars{0, 1, 2, 3, 4, 5};
    auto order = min_fill_order(asia(), fs, vars);
    std::sort(order.begin(), order.end());
    CHECK(order == vars);
}
