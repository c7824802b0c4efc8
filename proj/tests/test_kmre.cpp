#include <doctest.h>

#include <cmath>
#include <limits>

#include "mre/bench.hpp"
#include "mre/kmre.hpp"

using namespace mre;

namespace {

ScoredExplanation scored(Assignment x, double score) {
    ScoredExplanation s;
    s.x = std::move(x);
    s.score = score;
    return s;
}

std::vector<std::string> labels(const Network& net, const std::vector<ScoredExplanation>& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(net.format(r.x));
    return out;
}

}  // namespace

TEST_CASE("dominance relations") {
    const Network net = fixture("circuit");
    const auto bc = scored(net.assign({{"B", "defective"}, {"C", "defective"}}), 42.62);
    const auto abc = scored(net.assign({{"A", "ok"}, {"B", "defective"}, {"C", "defective"}}), 42.15);
    auto v = dominates(bc, abc);
    CHECK(v.relation == Dominance::Strong);
    CHECK(v.first_dominates);
    v = dominates(abc, bc);
    CHECK(v.relation == Dominance::Strong);
    CHECK_FALSE(v.first_dominates);

    CHECK(dominates(bc, bc).relation == Dominance::None);
    const auto a = scored(net.assign({{"A", "defective"}}), 39.45);
    CHECK(dominates(bc, a).relation == Dominance::None);

    // A superset with a strictly higher score dominates weakly.
    const auto b = scored(net.assign({{"B", "defective"}}), 20.0);
    v = dominates(bc, b);
    CHECK(v.relation == Dominance::Weak);
    CHECK(v.first_dominates);
    // Equal scores: the superset does not dominate weakly; the subset dominates strongly.
    const auto b_eq = scored(net.assign({{"B", "defective"}}), 42.62);
    v = dominates(bc, b_eq);
    CHECK(v.relation == Dominance::Strong);
    CHECK_FALSE(v.first_dominates);
    // States of the same variable are unrelated.
    CHECK(dominates(scored(net.assign({{"B", "ok"}}), 50.0), bc).relation == Dominance::None);
}

TEST_CASE("infinite scores strongly dominate their supersets") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto x = scored(Assignment{{0, 0}}, inf);
    const auto xy = scored(Assignment{{0, 0}, {1, 0}}, inf);
    CHECK(dominates(x, xy).relation == Dominance::Strong);
    CHECK(dominates(x, xy).first_dominates);
}

TEST_CASE("minimal set") {
    const auto x = scored(Assignment{{0, 0}}, 2.0);
    const auto xy = scored(Assignment{{0, 0}, {1, 0}}, 2.0);
    const auto z = scored(Assignment{{2, 1}}, 1.5);
    CHECK(minimal_set({x}).size() == 1);
    const auto m = minimal_set({x, xy, z});
    REQUIRE(m.size() == 2);
    CHECK(m[0].x == x.x);
    CHECK(m[1].x == z.x);
}

TEST_CASE("collapsing interchangeable ties") {
    auto a = scored(Assignment{{0, 1}}, 1.5);
    auto b = scored(Assignment{{0, 2}}, 1.5);
    auto c = scored(Assignment{{0, 3}}, 1.5);
    auto d = scored(Assignment{{1, 0}}, 1.5);
    const auto out = collapse_ties({a, b, c, d});
    REQUIRE(out.size() == 2);
    CHECK(out[0].equivalents == 3);
    CHECK(out[1].equivalents == 1);
}

TEST_CASE("circuit top-3 K-MRE are the boldface minimal explanations") {
    const Network net = fixture("circuit");
    const auto rows = k_mre(net, net.assign({{"Input", "current"}, {"TotalOutput", "current"}}));
    CHECK(labels(net, rows) ==
          std::vector<std::string>{"(B=defective, C=defective)", "(A=defective)", "(B=defective, D=defective)"});
}

TEST_CASE("asia X-ray K-MRE") {
    const Network net = fixture("asia");
    const auto rows = k_mre(net, net.assign({{"X_ray", "abnormal"}}));
    REQUIRE(rows.size() == 3);
    CHECK(labels(net, rows) == std::vector<std::string>{"(LungCancer=yes)", "(Tuberculosis=yes)", "(Bronchitis=yes)"});
    CHECK(std::fabs(rows[0].score - 16.4231) <= 0.00005);
    CHECK(std::fabs(rows[1].score - 9.6886) <= 0.00005);
    CHECK(std::fabs(rows[2].score - 1.2535) <= 0.00005);
}

TEST_CASE("vacation with many trails: only two explanations clear the floor") {
    const Network net = fixture("vacation100");
    const auto rows = k_mre(net, net.assign({{"Alive", "dead"}}));
    REQUIRE(rows.size() == 2);
    CHECK(net.format(rows[0].x) == "(Healthy=unhealthy)");
    CHECK(rows[0].score == doctest::Approx(26.0).epsilon(1e-9));
    CHECK(net.format(rows[1].x) == "(VacationLocation=home)");
    CHECK(std::fabs(rows[1].score - 1.2310) <= 0.0005);

    KmreOptions no_floor;
    no_floor.use_floor = false;
    CHECK(k_mre(net, net.assign({{"Alive", "dead"}}), no_floor).size() == 3);
}

TEST_CASE("vacation given alive: the hundred equivalent trails collapse into one row") {
    const Network net = fixture("vacation100");
    const auto rows = k_mre(net, net.assign({{"Alive", "alive"}}));
    REQUIRE(rows.size() == 2);
    CHECK(net.format(rows[1].x) == "(VacationLocation=trail1)");
    CHECK(rows[1].equivalents == 100);
}

TEST_CASE("circuit2 kernel diagnoses") {
    const Network net = fixture("circuit2");
    const auto rows = k_mre(net, net.assign({{"E", "low"}}));
    REQUIRE(rows.size() == 2);
    CHECK(net.format(rows[0].x) == "(OK3=abnormal)");
    CHECK(rows[0].score == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(net.format(rows[1].x) == "(OK1=abnormal, OK2=abnormal)");
    CHECK(rows[1].score == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("full minimality mode is the literal minimal set") {
    const Network net = fixture("asia");
    const auto all = score_all(net, net.assign({{"Dyspnea", "yes"}}));
    KmreOptions full;
    full.mode = KmreMode::Full;
    full.use_floor = false;
    full.collapse = false;
    full.k = all.size();
    const auto sel = select_kmre(all, full).selected;
    const auto ms = minimal_set(all);
    REQUIRE(sel.size() == ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) CHECK(sel[i].x == ms[i].x);
}

TEST_CASE("exclusions carry their witnesses") {
    const Network net = fixture("circuit");
    const auto res = select_kmre(score_all(net, net.assign({{"Input", "current"}, {"TotalOutput", "current"}})));
    REQUIRE_FALSE(res.excluded.empty());
    const auto& first = res.excluded.front();
    CHECK(net.format(first.candidate.x) == "(A=ok, B=defective, C=defective)");
    CHECK(net.format(first.witness.x) == "(B=defective, C=defective)");
    CHECK(first.relation == Dominance::Strong);
    CHECK_THROWS(select_kmre({}, KmreOptions{.k = 0}));
}
