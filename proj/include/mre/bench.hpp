#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mre/model.hpp"

namespace mre {

using Bindings = std::vector<std::pair<std::string, std::string>>;

std::vector<std::string> fixture_ids();
// Embedded fixture network, ignoring MRE_FIXTURE_DIR.
NetworkSpec embedded_fixture(const std::string& id);
// Fixture by id; MRE_FIXTURE_DIR/<id>.json takes precedence when present.
Network fixture(const std::string& id);

enum class BenchMethod {
    Posterior,  // P(x | e) of a single binding
    GbfScore,   // GBF of a given explanation (looked up in the full ranking)
    Cbf,        // GBF(x; e | given)
    Kmre,
    KmreCount,
    Kmap,
    Ksimp,
    KsimpCount,
};

const char* bench_method_name(BenchMethod m);

struct ExpectedRow {
    BenchMethod method = BenchMethod::Kmre;
    int rank = 0;            // 1-based position for ranked methods
    Bindings explanation;    // empty = score-only row
    Bindings given;          // conditioning explanation for Cbf
    double score = 0.0;
    double tolerance = 0.0;
    std::string source;      // which published table/sentence the number comes from
    std::string note;        // why a row is known to disagree, or label conventions
    bool known_issue = false;
};

struct Scenario {
    std::string id;
    std::string network;
    Bindings evidence;
    std::vector<ExpectedRow> rows;
};

const std::vector<Scenario>& scenarios();
// Scenario ids for a fixture id, scenario id, or "all".
std::vector<std::string> resolve_scenarios(const std::string& selector);
const Scenario& scenario(const std::string& id);

struct RowResult {
    ExpectedRow expected;
    std::string computed_explanation;
    double computed_score = 0.0;
    double delta = 0.0;
    bool explanation_ok = true;
    bool pass = false;
};

struct ScenarioReport {
    std::string id;
    std::vector<RowResult> rows;
    bool pass() const;
    int failures() const;
};

// Score comparison used throughout the bench: |a - b| <= tol (with a 1e-12 slack
// for values printed exactly on a rounding edge).
bool within(double computed, double expected, double tol);

ScenarioReport run_scenario(const std::string& id);
std::string report_text(const std::vector<ScenarioReport>& reports);
std::string report_json(const std::vector<ScenarioReport>& reports);

// Score with 4 decimals, or 2 when the integer part has at least two digits.
std::string format_score(double v);
// The reference explanation of a row, formatted like computed explanations.
std::string expected_label(const Scenario& sc, const ExpectedRow& row);

}  // namespace mre
