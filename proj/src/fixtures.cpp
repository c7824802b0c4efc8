#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include "mre/bench.hpp"

namespace mre {

namespace {

Variable var(std::string name, std::vector<std::string> states, Role role) {
    return {std::move(name), std::move(states), role};
}

Cpt table(std::string child, std::vector<std::string> parents, std::vector<double> rows) {
    Cpt c;
    c.child = std::move(child);
    c.parents = std::move(parents);
    c.kind = CptKind::Table;
    c.rows = std::move(rows);
    return c;
}

Cpt prior(std::string child, std::vector<double> rows) { return table(std::move(child), {}, std::move(rows)); }

// Binary rows [p, 1-p] for each parent configuration.
std::vector<double> binary(std::initializer_list<double> ps) {
    std::vector<double> out;
    for (double p : ps) {
        out.push_back(p);
        out.push_back(1.0 - p);
    }
    return out;
}

// Gate output: passes current with probability q only when the gate is
// defective (closed) and its input carries current.
Cpt gate_output(const std::string& out, const std::string& gate, const std::string& input, double q) {
    // Parent rows: (defective,current) (defective,noCurr) (ok,current) (ok,noCurr)
    return table(out, {gate, input}, binary({q, 0.0, 0.0, 0.0}));
}

NetworkSpec circuit() {
    const std::vector<std::string> flow{"current", "noCurr"};
    const std::vector<std::string> gate{"defective", "ok"};
    NetworkSpec n;
    n.variables = {
        var("Input", flow, Role::Observation), var("A", gate, Role::Target),
        var("B", gate, Role::Target),          var("C", gate, Role::Target),
        var("D", gate, Role::Target),          var("OutputA", flow, Role::Auxiliary),
        var("OutputB", flow, Role::Auxiliary), var("OutputC", flow, Role::Auxiliary),
        var("OutputD", flow, Role::Auxiliary), var("TotalOutput", flow, Role::Observation),
    };
    Cpt total;
    total.child = "TotalOutput";
    total.parents = {"OutputA", "OutputC", "OutputD"};
    total.kind = CptKind::NoisyOr;
    total.effect_state = "current";
    total.inputs = {{"OutputA", "current", 0.9}, {"OutputC", "current", 0.99}, {"OutputD", "current", 0.995}};
    total.leak = 0.0;
    n.cpts = {
        prior("Input", {1.0, 0.0}),
        prior("A", {0.016, 0.984}),
        prior("B", {0.1, 0.9}),
        prior("C", {0.15, 0.85}),
        prior("D", {0.1, 0.9}),
        gate_output("OutputA", "A", "Input", 0.999),
        gate_output("OutputB", "B", "Input", 0.99),
        gate_output("OutputC", "C", "OutputB", 0.985),
        gate_output("OutputD", "D", "OutputB", 0.995),
        total,
    };
    return n;
}

NetworkSpec vacation(bool multi_state) {
    std::vector<std::string> loc{"home"};
    std::vector<double> loc_rows;
    if (multi_state) {
        for (int i = 1; i <= 100; ++i) loc.push_back("trail" + std::to_string(i));
        // Hiking mass spread evenly over the trails.
        for (double home : {0.1, 0.8}) {
            loc_rows.push_back(home);
            for (int i = 0; i < 100; ++i) loc_rows.push_back((1.0 - home) / 100.0);
        }
    } else {
        loc.push_back("hiking");
        loc_rows = {0.2, 0.8, 0.8, 0.2};
    }
    std::vector<double> alive;
    for (std::size_t i = 0; i < loc.size(); ++i) alive.insert(alive.end(), {0.99, 0.01});  // healthy: location irrelevant
    for (const auto& l : loc) {
        double p = l == "home" ? 0.9 : 0.1;
        alive.insert(alive.end(), {p, 1.0 - p});
    }
    NetworkSpec n;
    n.variables = {
        var("Healthy", {"healthy", "unhealthy"}, Role::Target),
        var("VacationLocation", loc, Role::Target),
        var("Alive", {"alive", "dead"}, Role::Observation),
    };
    n.cpts = {
        prior("Healthy", {0.8, 0.2}),
        table("VacationLocation", {"Healthy"}, loc_rows),
        table("Alive", {"Healthy", "VacationLocation"}, alive),
    };
    return n;
}

NetworkSpec academe() {
    const std::vector<std::string> gab{"good", "average", "bad"};
    const std::vector<std::string> pf{"pass", "fail"};
    NetworkSpec n;
    n.variables = {
        var("Theory", gab, Role::Target),
        var("Practice", gab, Role::Target),
        var("Extra", {"yes", "no"}, Role::Target),
        var("OtherFactors", {"plus", "minus"}, Role::Target),
        var("MarkTP", pf, Role::Auxiliary),
        var("GlobalMark", pf, Role::Auxiliary),
        var("FinalMark", pf, Role::Observation),
    };
    n.cpts = {
        prior("Theory", {0.4, 0.3, 0.3}),
        prior("Practice", {0.6, 0.25, 0.15}),
        prior("Extra", {0.3, 0.7}),
        prior("OtherFactors", {0.8, 0.2}),
        // Theory x Practice; any bad value fails.
        table("MarkTP", {"Theory", "Practice"},
              binary({1.0, 0.85, 0.0, 0.9, 0.2, 0.0, 0.0, 0.0, 0.0})),
        table("GlobalMark", {"MarkTP", "Extra"}, binary({1.0, 1.0, 0.25, 0.0})),
        table("FinalMark", {"GlobalMark", "OtherFactors"}, binary({1.0, 0.7, 0.05, 0.0})),
    };
    return n;
}

NetworkSpec asia() {
    const std::vector<std::string> yn{"yes", "no"};
    NetworkSpec n;
    n.variables = {
        var("VisitToAsia", yn, Role::Auxiliary),
        var("Smoking", yn, Role::Auxiliary),
        var("Tuberculosis", yn, Role::Target),
        var("LungCancer", yn, Role::Target),
        var("Bronchitis", yn, Role::Target),
        var("TbOrCa", yn, Role::Auxiliary),
        var("X_ray", {"abnormal", "normal"}, Role::Observation),
        var("Dyspnea", yn, Role::Observation),
    };
    Cpt either;
    either.child = "TbOrCa";
    either.parents = {"Tuberculosis", "LungCancer"};
    either.kind = CptKind::Deterministic;
    either.default_state = "no";
    either.exceptions = {{{"yes", "yes"}, "yes"}, {{"yes", "no"}, "yes"}, {{"no", "yes"}, "yes"}};
    n.cpts = {
        prior("VisitToAsia", {0.01, 0.99}),
        prior("Smoking", {0.5, 0.5}),
        table("Tuberculosis", {"VisitToAsia"}, binary({0.05, 0.01})),
        table("LungCancer", {"Smoking"}, binary({0.1, 0.01})),
        table("Bronchitis", {"Smoking"}, binary({0.6, 0.3})),
        either,
        table("X_ray", {"TbOrCa"}, binary({0.98, 0.05})),
        table("Dyspnea", {"TbOrCa", "Bronchitis"}, binary({0.9, 0.7, 0.8, 0.1})),
    };
    return n;
}

NetworkSpec circuit2() {
    const std::vector<std::string> level{"low", "high"};
    const std::vector<std::string> health{"abnormal", "ok"};
    NetworkSpec n;
    n.variables = {
        var("In1", level, Role::Observation), var("In2", level, Role::Observation),
        var("OK1", health, Role::Target),     var("OK2", health, Role::Target),
        var("OK3", health, Role::Target),     var("C", level, Role::Auxiliary),
        var("D", level, Role::Auxiliary),     var("E", level, Role::Observation),
    };
    // Inverter rows (health, input): (abnormal,low) low; (abnormal,high) 50/50;
    // (ok,low) high; (ok,high) low.
    const std::vector<double> inverter{1.0, 0.0, 0.5, 0.5, 0.0, 1.0, 1.0, 0.0};
    // OR gate: an abnormal gate always outputs low.
    Cpt gate;
    gate.child = "E";
    gate.parents = {"OK3", "C", "D"};
    gate.kind = CptKind::Deterministic;
    gate.default_state = "low";
    gate.exceptions = {{{"ok", "low", "high"}, "high"}, {{"ok", "high", "low"}, "high"}, {{"ok", "high", "high"}, "high"}};
    n.cpts = {
        prior("In1", {1.0, 0.0}),
        prior("In2", {1.0, 0.0}),
        prior("OK1", {0.5, 0.5}),
        prior("OK2", {0.5, 0.5}),
        prior("OK3", {0.5, 0.5}),
        table("C", {"OK1", "In1"}, inverter),
        table("D", {"OK2", "In2"}, inverter),
        gate,
    };
    return n;
}

}  // namespace

std::vector<std::string> fixture_ids() {
    return {"circuit", "vacation1", "vacation100", "academe", "asia", "circuit2"};
}

NetworkSpec embedded_fixture(const std::string& id) {
    if (id == "circuit") return circuit();
    if (id == "vacation1") return vacation(false);
    if (id == "vacation100") return vacation(true);
    if (id == "academe") return academe();
    if (id == "asia") return asia();
    if (id == "circuit2") return circuit2();
    throw std::invalid_argument("unknown fixture '" + id + "'");
}

Network fixture(const std::string& id) {
    if (const char* dir = std::getenv("MRE_FIXTURE_DIR"); dir && *dir) {
        auto path = std::filesystem::path(dir) / (id + ".json");
        if (std::filesystem::exists(path)) return load_network_file(path.string());
    }
    return Network(embedded_fixture(id));
}

}  // namespace mre
