#include "mre/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mre {

using json = nlohmann::ordered_json;

namespace {

constexpr double kRowSumTol = 1e-9;

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

const Variable* find_var(const NetworkSpec& spec, const std::string& name) {
    for (const auto& v : spec.variables)
        if (v.name == name) return &v;
    return nullptr;
}

int state_of(const Variable& v, const std::string& s) {
    auto it = std::find(v.states.begin(), v.states.end(), s);
    return it == v.states.end() ? -1 : static_cast<int>(it - v.states.begin());
}

// Decodes flat row index -> parent state configuration (rightmost fastest).
std::vector<int> decode_row(std::size_t row, const std::vector<int>& cards) {
    std::vector<int> cfg(cards.size());
    for (std::size_t i = cards.size(); i-- > 0;) {
        cfg[i] = static_cast<int>(row % cards[i]);
        row /= cards[i];
    }
    return cfg;
}

}  // namespace

const char* role_name(Role r) {
    switch (r) {
        case Role::Target: return "target";
        case Role::Observation: return "observation";
        case Role::Auxiliary: return "auxiliary";
    }
    return "auxiliary";
}

Role parse_role(const std::string& s) {
    if (s == "target") return Role::Target;
    if (s == "observation") return Role::Observation;
    if (s == "auxiliary") return Role::Auxiliary;
    throw std::invalid_argument("unknown role '" + s + "'");
}

const char* cpt_kind_name(CptKind k) {
    switch (k) {
        case CptKind::Table: return "table";
        case CptKind::NoisyOr: return "noisy_or";
        case CptKind::Deterministic: return "deterministic";
    }
    return "table";
}

ModelError::ModelError(std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg = "invalid network:";
          for (const auto& p : problems) msg += "\n  " + p;
          return msg;
      }()),
      problems_(std::move(problems)) {}

// ---------------------------------------------------------------- validate

namespace {

void check_cpt_body(const Cpt& c, const Variable& child, const NetworkSpec& spec,
                    std::vector<std::string>& out) {
    std::vector<int> cards;
    bool parents_ok = true;
    std::set<std::string> seen;
    for (const auto& p : c.parents) {
        const Variable* pv = find_var(spec, p);
        if (!pv) {
            out.push_back("CPT '" + c.child + "': unknown parent '" + p + "'");
            parents_ok = false;
            continue;
        }
        if (p == c.child) out.push_back("CPT '" + c.child + "': variable is its own parent");
        if (!seen.insert(p).second)
            out.push_back("CPT '" + c.child + "': duplicate parent '" + p + "'");
        cards.push_back(static_cast<int>(pv->states.size()));
    }
    if (!parents_ok) return;

    std::size_t n_rows = 1;
    for (int k : cards) n_rows *= static_cast<std::size_t>(k);
    const std::size_t n_child = child.states.size();

    switch (c.kind) {
        case CptKind::Table: {
            if (c.rows.size() != n_rows * n_child) {
                out.push_back("CPT '" + c.child + "': expected " + std::to_string(n_rows * n_child) +
                              " table entries, got " + std::to_string(c.rows.size()));
                return;
            }
            for (std::size_t r = 0; r < n_rows; ++r) {
                double sum = 0.0;
                for (std::size_t s = 0; s < n_child; ++s) {
                    double v = c.rows[r * n_child + s];
                    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                        out.push_back("CPT '" + c.child + "' row " + std::to_string(r) +
                                      ": entry " + fmt_double(v) + " outside [0,1]");
                    sum += v;
                }
                if (std::abs(sum - 1.0) > kRowSumTol)
                    out.push_back("CPT '" + c.child + "' row " + std::to_string(r) + ": row sum " +
                                  fmt_double(sum) + " \xE2\x89\xA0 1");
            }
            break;
        }
        case CptKind::NoisyOr: {
            if (n_child != 2)
                out.push_back("CPT '" + c.child + "': noisy-OR child must be binary");
            if (state_of(child, c.effect_state) < 0)
                out.push_back("CPT '" + c.child + "': unknown effect_state '" + c.effect_state + "'");
            if (!(c.leak >= 0.0 && c.leak <= 1.0))
                out.push_back("CPT '" + c.child + "': leak " + fmt_double(c.leak) + " outside [0,1]");
            std::set<std::string> covered;
            for (const auto& in : c.inputs) {
                if (std::find(c.parents.begin(), c.parents.end(), in.parent) == c.parents.end()) {
                    out.push_back("CPT '" + c.child + "': noisy-OR input '" + in.parent +
                                  "' is not a parent");
                    continue;
                }
                if (!covered.insert(in.parent).second)
                    out.push_back("CPT '" + c.child + "': noisy-OR input '" + in.parent +
                                  "' listed twice");
                if (state_of(*find_var(spec, in.parent), in.activating_state) < 0)
                    out.push_back("CPT '" + c.child + "': unknown activating_state '" +
                                  in.activating_state + "' for '" + in.parent + "'");
                if (!(in.p >= 0.0 && in.p <= 1.0))
                    out.push_back("CPT '" + c.child + "': noisy-OR p " + fmt_double(in.p) +
                                  " for '" + in.parent + "' outside [0,1]");
            }
            for (const auto& p : c.parents)
                if (!covered.count(p))
                    out.push_back("CPT '" + c.child + "': parent '" + p +
                                  "' has no noisy-OR parameter");
            break;
        }
        case CptKind::Deterministic: {
            if (state_of(child, c.default_state) < 0)
                out.push_back("CPT '" + c.child + "': unknown default_state '" + c.default_state + "'");
            std::set<std::vector<std::string>> configs;
            for (std::size_t i = 0; i < c.exceptions.size(); ++i) {
                const auto& ex = c.exceptions[i];
                std::string where = "CPT '" + c.child + "' exception " + std::to_string(i);
                if (ex.parent_states.size() != c.parents.size()) {
                    out.push_back(where + ": expected " + std::to_string(c.parents.size()) +
                                  " parent states");
                    continue;
                }
                for (std::size_t k = 0; k < c.parents.size(); ++k)
                    if (state_of(*find_var(spec, c.parents[k]), ex.parent_states[k]) < 0)
                        out.push_back(where + ": unknown state '" + ex.parent_states[k] +
                                      "' for '" + c.parents[k] + "'");
                if (state_of(child, ex.child_state) < 0)
                    out.push_back(where + ": unknown child state '" + ex.child_state + "'");
                if (!configs.insert(ex.parent_states).second)
                    out.push_back(where + ": parent configuration covered twice");
            }
            break;
        }
    }
}

}  // namespace

std::vector<std::string> validate(const NetworkSpec& spec) {
    std::vector<std::string> out;
    if (spec.variables.empty()) out.push_back("network has no variables");

    std::set<std::string> names;
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
        const auto& v = spec.variables[i];
        if (v.name.empty()) out.push_back("variable " + std::to_string(i) + ": empty name");
        if (!names.insert(v.name).second) out.push_back("variable '" + v.name + "': duplicate name");
        if (v.states.size() < 2) out.push_back("variable '" + v.name + "': fewer than 2 states");
        std::set<std::string> st(v.states.begin(), v.states.end());
        if (st.size() != v.states.size()) out.push_back("variable '" + v.name + "': duplicate state name");
    }

    std::map<std::string, int> cpt_count;
    for (const auto& c : spec.cpts) {
        const Variable* child = find_var(spec, c.child);
        if (!child) {
            out.push_back("CPT for unknown variable '" + c.child + "'");
            continue;
        }
        if (++cpt_count[c.child] == 2) out.push_back("variable '" + c.child + "': more than one CPT");
        check_cpt_body(c, *child, spec, out);
    }
    for (const auto& v : spec.variables)
        if (!cpt_count.count(v.name)) out.push_back("variable '" + v.name + "': missing CPT");

    // Acyclicity (Kahn) over the declared parent lists.
    std::map<std::string, std::vector<std::string>> kids;
    std::map<std::string, int> indeg;
    for (const auto& v : spec.variables) indeg[v.name] = 0;
    for (const auto& c : spec.cpts) {
        if (!indeg.count(c.child)) continue;
        for (const auto& p : c.parents) {
            if (!indeg.count(p)) continue;
            kids[p].push_back(c.child);
            ++indeg[c.child];
        }
    }
    std::deque<std::string> q;
    for (const auto& [n, d] : indeg)
        if (d == 0) q.push_back(n);
    std::size_t visited = 0;
    while (!q.empty()) {
        auto n = q.front();
        q.pop_front();
        ++visited;
        for (const auto& k : kids[n])
            if (--indeg[k] == 0) q.push_back(k);
    }
    if (visited < indeg.size()) {
        std::string members;
        for (const auto& [n, d] : indeg)
            if (d > 0) members += (members.empty() ? "" : ", ") + n;
        out.push_back("cycle among variables {" + members + "}");
    }
    return out;
}

// ------------------------------------------------------------- expand_cpt

Cpt expand_cpt(const Cpt& cpt, const NetworkSpec& spec) {
    if (cpt.kind == CptKind::Table) return cpt;
    const Variable* child = find_var(spec, cpt.child);
    if (!child) throw ModelError({"CPT for unknown variable '" + cpt.child + "'"});

    std::vector<const Variable*> pv;
    std::vector<int> cards;
    for (const auto& p : cpt.parents) {
        const Variable* v = find_var(spec, p);
        if (!v) throw ModelError({"CPT '" + cpt.child + "': unknown parent '" + p + "'"});
        pv.push_back(v);
        cards.push_back(static_cast<int>(v->states.size()));
    }
    std::size_t n_rows = 1;
    for (int k : cards) n_rows *= static_cast<std::size_t>(k);
    const std::size_t n_child = child->states.size();

    Cpt out;
    out.child = cpt.child;
    out.parents = cpt.parents;
    out.kind = CptKind::Table;
    out.rows.assign(n_rows * n_child, 0.0);

    if (cpt.kind == CptKind::NoisyOr) {
        const int effect = state_of(*child, cpt.effect_state);
        if (effect < 0 || n_child != 2)
            throw ModelError({"CPT '" + cpt.child + "': bad noisy-OR effect state"});
        // Parameters in parent order.
        std::vector<double> p(cpt.parents.size(), 0.0);
        std::vector<int> act(cpt.parents.size(), -1);
        for (const auto& in : cpt.inputs) {
            auto it = std::find(cpt.parents.begin(), cpt.parents.end(), in.parent);
            if (it == cpt.parents.end()) continue;
            auto k = static_cast<std::size_t>(it - cpt.parents.begin());
            p[k] = in.p;
            act[k] = state_of(*pv[k], in.activating_state);
        }
        for (std::size_t r = 0; r < n_rows; ++r) {
            auto cfg = decode_row(r, cards);
            double off = 1.0 - cpt.leak;
            for (std::size_t k = 0; k < cfg.size(); ++k)
                if (cfg[k] == act[k]) off *= 1.0 - p[k];
            out.rows[r * n_child + effect] = 1.0 - off;
            out.rows[r * n_child + (1 - effect)] = off;
        }
    } else {
        const int def = state_of(*child, cpt.default_state);
        if (def < 0) throw ModelError({"CPT '" + cpt.child + "': bad default_state"});
        for (std::size_t r = 0; r < n_rows; ++r) out.rows[r * n_child + def] = 1.0;
        for (const auto& ex : cpt.exceptions) {
            std::size_t r = 0;
            for (std::size_t k = 0; k < cards.size(); ++k) {
                int s = state_of(*pv[k], ex.parent_states.at(k));
                if (s < 0) throw ModelError({"CPT '" + cpt.child + "': bad exception state"});
                r = r * cards[k] + static_cast<std::size_t>(s);
            }
            int cs = state_of(*child, ex.child_state);
            if (cs < 0) throw ModelError({"CPT '" + cpt.child + "': bad exception child state"});
            std::fill_n(out.rows.begin() + static_cast<std::ptrdiff_t>(r * n_child), n_child, 0.0);
            out.rows[r * n_child + cs] = 1.0;
        }
    }
    return out;
}

// ------------------------------------------------------------- Assignment

Assignment::Assignment(std::initializer_list<Binding> bindings) {
    for (const auto& [v, s] : bindings) set(v, s);
}

void Assignment::set(int var, int state) {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), Binding{var, -1},
                               [](const Binding& a, const Binding& b) { return a.first < b.first; });
    if (it != bindings_.end() && it->first == var)
        it->second = state;
    else
        bindings_.insert(it, {var, state});
}

void Assignment::erase(int var) {
    std::erase_if(bindings_, [var](const Binding& b) { return b.first == var; });
}

std::optional<int> Assignment::get(int var) const {
    for (const auto& [v, s] : bindings_)
        if (v == var) return s;
    return std::nullopt;
}

bool Assignment::contains(const Binding& b) const {
    auto s = get(b.first);
    return s && *s == b.second;
}

std::vector<int> Assignment::vars() const {
    std::vector<int> out;
    out.reserve(bindings_.size());
    for (const auto& b : bindings_) out.push_back(b.first);
    return out;
}

bool Assignment::consistent_with(const Assignment& other) const {
    for (const auto& [v, s] : bindings_) {
        auto o = other.get(v);
        if (o && *o != s) return false;
    }
    return true;
}

Assignment Assignment::merged(const Assignment& other) const {
    if (!consistent_with(other)) throw std::invalid_argument("conflicting assignments");
    Assignment out = *this;
    for (const auto& [v, s] : other.bindings_) out.set(v, s);
    return out;
}

bool Assignment::subset_of(const Assignment& other) const {
    for (const auto& b : bindings_)
        if (!other.contains(b)) return false;
    return true;
}

// ----------------------------------------------------------------- Network

Network::Network(NetworkSpec spec) : spec_(std::move(spec)) {
    auto problems = validate(spec_);
    if (!problems.empty()) throw ModelError(std::move(problems));

    const int n = static_cast<int>(spec_.variables.size());
    for (int i = 0; i < n; ++i) index_[spec_.variables[i].name] = i;
    parents_.assign(n, {});
    children_.assign(n, {});
    tables_.assign(n, {});
    for (const auto& c : spec_.cpts) {
        int v = index_.at(c.child);
        for (const auto& p : c.parents) {
            parents_[v].push_back(index_.at(p));
            children_[index_.at(p)].push_back(v);
        }
        tables_[v] = expand_cpt(c, spec_).rows;
    }
    for (auto& ch : children_) std::sort(ch.begin(), ch.end());

    // Topological order, ties by declaration order.
    std::vector<int> indeg(n);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::set<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.insert(v);
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        topo_.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) ready.insert(c);
    }
}

int Network::index_of(const std::string& var) const {
    auto it = index_.find(var);
    if (it == index_.end()) throw std::invalid_argument("unknown variable '" + var + "'");
    return it->second;
}

std::optional<int> Network::find(const std::string& var) const {
    auto it = index_.find(var);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Network::state_index(int var, const std::string& state) const {
    int s = state_of(spec_.variables[var], state);
    if (s < 0)
        throw std::invalid_argument("unknown state '" + state + "' for variable '" + name(var) + "'");
    return s;
}

std::vector<int> Network::with_role(Role r) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(size()); ++v)
        if (spec_.variables[v].role == r) out.push_back(v);
    return out;
}

double Network::cpt_entry(int child, const std::vector<int>& parent_states, int s) const {
    std::size_t r = 0;
    const auto& ps = parents_[child];
    for (std::size_t k = 0; k < ps.size(); ++k) r = r * card(ps[k]) + parent_states[k];
    return tables_[child][r * card(child) + s];
}

Assignment Network::assign(const std::vector<std::pair<std::string, std::string>>& bindings) const {
    Assignment a;
    for (const auto& [var, st] : bindings) {
        int v = index_of(var);
        int s = state_index(v, st);
        if (auto prev = a.get(v); prev && *prev != s)
            throw std::invalid_argument("variable '" + var + "' bound twice");
        a.set(v, s);
    }
    return a;
}

Assignment Network::parse_bindings(const std::vector<std::string>& tokens) const {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& t : tokens) {
        auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == t.size())
            throw std::invalid_argument("malformed binding '" + t + "' (expected VAR=state)");
        pairs.emplace_back(t.substr(0, eq), t.substr(eq + 1));
    }
    return assign(pairs);
}

std::string Network::format(const Assignment& a) const {
    std::string out = "(";
    bool first = true;
    for (const auto& [v, s] : a.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += name(v) + "=" + spec_.variables[v].states[s];
    }
    return out + ")";
}

Network Network::mutilated(const Assignment& interventions) const {
    NetworkSpec m = spec_;
    for (auto& c : m.cpts) {
        int v = index_.at(c.child);
        auto s = interventions.get(v);
        if (!s) continue;
        Cpt point;
        point.child = c.child;
        point.kind = CptKind::Table;
        point.rows.assign(card(v), 0.0);
        point.rows[*s] = 1.0;
        c = point;
    }
    return Network(std::move(m));
}

// --------------------------------------------------------------- JSON I/O

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw ModelError({where + ": " + what});
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) schema_error(where, "expected object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) schema_error(where, "expected string");
    return j.get<std::string>();
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) schema_error(where, "expected number");
    return j.get<double>();
}

std::vector<std::string> get_strings(const json& j, const std::string& where) {
    if (!j.is_array()) schema_error(where, "expected array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_string(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

NetworkSpec parse_network(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ModelError({std::string("malformed JSON: ") + e.what()});
    }
    NetworkSpec spec;
    const json& vars = field(doc, "variables", "network");
    if (!vars.is_array()) schema_error("variables", "expected array");
    if (vars.empty()) schema_error("variables", "empty variable list");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        std::string w = "variables[" + std::to_string(i) + "]";
        Variable v;
        v.name = get_string(field(vars[i], "name", w), w + ".name");
        v.states = get_strings(field(vars[i], "states", w), w + ".states");
        if (vars[i].contains("role")) {
            try {
                v.role = parse_role(get_string(vars[i]["role"], w + ".role"));
            } catch (const std::invalid_argument& e) {
                schema_error(w + ".role", e.what());
            }
        }
        spec.variables.push_back(std::move(v));
    }
    const json& cpts = field(doc, "cpts", "network");
    if (!cpts.is_array()) schema_error("cpts", "expected array");
    for (std::size_t i = 0; i < cpts.size(); ++i) {
        std::string w = "cpts[" + std::to_string(i) + "]";
        const json& cj = cpts[i];
        Cpt c;
        c.child = get_string(field(cj, "child", w), w + ".child");
        if (cj.contains("parents")) c.parents = get_strings(cj["parents"], w + ".parents");
        std::string kind = cj.contains("kind") ? get_string(cj["kind"], w + ".kind") : "table";
        if (kind == "table") {
            c.kind = CptKind::Table;
            const json& rows = field(cj, "rows", w);
            if (!rows.is_array()) schema_error(w + ".rows", "expected array");
            for (std::size_t k = 0; k < rows.size(); ++k)
                c.rows.push_back(get_number(rows[k], w + ".rows[" + std::to_string(k) + "]"));
        } else if (kind == "noisy_or") {
            c.kind = CptKind::NoisyOr;
            c.effect_state = get_string(field(cj, "effect_state", w), w + ".effect_state");
            c.leak = cj.contains("leak") ? get_number(cj["leak"], w + ".leak") : 0.0;
            const json& ins = field(cj, "inputs", w);
            if (!ins.is_array()) schema_error(w + ".inputs", "expected array");
            for (std::size_t k = 0; k < ins.size(); ++k) {
                std::string wk = w + ".inputs[" + std::to_string(k) + "]";
                NoisyOrInput in;
                in.parent = get_string(field(ins[k], "parent", wk), wk + ".parent");
                in.activating_state =
                    get_string(field(ins[k], "activating_state", wk), wk + ".activating_state");
                in.p = get_number(field(ins[k], "p", wk), wk + ".p");
                c.inputs.push_back(in);
            }
        } else if (kind == "deterministic") {
            c.kind = CptKind::Deterministic;
            c.default_state = get_string(field(cj, "default_state", w), w + ".default_state");
            if (cj.contains("exceptions")) {
                const json& ex = cj["exceptions"];
                if (!ex.is_array()) schema_error(w + ".exceptions", "expected array");
                for (std::size_t k = 0; k < ex.size(); ++k) {
                    std::string wk = w + ".exceptions[" + std::to_string(k) + "]";
                    DeterministicRow row;
                    row.parent_states = get_strings(field(ex[k], "parents", wk), wk + ".parents");
                    row.child_state = get_string(field(ex[k], "state", wk), wk + ".state");
                    c.exceptions.push_back(row);
                }
            }
        } else {
            schema_error(w + ".kind", "unknown kind '" + kind + "'");
        }
        spec.cpts.push_back(std::move(c));
    }
    return spec;
}

std::string serialize_network(const NetworkSpec& spec) {
    json doc;
    doc["variables"] = json::array();
    for (const auto& v : spec.variables)
        doc["variables"].push_back({{"name", v.name}, {"states", v.states}, {"role", role_name(v.role)}});
    doc["cpts"] = json::array();
    for (const auto& c : spec.cpts) {
        json cj;
        cj["child"] = c.child;
        cj["parents"] = c.parents;
        cj["kind"] = cpt_kind_name(c.kind);
        switch (c.kind) {
            case CptKind::Table: cj["rows"] = c.rows; break;
            case CptKind::NoisyOr: {
                cj["effect_state"] = c.effect_state;
                cj["inputs"] = json::array();
                for (const auto& in : c.inputs)
                    cj["inputs"].push_back(
                        {{"parent", in.parent}, {"activating_state", in.activating_state}, {"p", in.p}});
                cj["leak"] = c.leak;
                break;
            }
            case CptKind::Deterministic: {
                cj["default_state"] = c.default_state;
                cj["exceptions"] = json::array();
                for (const auto& ex : c.exceptions)
                    cj["exceptions"].push_back({{"parents", ex.parent_states}, {"state", ex.child_state}});
                break;
            }
        }
        doc["cpts"].push_back(std::move(cj));
    }
    return doc.dump(2) + "\n";
}

Network load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError({"cannot open '" + path + "'"});
    std::stringstream ss;
    ss << in.rdbuf();
    return Network(parse_network(ss.str()));
}

// ----------------------------------------------------------- d-separation

bool d_separated(const Network& net, const std::vector<int>& a, const std::vector<int>& b,
                 const std::vector<int>& z) {
    const int n = static_cast<int>(net.size());
    auto check = [n](const std::vector<int>& s) {
        for (int v : s)
            if (v < 0 || v >= n) throw std::invalid_argument("unknown variable index");
    };
    check(a);
    check(b);
    check(z);

    std::vector<char> in_z(n, 0), anc_z(n, 0), in_b(n, 0);
    for (int v : z) in_z[v] = 1;
    for (int v : b) in_b[v] = 1;
    // Ancestors of Z (including Z) decide whether a collider is open.
    std::deque<int> q(z.begin(), z.end());
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (anc_z[v]) continue;
        anc_z[v] = 1;
        for (int p : net.parents(v)) q.push_back(p);
    }

    // Traverse (node, direction): up = arrived from a child, down = from a parent.
    std::vector<char> seen_up(n, 0), seen_down(n, 0);
    std::deque<std::pair<int, bool>> frontier;
    for (int v : a) frontier.emplace_back(v, true);
    while (!frontier.empty()) {
        auto [v, up] = frontier.front();
        frontier.pop_front();
        auto& seen = up ? seen_up : seen_down;
        if (seen[v]) continue;
        seen[v] = 1;
        if (!in_z[v] && in_b[v]) return false;
        if (up) {
            if (in_z[v]) continue;
            for (int p : net.parents(v)) frontier.emplace_back(p, true);
            for (int c : net.children(v)) frontier.emplace_back(c, false);
        } else {
            if (!in_z[v])
                for (int c : net.children(v)) frontier.emplace_back(c, false);
            if (anc_z[v])
                for (int p : net.parents(v)) frontier.emplace_back(p, true);
        }
    }
    return true;
}

}  // namespace mre
