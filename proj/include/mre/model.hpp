#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mre {

enum class Role { Target, Observation, Auxiliary };

const char* role_name(Role r);
Role parse_role(const std::string& s);

struct Variable {
    std::string name;
    std::vector<std::string> states;
    Role role = Role::Auxiliary;

    bool operator==(const Variable&) const = default;
};

enum class CptKind { Table, NoisyOr, Deterministic };

const char* cpt_kind_name(CptKind k);

// One causal input of a noisy-OR gate: `parent` in `activating_state`
// independently produces the effect with probability `p`.
struct NoisyOrInput {
    std::string parent;
    std::string activating_state;
    double p = 0.0;

    bool operator==(const NoisyOrInput&) const = default;
};

// Deterministic exception: the child takes `child_state` when the parents
// take exactly `parent_states` (in the CPT's parent order).
struct DeterministicRow {
    std::vector<std::string> parent_states;
    std::string child_state;

    bool operator==(const DeterministicRow&) const = default;
};

struct Cpt {
    std::string child;
    std::vector<std::string> parents;
    CptKind kind = CptKind::Table;

    // Table: flat row-major array, rightmost parent varies fastest, child
    // states innermost.
    std::vector<double> rows;

    // NoisyOr
    std::string effect_state;
    std::vector<NoisyOrInput> inputs;
    double leak = 0.0;

    // Deterministic
    std::string default_state;
    std::vector<DeterministicRow> exceptions;

    bool operator==(const Cpt&) const = default;
};

struct NetworkSpec {
    std::vector<Variable> variables;
    std::vector<Cpt> cpts;

    bool operator==(const NetworkSpec&) const = default;
};

class ModelError : public std::runtime_error {
public:
    explicit ModelError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

// Every invariant violation in the spec; empty means the network is valid.
std::vector<std::string> validate(const NetworkSpec& spec);

class Network;

// Partial map variable -> state, kept sorted by variable index.
class Assignment {
public:
    using Binding = std::pair<int, int>;

    Assignment() = default;
    Assignment(std::initializer_list<Binding> bindings);

    void set(int var, int state);
    void erase(int var);
    std::optional<int> get(int var) const;
    bool contains(int var) const { return get(var).has_value(); }
    bool contains(const Binding& b) const;

    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    const std::vector<Binding>& bindings() const { return bindings_; }
    std::vector<int> vars() const;

    // True when no variable is bound to two different states.
    bool consistent_with(const Assignment& other) const;
    // Union; throws std::invalid_argument on conflicting bindings.
    Assignment merged(const Assignment& other) const;
    // Binding-set inclusion (non-strict).
    bool subset_of(const Assignment& other) const;
    bool strict_subset_of(const Assignment& other) const {
        return size() < other.size() && subset_of(other);
    }

    bool operator==(const Assignment&) const = default;
    auto operator<=>(const Assignment&) const = default;

private:
    std::vector<Binding> bindings_;
};

// Validated, immutable network with expanded CPT tables.
class Network {
public:
    explicit Network(NetworkSpec spec);

    const NetworkSpec& spec() const { return spec_; }
    std::size_t size() const { return spec_.variables.size(); }
    const Variable& variable(int v) const { return spec_.variables[v]; }
    const std::string& name(int v) const { return spec_.variables[v].name; }
    int card(int v) const { return static_cast<int>(spec_.variables[v].states.size()); }
    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    // Table for v: row-major over parents (rightmost fastest), child innermost.
    const std::vector<double>& table(int v) const { return tables_[v]; }
    const std::vector<int>& topological_order() const { return topo_; }

    int index_of(const std::string& var) const;
    std::optional<int> find(const std::string& var) const;
    int state_index(int var, const std::string& state) const;

    std::vector<int> with_role(Role r) const;
    std::vector<int> targets() const { return with_role(Role::Target); }

    // P(child = s | parents = config), config in parent order.
    double cpt_entry(int child, const std::vector<int>& parent_states, int s) const;

    // Assignment from name pairs; throws std::invalid_argument naming the
    // offending variable or state.
    Assignment assign(const std::vector<std::pair<std::string, std::string>>& bindings) const;
    // Parses "VAR=state" tokens.
    Assignment parse_bindings(const std::vector<std::string>& tokens) const;
    std::string format(const Assignment& a) const;

    // Copy with `interventions` applied: intervened variables lose their
    // parents and become point masses.
    Network mutilated(const Assignment& interventions) const;

    bool operator==(const Network& o) const { return spec_ == o.spec_; }

private:
    NetworkSpec spec_;
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<std::vector<double>> tables_;
    std::vector<int> topo_;
};

// Row-major expansion of a NoisyOr / Deterministic CPT (Table passes through).
Cpt expand_cpt(const Cpt& cpt, const NetworkSpec& spec);

NetworkSpec parse_network(const std::string& json_text);
std::string serialize_network(const NetworkSpec& spec);
Network load_network_file(const std::string& path);

// Standard d-separation via the reachable (Bayes-ball) procedure.
bool d_separated(const Network& net, const std::vector<int>& a,
                 const std::vector<int>& b, const std::vector<int>& z);

}  // namespace mre
