#include "mre/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "mre/infer.hpp"

namespace mre {

namespace {

constexpr double kTieTol = 1e-12;

double to_bits(double nats) { return nats / std::numbers::ln2; }

std::vector<int> declared_targets(const Network& net, std::vector<int> targets) {
    if (targets.empty()) targets = net.targets();
    if (targets.empty()) throw std::invalid_argument("network has no target variables");
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

void require_evidence(const Network& net, const Assignment& evidence) {
    if (!(mass(net, evidence) > 0.0))
        throw ImpossibleEvidence("impossible evidence: P" + net.format(evidence) + " = 0");
}

std::string fixed4(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

void check_params(const BaselineParams& p) {
    if (p.et_mi_threshold < 0 || p.et_branch_prob_threshold < 0 || p.cet_flow_threshold < 0 ||
        p.simp_likelihood_factor < 0 || p.simp_likelihood_factor >= 1)
        throw std::invalid_argument("baseline thresholds must be nonnegative (factor below 1)");
    if (p.k < 1) throw std::invalid_argument("K must be at least 1");
}

// ------------------------------------------------------------------- K-MAP

std::vector<ScoredExplanation> k_map(const Network& net, const Assignment& evidence, std::size_t k,
                                     std::vector<int> targets) {
    if (k < 1) throw std::invalid_argument("K must be at least 1");
    targets = enumeration_targets(net, std::move(targets));
    for (int t : targets)
        if (evidence.contains(t)) throw std::invalid_argument("target variable '" + net.name(t) + "' is observed");
    Factor joint = joint_marginal(net, targets, evidence);
    Factor prior = posterior(net, targets, {});
    const double pe = joint.sum();
    if (!(pe > 0.0)) throw ImpossibleEvidence("impossible evidence: P" + net.format(evidence) + " = 0");

    std::vector<ScoredExplanation> all;
    all.reserve(joint.size());
    for (std::size_t i = 0; i < joint.size(); ++i) {
        auto cfg = joint.decode(i);
        ScoredExplanation s;
        for (std::size_t j = 0; j < targets.size(); ++j) s.x.set(targets[j], cfg[j]);
        s.kind = ScoreKind::Probability;
        s.score = joint.values[i];
        s.posterior = joint.values[i] / pe;
        s.prior = prior.values[i];
        s.order = i;
        all.push_back(std::move(s));
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return rank_key(a.score) > rank_key(b.score);
    });
    if (all.size() > k) all.resize(k);
    return all;
}

// ------------------------------------------------------------------ K-SIMP

std::vector<SimplifiedExplanation> k_simp(const Network& net, const Assignment& evidence, const BaselineParams& params,
                                          std::vector<int> targets) {
    check_params(params);
    auto maps = k_map(net, evidence, params.k, targets);
    auto lik = [&](const Assignment& x) { return likelihood(net, evidence, x); };

    std::vector<SimplifiedExplanation> out;
    for (const auto& m : maps) {
        SimplifiedExplanation r;
        r.source = m.x;
        r.source_likelihood = lik(m.x);
        Assignment cur = m.x;
        double cur_lik = r.source_likelihood;
        const double floor = (1.0 - params.simp_likelihood_factor) * r.source_likelihood;
        while (cur.size() > 1) {
            Assignment best;
            double best_lik = -1.0;
            for (int v : cur.vars()) {  // declaration order
                Assignment y = cur;
                y.erase(v);
                double l = lik(y);
                if (l > best_lik) {
                    best_lik = l;
                    best = std::move(y);
                }
            }
            if (best_lik < floor - kTieTol) break;
            cur = std::move(best);
            cur_lik = best_lik;
            ++r.deletions;
        }
        bool dup = std::any_of(out.begin(), out.end(), [&](const auto& o) { return o.result.x == cur; });
        if (dup) continue;
        r.result.x = cur;
        r.result.kind = ScoreKind::Likelihood;
        r.result.score = cur_lik;
        r.result.prior = prob(net, cur);
        r.result.posterior = prob(net, cur, evidence);
        r.result.order = out.size();
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return rank_key(a.result.score) > rank_key(b.result.score);
    });
    return out;
}

// ------------------------------------------------------------------- trees

namespace {

struct TreeBuilder {
    const Network& net;
    const Assignment& evidence;
    const BaselineParams& params;
    std::vector<int> targets;  // declaration order
    TreeKind kind;
    double p_evidence = 0.0;

    double criterion(int x, const std::vector<int>& unused, const Assignment& branch) const {
        if (kind == TreeKind::Causal) return causal_information_flow(net, x, evidence.vars(), branch, evidence);
        std::vector<int> others;
        for (int y : unused)
            if (y != x) others.push_back(y);
        if (others.empty()) return set_mutual_information(net, x, evidence.vars(), branch);
        return cond_mutual_information(net, x, others, evidence.merged(branch));
    }

    // Average uncertainty coefficient I(X;Y)/H(Y), the explanation-tree tie-break.
    double uncertainty_coefficient(int x, const std::vector<int>& unused, const Assignment& branch) const {
        const Assignment ctx = evidence.merged(branch);
        double s = 0.0;
        int n = 0;
        for (int y : unused) {
            if (y == x) continue;
            double h = entropy(net, y, ctx);
            s += h > 0.0 ? mutual_information(net, x, y, ctx) / h : 0.0;
            ++n;
        }
        return n ? s / n : 0.0;
    }

    double threshold() const {
        return kind == TreeKind::Causal ? params.cet_flow_threshold : params.et_mi_threshold;
    }

    // Returns false when no variable qualifies (and the node is not forced).
    bool build(const Assignment& branch, TreeNode& node, bool force) const {
        std::vector<int> unused;
        for (int t : targets)
            if (!branch.contains(t)) unused.push_back(t);
        if (unused.empty()) return false;

        int best = -1;
        double best_c = -1.0;
        for (int x : unused) {
            double c = criterion(x, unused, branch);
            bool better = best < 0 || c > best_c + kTieTol;
            if (!better && std::abs(c - best_c) <= kTieTol) {
                if (kind == TreeKind::Explanation) {
                    double ux = uncertainty_coefficient(x, unused, branch);
                    double ub = uncertainty_coefficient(best, unused, branch);
                    if (ux > ub + kTieTol)
                        better = true;
                    else if (std::abs(ux - ub) <= kTieTol)
                        better = net.name(x) < net.name(best);
                } else {
                    better = net.name(x) < net.name(best);
                }
            }
            if (better) {
                best = x;
                best_c = c;
            }
        }
        const bool qualifies = to_bits(best_c) >= threshold() - kTieTol;
        if (!qualifies && !force) return false;

        node.variable = best;
        node.criterion = best_c;
        node.forced = !qualifies;
        for (int s = 0; s < net.card(best); ++s) {
            Assignment next = branch;
            next.set(best, s);
            TreeEdge edge;
            edge.state = s;
            bool expandable = qualifies;
            if (kind == TreeKind::Explanation) {
                edge.label = prob(net, next, evidence);
                expandable = expandable && edge.label > params.et_branch_prob_threshold;
            } else {
                double pe = mass(net, evidence, next);
                edge.label = pe > 0.0 ? std::log(pe / p_evidence) : -std::numeric_limits<double>::infinity();
                expandable = expandable && pe > 0.0;
            }
            if (expandable) {
                TreeNode child;
                if (build(next, child, false)) edge.child.push_back(std::move(child));
            }
            node.edges.push_back(std::move(edge));
        }
        return true;
    }
};

ExplanationTree make_tree(const Network& net, const Assignment& evidence, const BaselineParams& params,
                          std::vector<int> targets, TreeKind kind) {
    check_params(params);
    require_evidence(net, evidence);
    TreeBuilder b{net, evidence, params, declared_targets(net, std::move(targets)), kind, mass(net, evidence)};
    for (int t : b.targets)
        if (evidence.contains(t)) throw std::invalid_argument("target variable '" + net.name(t) + "' is observed");
    ExplanationTree tree;
    tree.kind = kind;
    b.build({}, tree.root, true);
    return tree;
}

void collect(const TreeNode& node, const Assignment& prefix, std::vector<TreeBranch>& out) {
    for (const auto& e : node.edges) {
        Assignment path = prefix;
        path.set(node.variable, e.state);
        out.push_back({path, e.label, out.size()});
        for (const auto& c : e.child) collect(c, path, out);
    }
}

nlohmann::ordered_json node_json(const Network& net, const TreeNode& node) {
    nlohmann::ordered_json j;
    j["variable"] = net.name(node.variable);
    j["criterion"] = node.criterion;
    j["forced"] = node.forced;
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : node.edges) {
        nlohmann::ordered_json ej;
        ej["state"] = net.variable(node.variable).states[e.state];
        ej["label"] = fixed4(e.label);
        ej["label_value"] = std::isfinite(e.label) ? nlohmann::ordered_json(e.label) : nlohmann::ordered_json(nullptr);
        ej["child"] = e.child.empty() ? nlohmann::ordered_json(nullptr) : node_json(net, e.child.front());
        j["edges"].push_back(std::move(ej));
    }
    return j;
}

void node_text(const Network& net, const TreeNode& node, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
    out += pad + net.name(node.variable) + (node.forced ? "  [forced]" : "") + "\n";
    for (const auto& e : node.edges) {
        out += pad + "  " + net.variable(node.variable).states[e.state] + ": " + fixed4(e.label) + "\n";
        for (const auto& c : e.child) node_text(net, c, depth + 1, out);
    }
}

}  // namespace

ExplanationTree explanation_tree(const Network& net, const Assignment& evidence, const BaselineParams& params,
                                 std::vector<int> targets) {
    return make_tree(net, evidence, params, std::move(targets), TreeKind::Explanation);
}

ExplanationTree causal_explanation_tree(const Network& net, const Assignment& evidence,
                                        const BaselineParams& params, std::vector<int> targets) {
    return make_tree(net, evidence, params, std::move(targets), TreeKind::Causal);
}

std::vector<TreeBranch> tree_branches(const ExplanationTree& tree) {
    std::vector<TreeBranch> out;
    if (tree.root.variable >= 0) collect(tree.root, {}, out);
    std::stable_sort(out.begin(), out.end(), [](const TreeBranch& a, const TreeBranch& b) {
        double ka = rank_key(a.label), kb = rank_key(b.label);
        if (ka != kb) return ka > kb;
        if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
        return a.visit < b.visit;
    });
    return out;
}

std::string tree_to_text(const Network& net, const ExplanationTree& tree) {
    std::string out;
    if (tree.root.variable >= 0) node_text(net, tree.root, 0, out);
    return out;
}

std::string tree_to_json(const Network& net, const ExplanationTree& tree) {
    nlohmann::ordered_json j;
    j["kind"] = tree.kind == TreeKind::Causal ? "causal_explanation_tree" : "explanation_tree";
    j["root"] = tree.root.variable >= 0 ? node_json(net, tree.root) : nlohmann::ordered_json(nullptr);
    return j.dump(2);
}

}  // namespace mre
