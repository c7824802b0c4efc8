#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mre/model.hpp"
#include "mre/search.hpp"

namespace mre {

struct BaselineParams {
    double et_mi_threshold = 0.05;          // bits
    double et_branch_prob_threshold = 0.0;  // expand a branch only above this P(branch|e)
    double cet_flow_threshold = 0.01;       // bits
    double simp_likelihood_factor = 0.05;
    std::size_t k = 3;
};

void check_params(const BaselineParams& p);

// Top-K full instantiations of the targets. `score` is the joint P(x, e);
// `posterior` holds P(x | e). Ties keep enumeration order.
std::vector<ScoredExplanation> k_map(const Network& net, const Assignment& evidence, std::size_t k,
                                     std::vector<int> targets = {});

struct SimplifiedExplanation {
    ScoredExplanation result;  // likelihood-scored P(e | x)
    Assignment source;         // the MAP solution it came from
    double source_likelihood = 0.0;
    int deletions = 0;
};

// Greedy simplification of the top-K MAP solutions: repeatedly drop the
// variable whose removal keeps P(e|x) highest, as long as it stays at or
// above (1 - factor) times the source solution's likelihood. Results are
// deduplicated and ranked by likelihood.
std::vector<SimplifiedExplanation> k_simp(const Network& net, const Assignment& evidence,
                                          const BaselineParams& params = {}, std::vector<int> targets = {});

struct TreeNode;

struct TreeEdge {
    int state = 0;
    // P(branch | e) for explanation trees; ln[P(e | do(branch)) / P(e)] for
    // causal explanation trees.
    double label = 0.0;
    std::vector<TreeNode> child;  // empty or exactly one subtree
};

struct TreeNode {
    int variable = -1;
    double criterion = 0.0;  // nats
    bool forced = false;     // root kept although below the threshold
    std::vector<TreeEdge> edges;
};

enum class TreeKind { Explanation, Causal };

struct ExplanationTree {
    TreeKind kind = TreeKind::Explanation;
    TreeNode root;
};

ExplanationTree explanation_tree(const Network& net, const Assignment& evidence, const BaselineParams& params = {},
                                 std::vector<int> targets = {});
ExplanationTree causal_explanation_tree(const Network& net, const Assignment& evidence,
                                        const BaselineParams& params = {}, std::vector<int> targets = {});

struct TreeBranch {
    Assignment path;
    double label = 0.0;
    std::size_t visit = 0;  // depth-first visit order
};

// Every root-to-edge path with its edge label, best first: label descending,
// then shorter path, then visit order.
std::vector<TreeBranch> tree_branches(const ExplanationTree& tree);

std::string tree_to_text(const Network& net, const ExplanationTree& tree);
std::string tree_to_json(const Network& net, const ExplanationTree& tree);

}  // namespace mre
