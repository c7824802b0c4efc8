#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mre/model.hpp"

namespace mre {

class ImpossibleEvidence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Nonnegative table over `scope`, row-major with the rightmost variable
// varying fastest.
struct Factor {
    std::vector<int> scope;
    std::vector<int> cards;
    std::vector<double> values;

    Factor() : values{1.0} {}
    Factor(std::vector<int> scope, std::vector<int> cards);

    std::size_t size() const { return values.size(); }
    double sum() const;
    // Entry for a full configuration of `scope` (same order).
    double at(const std::vector<int>& config) const;
    // Entry for an assignment binding (at least) every scope variable.
    double at(const Assignment& a) const;
    std::vector<int> decode(std::size_t index) const;
};

Factor factor_product(const Factor& f, const Factor& g);
Factor sum_out(const Factor& f, int var);
// Drops bound variables from the scope, keeping only consistent entries.
Factor reduce(const Factor& f, const Assignment& a);

// CPT of `v` as a factor over parents(v) + v; a point mass if intervened.
Factor cpt_factor(const Network& net, int v, const Assignment& interventions = {});

// Min-fill order (ties broken by variable name) for eliminating `vars` from
// the interaction graph of `factors`.
std::vector<int> min_fill_order(const Network& net, const std::vector<Factor>& factors,
                                const std::vector<int>& vars);

// Unnormalized P(query, evidence) over `query` (evidence variables are
// absent from the result scope) in the network mutilated by `interventions`.
Factor joint_marginal(const Network& net, const std::vector<int>& query, const Assignment& evidence,
                      const Assignment& interventions = {});

// P(query | evidence, do(interventions)), normalized. Throws
// ImpossibleEvidence when P(evidence) = 0.
Factor posterior(const Network& net, const std::vector<int>& query, const Assignment& evidence,
                 const Assignment& interventions = {});

// P(a) in the (possibly mutilated) network.
double mass(const Network& net, const Assignment& a, const Assignment& interventions = {});

// P(x | e). With empty e this is the prior P(x).
double prob(const Network& net, const Assignment& x, const Assignment& e = {});
// P(e | x).
double likelihood(const Network& net, const Assignment& e, const Assignment& x);
// P(event | evidence, do(intervention)).
double prob_do(const Network& net, const Assignment& event, const Assignment& evidence,
               const Assignment& intervention);

// Full joint by the chain rule over all variables in declaration order.
Factor brute_force_joint(const Network& net, std::size_t cap = std::size_t{1} << 24);
// Oracle sum of joint entries consistent with `a`.
double brute_force_mass(const Network& net, const Factor& joint, const Assignment& a);

// Information measures (natural log).
double entropy(const Network& net, int x, const Assignment& context);
double mutual_information(const Network& net, int x, int y, const Assignment& context);
// Mean over y in ys of I(X;Y | context), clamped at 0.
double cond_mutual_information(const Network& net, int x, const std::vector<int>& ys,
                               const Assignment& context);
// I(X; joint configuration of `vars` | context).
double set_mutual_information(const Network& net, int x, const std::vector<int>& vars,
                              const Assignment& context);

// Interventional information flow from X to the joint configuration of
// `effect`, with `context` applied as interventions. X's states are weighted
// by P(x | weight_evidence, do(context)).
double causal_information_flow(const Network& net, int x, const std::vector<int>& effect,
                               const Assignment& context, const Assignment& weight_evidence = {});

}  // namespace mre
