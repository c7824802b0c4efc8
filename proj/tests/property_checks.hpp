#pragma once

// Randomized and exhaustive invariant checks shared by the unit-test suite and
// the acceptance binary. Each check returns how many cases it examined and the
// first counterexample it found, if any.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mre/model.hpp"

namespace mre::checks {

struct CheckResult {
    bool ok = true;
    long cases = 0;      // instances where the property was actually exercised
    std::string detail;  // first counterexample, or a short summary

    void fail(std::string why) {
        if (ok) detail = std::move(why);
        ok = false;
    }
};

// Random DAG over `nodes` variables named V0..V{n-1} (2-3 states, up to three
// parents drawn from earlier variables, strictly positive CPT entries). The
// last variable is the observation; all others are targets.
NetworkSpec random_network(std::mt19937_64& rng, int nodes, int max_states = 3);

// Relative closeness used by the algebraic identities.
bool close_rel(double a, double b, double rel);

// Four ways of computing the GBF agree on every fixture scenario candidate.
CheckResult gbf_forms_agree(double rel = 1e-9);
// Chain of per-piece conditional GBFs equals the joint-evidence GBF.
CheckResult chain_rule_holds(double rel = 1e-9);
// Evidence pieces independent given x and its alternative: GBF factorizes.
CheckResult product_case_holds(int networks = 200, std::uint64_t seed = 15);
// Fixed belief update ratio: GBF increases with the prior and matches the
// closed form.
CheckResult prior_monotonicity_holds();
// CBF(y; e | x) <= 1 / r(x-bar; e) implies GBF(x, y; e) <= GBF(x; e).
CheckResult cbf_threshold_implication(int networks = 1000, std::uint64_t seed = 2);
// Appending an independent / conditionally independent / disconfirmed state to
// an explanation with r > 1 lowers its GBF.
CheckResult independent_variable_dilutes(int networks = 200, std::uint64_t seed = 11);
CheckResult conditionally_independent_variable_dilutes(int networks = 200, std::uint64_t seed = 12);
CheckResult disconfirmed_state_dilutes(int networks = 200, std::uint64_t seed = 13);
// Explaining-away ordering of posteriors holds iff the CBF ordering holds.
CheckResult explaining_away_equivalence(int networks = 500, std::uint64_t seed = 3);
// Variable elimination equals brute-force summation on fixtures and random networks.
CheckResult elimination_matches_oracle(int random_networks = 200, std::uint64_t seed = 5);
// d-separation implies numerical conditional independence.
CheckResult d_separation_implies_independence(int random_networks = 100, std::uint64_t seed = 7);
// K-MRE output is undominated as required and every exclusion carries a valid witness.
CheckResult kmre_minimality_holds();
// The d-separation prune never changes the MRE answer.
CheckResult pruning_is_sound(int random_networks = 200, std::uint64_t seed = 9);

}  // namespace mre::checks
