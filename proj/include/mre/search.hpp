#pragma once

#include <cstddef>
#include <vector>

#include "mre/model.hpp"
#include "mre/relevance.hpp"

namespace mre {

enum class ScoreKind { Gbf, Probability, Likelihood };

const char* score_kind_name(ScoreKind k);

struct ScoredExplanation {
    Assignment x;
    double score = 0.0;
    ScoreKind kind = ScoreKind::Gbf;
    double prior = 0.0;      // P(x)
    double posterior = 0.0;  // P(x|e)
    Strength strength = Strength::Negative;  // meaningful for GBF scores
    std::size_t order = 0;   // position in the enumeration
    int equivalents = 1;     // interchangeable tied explanations it stands for
};

// Score comparison key: scores equal to ~11 significant digits tie.
double rank_key(double score);
// Total order: score descending, then fewer variables, then enumeration order.
bool ranks_before(const ScoredExplanation& a, const ScoredExplanation& b);

// Targets sorted by variable name (the enumeration's variable order).
std::vector<int> enumeration_targets(const Network& net, std::vector<int> targets = {});

std::size_t candidate_count(const Network& net, const std::vector<int>& targets);

// Every nonempty partial instantiation of `targets` (default: role=target):
// subset size ascending, then lexicographic by variable name, then state
// order (first variable slowest).
std::vector<Assignment> enumerate_explanations(const Network& net, std::vector<int> targets = {});

// All candidates with their GBF, sorted by ranks_before.
std::vector<ScoredExplanation> score_all(const Network& net, const Assignment& evidence,
                                         std::vector<int> targets = {});

struct MreOptions {
    bool prune = true;
};

// Candidates skipped by the d-separation prune.
bool prunable(const Network& net, const Assignment& x, const std::vector<int>& evidence_vars);

ScoredExplanation mre(const Network& net, const Assignment& evidence, const MreOptions& options = {},
                      std::vector<int> targets = {});

}  // namespace mre
