#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mre/model.hpp"
#include "mre/search.hpp"

namespace mre {

enum class Dominance { None, Strong, Weak };

const char* dominance_name(Dominance d);

struct DominanceVerdict {
    Dominance relation = Dominance::None;
    // True when the first argument dominates the second.
    bool first_dominates = false;
};

// Strong: bindings(x) strict subset of bindings(y) and score(x) >= score(y).
// Weak: bindings(x) strict superset of bindings(y) and score(x) > score(y).
// Checked in both directions; `first_dominates` tells which way it holds.
DominanceVerdict dominates(const ScoredExplanation& x, const ScoredExplanation& y);

// True when `x` dominates `y` (strongly or weakly); `relation` receives the kind.
bool dominates_one_way(const ScoredExplanation& x, const ScoredExplanation& y, Dominance* relation = nullptr);

// Explanations dominated by no other list member, order preserved.
std::vector<ScoredExplanation> minimal_set(const std::vector<ScoredExplanation>& scored);

// Merges interchangeable ties: same variable set, differing in exactly one
// variable's state, equal score. The first (best-ranked) one is kept and
// counts the rest in `equivalents`.
std::vector<ScoredExplanation> collapse_ties(const std::vector<ScoredExplanation>& scored);

enum class KmreMode {
    // Strong dominance by any candidate; weak dominance by already-selected
    // explanations.
    Admitted,
    // Both dominance kinds checked against every candidate.
    Full,
};

struct KmreOptions {
    std::size_t k = 3;
    bool use_floor = true;
    double gbf_floor = 1.0;  // exclusive; the top explanation is always reported
    bool collapse = true;
    KmreMode mode = KmreMode::Admitted;
};

struct Exclusion {
    ScoredExplanation candidate;
    ScoredExplanation witness;
    Dominance relation = Dominance::None;
};

struct KmreResult {
    std::vector<ScoredExplanation> selected;
    // Candidates ranked above the cut-off that were rejected, with witnesses.
    std::vector<Exclusion> excluded;
};

// Selection over a complete score_all list.
KmreResult select_kmre(const std::vector<ScoredExplanation>& scored, const KmreOptions& options = {});

std::vector<ScoredExplanation> k_mre(const Network& net, const Assignment& evidence,
                                     const KmreOptions& options = {}, std::vector<int> targets = {});

}  // namespace mre
