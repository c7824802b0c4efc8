#include "mre/kmre.hpp"

#include <stdexcept>

namespace mre {

const char* dominance_name(Dominance d) {
    switch (d) {
        case Dominance::None: return "none";
        case Dominance::Strong: return "strong";
        case Dominance::Weak: return "weak";
    }
    return "none";
}

bool dominates_one_way(const ScoredExplanation& x, const ScoredExplanation& y, Dominance* relation) {
    const double kx = rank_key(x.score), ky = rank_key(y.score);
    Dominance d = Dominance::None;
    if (x.x.strict_subset_of(y.x) && kx >= ky)
        d = Dominance::Strong;
    else if (y.x.strict_subset_of(x.x) && kx > ky)
        d = Dominance::Weak;
    if (relation) *relation = d;
    return d != Dominance::None;
}

DominanceVerdict dominates(const ScoredExplanation& x, const ScoredExplanation& y) {
    DominanceVerdict v;
    if (dominates_one_way(x, y, &v.relation)) {
        v.first_dominates = true;
        return v;
    }
    dominates_one_way(y, x, &v.relation);
    return v;
}

std::vector<ScoredExplanation> minimal_set(const std::vector<ScoredExplanation>& scored) {
    std::vector<ScoredExplanation> out;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < scored.size() && !dominated; ++j)
            if (j != i && dominates_one_way(scored[j], scored[i])) dominated = true;
        if (!dominated) out.push_back(scored[i]);
    }
    return out;
}

namespace {

bool interchangeable(const ScoredExplanation& a, const ScoredExplanation& b) {
    if (a.x.size() != b.x.size() || rank_key(a.score) != rank_key(b.score)) return false;
    const auto& ba = a.x.bindings();
    const auto& bb = b.x.bindings();
    int differing = 0;
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (ba[i].first != bb[i].first) return false;
        if (ba[i].second != bb[i].second) ++differing;
    }
    return differing == 1;
}

}  // namespace

std::vector<ScoredExplanation> collapse_ties(const std::vector<ScoredExplanation>& scored) {
    std::vector<ScoredExplanation> out;
    for (const auto& s : scored) {
        bool merged = false;
        for (auto& kept : out)
            if (interchangeable(kept, s)) {
                ++kept.equivalents;
                merged = true;
                break;
            }
        if (!merged) out.push_back(s);
    }
    return out;
}

KmreResult select_kmre(const std::vector<ScoredExplanation>& scored, const KmreOptions& options) {
    if (options.k < 1) throw std::invalid_argument("K must be at least 1");
    const auto pool = options.collapse ? collapse_ties(scored) : scored;
    KmreResult res;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto& c = pool[i];
        if (!res.selected.empty() && options.use_floor && !(rank_key(c.score) > options.gbf_floor)) break;

        std::optional<Exclusion> why;
        // Strong dominance is checked against the whole (uncollapsed) space in
        // both modes, so collapsing ties never hides a witness.
        for (const auto& w : scored) {
            Dominance d;
            if (w.x == c.x || !dominates_one_way(w, c, &d)) continue;
            if (d == Dominance::Strong || options.mode == KmreMode::Full) {
                why = Exclusion{c, w, d};
                break;
            }
        }
        if (!why && options.mode == KmreMode::Admitted)
            for (const auto& s : res.selected) {
                Dominance d;
                if (dominates_one_way(s, c, &d)) {
                    why = Exclusion{c, s, d};
                    break;
                }
            }
        if (why) {
            res.excluded.push_back(*why);
            continue;
        }
        res.selected.push_back(c);
        if (res.selected.size() == options.k) break;
    }
    return res;
}

std::vector<ScoredExplanation> k_mre(const Network& net, const Assignment& evidence, const KmreOptions& options,
                                     std::vector<int> targets) {
    return select_kmre(score_all(net, evidence, std::move(targets)), options).selected;
}

}  // namespace mre
