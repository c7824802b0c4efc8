#include "mre/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "mre/infer.hpp"

namespace mre {

const char* score_kind_name(ScoreKind k) {
    switch (k) {
        case ScoreKind::Gbf: return "gbf";
        case ScoreKind::Probability: return "probability";
        case ScoreKind::Likelihood: return "likelihood";
    }
    return "gbf";
}

double rank_key(double score) {
    if (!std::isfinite(score) || score == 0.0) return score;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11g", score);
    return std::strtod(buf, nullptr);
}

bool ranks_before(const ScoredExplanation& a, const ScoredExplanation& b) {
    double ka = rank_key(a.score), kb = rank_key(b.score);
    if (ka != kb) return ka > kb;
    if (a.x.size() != b.x.size()) return a.x.size() < b.x.size();
    return a.order < b.order;
}

std::vector<int> enumeration_targets(const Network& net, std::vector<int> targets) {
    if (targets.empty()) targets = net.targets();
    if (targets.empty()) throw std::invalid_argument("network has no target variables");
    std::sort(targets.begin(), targets.end(),
              [&](int a, int b) { return net.name(a) < net.name(b); });
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

std::size_t candidate_count(const Network& net, const std::vector<int>& targets) {
    std::size_t n = 1;
    for (int t : targets) n *= static_cast<std::size_t>(net.card(t) + 1);
    return n - 1;
}

std::vector<Assignment> enumerate_explanations(const Network& net, std::vector<int> targets) {
    targets = enumeration_targets(net, std::move(targets));
    const std::size_t m = targets.size();
    std::vector<Assignment> out;
    out.reserve(candidate_count(net, targets));
    for (std::size_t k = 1; k <= m; ++k) {
        // Index combinations of size k in lexicographic order.
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<int> states(k, 0);
            while (true) {
                Assignment a;
                for (std::size_t i = 0; i < k; ++i) a.set(targets[idx[i]], states[i]);
                out.push_back(std::move(a));
                std::size_t i = k;
                while (i-- > 0) {
                    if (++states[i] < net.card(targets[idx[i]])) break;
                    states[i] = 0;
                }
                if (i == static_cast<std::size_t>(-1)) break;
            }
            std::size_t i = k;
            while (i-- > 0)
                if (idx[i] != i + m - k) break;
            if (i == static_cast<std::size_t>(-1)) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

namespace {

// Sums a factor over all entries consistent with `x`.
double factor_mass(const Factor& f, const Assignment& x) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        auto cfg = f.decode(k);
        bool ok = true;
        for (std::size_t i = 0; i < f.scope.size() && ok; ++i)
            if (auto st = x.get(f.scope[i]); st && *st != cfg[i]) ok = false;
        if (ok) s += f.values[k];
    }
    return s;
}

struct TargetTables {
    Factor prior;      // P(T)
    Factor posterior;  // P(T | e)
};

TargetTables target_tables(const Network& net, const Assignment& evidence, const std::vector<int>& targets) {
    for (int t : targets)
        if (evidence.contains(t)) throw std::invalid_argument("target variable '" + net.name(t) + "' is observed");
    return {posterior(net, targets, {}), posterior(net, targets, evidence)};
}

ScoredExplanation score_one(const TargetTables& tt, const Assignment& x, std::size_t order) {
    ScoredExplanation s;
    s.x = x;
    s.kind = ScoreKind::Gbf;
    s.prior = std::clamp(factor_mass(tt.prior, x), 0.0, 1.0);
    s.posterior = std::clamp(factor_mass(tt.posterior, x), 0.0, 1.0);
    s.score = gbf_from(s.prior, s.posterior);
    s.strength = strength_label(s.score);
    s.order = order;
    return s;
}

}  // namespace

std::vector<ScoredExplanation> score_all(const Network& net, const Assignment& evidence,
                                         std::vector<int> targets) {
    targets = enumeration_targets(net, std::move(targets));
    auto tt = target_tables(net, evidence, targets);
    auto cands = enumerate_explanations(net, targets);
    std::vector<ScoredExplanation> out;
    out.reserve(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) out.push_back(score_one(tt, cands[i], i));
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
}

bool prunable(const Network& net, const Assignment& x, const std::vector<int>& evidence_vars) {
    if (x.size() < 2 || evidence_vars.empty()) return false;
    const auto vars = x.vars();
    for (int y : vars) {
        std::vector<int> rest;
        for (int v : vars)
            if (v != y) rest.push_back(v);
        if (d_separated(net, {y}, evidence_vars, rest)) return true;
    }
    return false;
}

ScoredExplanation mre(const Network& net, const Assignment& evidence, const MreOptions& options,
                      std::vector<int> targets) {
    targets = enumeration_targets(net, std::move(targets));
    auto tt = target_tables(net, evidence, targets);
    const auto evars = evidence.vars();
    auto cands = enumerate_explanations(net, targets);
    ScoredExplanation best;
    bool have = false;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (options.prune && prunable(net, cands[i], evars)) continue;
        auto s = score_one(tt, cands[i], i);
        if (!have || ranks_before(s, best)) {
            best = std::move(s);
            have = true;
        }
    }
    return best;
}

}  // namespace mre
