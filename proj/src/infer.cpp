#include "mre/infer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace mre {

namespace {

std::size_t product_of(const std::vector<int>& cards) {
    std::size_t n = 1;
    for (int c : cards) n *= static_cast<std::size_t>(c);
    return n;
}

int position(const std::vector<int>& scope, int var) {
    auto it = std::find(scope.begin(), scope.end(), var);
    return it == scope.end() ? -1 : static_cast<int>(it - scope.begin());
}

std::vector<std::size_t> strides(const std::vector<int>& cards) {
    std::vector<std::size_t> s(cards.size(), 1);
    for (std::size_t i = cards.size(); i-- > 1;) s[i - 1] = s[i] * static_cast<std::size_t>(cards[i]);
    return s;
}

double xlogx_ratio(double p, double q) {
    if (p <= 0.0) return 0.0;
    if (q <= 0.0) throw std::domain_error("information term p*ln(p/0)");
    return p * std::log(p / q);
}

}  // namespace

// ------------------------------------------------------------------ Factor

Factor::Factor(std::vector<int> s, std::vector<int> c)
    : scope(std::move(s)), cards(std::move(c)), values(product_of(cards), 0.0) {}

double Factor::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double Factor::at(const std::vector<int>& config) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < scope.size(); ++i) idx = idx * cards[i] + config[i];
    return values[idx];
}

double Factor::at(const Assignment& a) const {
    std::vector<int> cfg(scope.size());
    for (std::size_t i = 0; i < scope.size(); ++i) {
        auto s = a.get(scope[i]);
        if (!s) throw std::invalid_argument("assignment does not bind the factor scope");
        cfg[i] = *s;
    }
    return at(cfg);
}

std::vector<int> Factor::decode(std::size_t index) const {
    std::vector<int> cfg(scope.size());
    for (std::size_t i = scope.size(); i-- > 0;) {
        cfg[i] = static_cast<int>(index % cards[i]);
        index /= cards[i];
    }
    return cfg;
}

Factor factor_product(const Factor& f, const Factor& g) {
    std::vector<int> scope = f.scope, cards = f.cards;
    for (std::size_t i = 0; i < g.scope.size(); ++i)
        if (position(scope, g.scope[i]) < 0) {
            scope.push_back(g.scope[i]);
            cards.push_back(g.cards[i]);
        }
    Factor out(scope, cards);
    const auto fs = strides(f.cards), gs = strides(g.cards);
    // Per output position, the stride it contributes in f and g.
    std::vector<std::size_t> in_f(scope.size(), 0), in_g(scope.size(), 0);
    for (std::size_t i = 0; i < scope.size(); ++i) {
        int pf = position(f.scope, scope[i]), pg = position(g.scope, scope[i]);
        if (pf >= 0) in_f[i] = fs[pf];
        if (pg >= 0) in_g[i] = gs[pg];
    }
    std::vector<int> cfg(scope.size(), 0);
    std::size_t fi = 0, gi = 0;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] = f.values[fi] * g.values[gi];
        for (std::size_t i = scope.size(); i-- > 0;) {
            if (++cfg[i] < cards[i]) {
                fi += in_f[i];
                gi += in_g[i];
                break;
            }
            fi -= in_f[i] * (cards[i] - 1);
            gi -= in_g[i] * (cards[i] - 1);
            cfg[i] = 0;
        }
    }
    return out;
}

Factor sum_out(const Factor& f, int var) {
    int p = position(f.scope, var);
    if (p < 0) return f;
    std::vector<int> scope = f.scope, cards = f.cards;
    scope.erase(scope.begin() + p);
    cards.erase(cards.begin() + p);
    Factor out(scope, cards);
    const auto fs = strides(f.cards);
    const std::size_t inner = fs[p], k = static_cast<std::size_t>(f.cards[p]);
    const std::size_t outer = f.values.size() / (inner * k);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t i = 0; i < inner; ++i)
                out.values[o * inner + i] += f.values[(o * k + s) * inner + i];
    return out;
}

Factor reduce(const Factor& f, const Assignment& a) {
    std::vector<int> scope, cards;
    std::vector<int> fixed(f.scope.size(), -1);
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
        if (auto s = a.get(f.scope[i]))
            fixed[i] = *s;
        else {
            scope.push_back(f.scope[i]);
            cards.push_back(f.cards[i]);
        }
    }
    if (scope.size() == f.scope.size()) return f;
    Factor out(scope, cards);
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        auto cfg = f.decode(k);
        bool ok = true;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            if (fixed[i] >= 0) {
                if (cfg[i] != fixed[i]) {
                    ok = false;
                    break;
                }
            } else {
                idx = idx * f.cards[i] + cfg[i];
            }
        }
        if (ok) out.values[idx] = f.values[k];
    }
    return out;
}

Factor cpt_factor(const Network& net, int v, const Assignment& interventions) {
    if (auto s = interventions.get(v)) {
        Factor f({v}, {net.card(v)});
        f.values[*s] = 1.0;
        return f;
    }
    std::vector<int> scope = net.parents(v), cards;
    scope.push_back(v);
    for (int u : scope) cards.push_back(net.card(u));
    Factor f(scope, cards);
    f.values = net.table(v);
    return f;
}

// ------------------------------------------------------ variable elimination

std::vector<int> min_fill_order(const Network& net, const std::vector<Factor>& factors,
                                const std::vector<int>& vars) {
    std::map<int, std::set<int>> adj;
    for (int v : vars) adj[v];
    for (const auto& f : factors)
        for (int a : f.scope)
            for (int b : f.scope)
                if (a != b) adj[a].insert(b);
    std::set<int> remaining(vars.begin(), vars.end());
    std::vector<int> order;
    while (!remaining.empty()) {
        int best = -1;
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        for (int v : remaining) {
            std::vector<int> nb(adj[v].begin(), adj[v].end());
            std::size_t fill = 0;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]].count(nb[j])) ++fill;
            if (fill < best_fill || (fill == best_fill && net.name(v) < net.name(best))) {
                best = v;
                best_fill = fill;
            }
        }
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (int a : nb) {
            for (int b : nb)
                if (a != b) adj[a].insert(b);
            adj[a].erase(best);
        }
        adj.erase(best);
        remaining.erase(best);
        order.push_back(best);
    }
    return order;
}

Factor joint_marginal(const Network& net, const std::vector<int>& query, const Assignment& evidence,
                      const Assignment& interventions) {
    for (int q : query)
        if (evidence.contains(q)) throw std::invalid_argument("query variable is also evidence");
    std::vector<Factor> factors;
    for (int v = 0; v < static_cast<int>(net.size()); ++v)
        factors.push_back(reduce(cpt_factor(net, v, interventions), evidence));

    std::vector<int> hidden;
    for (int v = 0; v < static_cast<int>(net.size()); ++v)
        if (!evidence.contains(v) && std::find(query.begin(), query.end(), v) == query.end())
            hidden.push_back(v);

    for (int v : min_fill_order(net, factors, hidden)) {
        Factor prod;
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (position(f.scope, v) >= 0)
                prod = factor_product(prod, f);
            else
                rest.push_back(std::move(f));
        }
        rest.push_back(sum_out(prod, v));
        factors = std::move(rest);
    }
    Factor result;
    for (const auto& f : factors) result = factor_product(result, f);

    // Reorder to the requested query order.
    std::vector<int> cards;
    for (int q : query) cards.push_back(net.card(q));
    Factor out(query, cards);
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        auto cfg = out.decode(k);
        std::vector<int> src(result.scope.size());
        for (std::size_t i = 0; i < result.scope.size(); ++i)
            src[i] = cfg[position(query, result.scope[i])];
        out.values[k] = result.at(src);
    }
    return out;
}

Factor posterior(const Network& net, const std::vector<int>& query, const Assignment& evidence,
                 const Assignment& interventions) {
    Factor f = joint_marginal(net, query, evidence, interventions);
    double z = f.sum();
    if (!(z > 0.0)) throw ImpossibleEvidence("impossible evidence: P(" + net.format(evidence) + ") = 0");
    for (auto& v : f.values) v /= z;
    return f;
}

double mass(const Network& net, const Assignment& a, const Assignment& interventions) {
    return joint_marginal(net, {}, a, interventions).values[0];
}

double prob(const Network& net, const Assignment& x, const Assignment& e) {
    if (!x.consistent_with(e)) throw std::invalid_argument("assignment conflicts with evidence");
    double pe = mass(net, e);
    if (!(pe > 0.0)) throw ImpossibleEvidence("impossible evidence: P" + net.format(e) + " = 0");
    return std::clamp(mass(net, x.merged(e)) / pe, 0.0, 1.0);
}

double likelihood(const Network& net, const Assignment& e, const Assignment& x) {
    if (!(mass(net, x) > 0.0))
        throw ImpossibleEvidence("zero-probability conditioning assignment " + net.format(x));
    return prob(net, e, x);
}

double prob_do(const Network& net, const Assignment& event, const Assignment& evidence,
               const Assignment& intervention) {
    for (const auto& [v, s] : event.bindings())
        if (intervention.contains(v)) throw std::invalid_argument("event variable is intervened");
    if (!event.consistent_with(evidence)) throw std::invalid_argument("event conflicts with evidence");
    double pe = mass(net, evidence, intervention);
    if (!(pe > 0.0)) throw ImpossibleEvidence("impossible evidence under intervention");
    return std::clamp(mass(net, event.merged(evidence), intervention) / pe, 0.0, 1.0);
}

// ------------------------------------------------------------ brute force

Factor brute_force_joint(const Network& net, std::size_t cap) {
    std::vector<int> scope(net.size()), cards;
    std::iota(scope.begin(), scope.end(), 0);
    std::size_t total = 1;
    for (int v : scope) {
        cards.push_back(net.card(v));
        total *= static_cast<std::size_t>(net.card(v));
        if (total > cap) throw std::length_error("joint table exceeds the configured cap");
    }
    Factor j(scope, cards);
    std::vector<int> ps;
    for (std::size_t k = 0; k < j.values.size(); ++k) {
        auto cfg = j.decode(k);
        double p = 1.0;
        for (int v : scope) {
            ps.clear();
            for (int u : net.parents(v)) ps.push_back(cfg[u]);
            p *= net.cpt_entry(v, ps, cfg[v]);
            if (p == 0.0) break;
        }
        j.values[k] = p;
    }
    return j;
}

double brute_force_mass(const Network&, const Factor& joint, const Assignment& a) {
    double s = 0.0;
    for (std::size_t k = 0; k < joint.values.size(); ++k) {
        auto cfg = joint.decode(k);
        bool ok = true;
        for (const auto& [v, st] : a.bindings())
            if (cfg[v] != st) {
                ok = false;
                break;
            }
        if (ok) s += joint.values[k];
    }
    return s;
}

// ---------------------------------------------------- information measures

double entropy(const Network& net, int x, const Assignment& context) {
    Factor p = posterior(net, {x}, context);
    double h = 0.0;
    for (double v : p.values)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double mutual_information(const Network& net, int x, int y, const Assignment& context) {
    return set_mutual_information(net, x, {y}, context);
}

double set_mutual_information(const Network& net, int x, const std::vector<int>& vars,
                              const Assignment& context) {
    if (std::find(vars.begin(), vars.end(), x) != vars.end())
        throw std::invalid_argument("X must not be in the conditioning set");
    std::vector<int> scope{x};
    scope.insert(scope.end(), vars.begin(), vars.end());
    Factor pxy = posterior(net, scope, context);
    const std::size_t kx = static_cast<std::size_t>(net.card(x));
    const std::size_t ky = pxy.values.size() / kx;
    std::vector<double> px(kx, 0.0), py(ky, 0.0);
    for (std::size_t i = 0; i < kx; ++i)
        for (std::size_t j = 0; j < ky; ++j) {
            px[i] += pxy.values[i * ky + j];
            py[j] += pxy.values[i * ky + j];
        }
    double mi = 0.0;
    for (std::size_t i = 0; i < kx; ++i)
        for (std::size_t j = 0; j < ky; ++j) mi += xlogx_ratio(pxy.values[i * ky + j], px[i] * py[j]);
    return std::max(mi, 0.0);
}

double cond_mutual_information(const Network& net, int x, const std::vector<int>& ys,
                               const Assignment& context) {
    if (ys.empty()) return 0.0;
    double s = 0.0;
    for (int y : ys) s += mutual_information(net, x, y, context);
    return std::max(s / static_cast<double>(ys.size()), 0.0);
}

double causal_information_flow(const Network& net, int x, const std::vector<int>& effect,
                               const Assignment& context, const Assignment& weight_evidence) {
    if (context.contains(x)) throw std::invalid_argument("X is already intervened");
    Factor w = posterior(net, {x}, weight_evidence, context);
    const int kx = net.card(x);
    std::vector<Factor> q;
    for (int s = 0; s < kx; ++s) {
        Assignment d = context;
        d.set(x, s);
        q.push_back(posterior(net, effect, {}, d));
    }
    const std::size_t ke = q[0].values.size();
    double flow = 0.0;
    for (std::size_t e = 0; e < ke; ++e) {
        double mix = 0.0;
        for (int s = 0; s < kx; ++s) mix += w.values[s] * q[s].values[e];
        for (int s = 0; s < kx; ++s)
            if (w.values[s] > 0.0) flow += w.values[s] * xlogx_ratio(q[s].values[e], mix);
    }
    return std::max(flow, 0.0);
}

}  // namespace mre
