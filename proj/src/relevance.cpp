#include "mre/relevance.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mre/infer.hpp"

namespace mre {

namespace {

// Probabilities within this distance of 1 are treated as certain, so that
// round-off in a ratio of masses does not turn +inf into a huge finite score.
constexpr double kCertain = 1e-12;

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    }
}

}  // namespace

Strength strength_label(double value) {
    if (value < 1.0) return Strength::Negative;
    if (value <= 3.0) return Strength::BarelyWorthMentioning;
    if (value <= 10.0) return Strength::Substantial;
    if (value <= 30.0) return Strength::Strong;
    if (value <= 100.0) return Strength::VeryStrong;
    return Strength::Decisive;
}

const char* strength_name(Strength s) {
    switch (s) {
        case Strength::Negative: return "Negative";
        case Strength::BarelyWorthMentioning: return "Barely worth mentioning";
        case Strength::Substantial: return "Substantial";
        case Strength::Strong: return "Strong";
        case Strength::VeryStrong: return "Very strong";
        case Strength::Decisive: return "Decisive";
    }
    return "Negative";
}

double gbf_from(double prior, double posterior) {
    if (prior <= 0.0) return 0.0;
    if (prior >= 1.0 - kCertain) return 0.0;
    if (posterior >= 1.0 - kCertain) return std::numeric_limits<double>::infinity();
    return posterior * (1.0 - prior) / (prior * (1.0 - posterior));
}

double belief_update_ratio(const Network& net, const Assignment& x, const Assignment& e) {
    double px = prob(net, x);
    if (!(px > 0.0)) throw std::domain_error("belief update ratio undefined for P(x) = 0");
    return prob(net, x, e) / px;
}

GbfScore gbf(const Network& net, const Assignment& x, const Assignment& e) {
    if (x.empty()) throw std::invalid_argument("explanation must be nonempty");
    GbfScore g;
    g.prior = prob(net, x);
    g.posterior = prob(net, x, e);
    g.value = gbf_from(g.prior, g.posterior);
    g.strength = strength_label(g.value);
    return g;
}

double cbf(const Network& net, const Assignment& y, const Assignment& e, const Assignment& x) {
    for (const auto& [v, s] : y.bindings())
        if (x.contains(v)) throw std::invalid_argument("y and x must be disjoint");
    if (!(mass(net, x.merged(y)) > 0.0)) throw ImpossibleEvidence("zero-probability conditioning");
    double prior = prob(net, y, x);
    double post = prob(net, y, e.merged(x));
    return gbf_from(prior, post);
}

double gbf_chain(const Network& net, const Assignment& x, const std::vector<Assignment>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("no evidence pieces");
    Assignment seen;
    double prior = prob(net, x);
    double value = 1.0;
    for (const auto& piece : pieces) {
        for (const auto& [v, s] : piece.bindings())
            if (seen.contains(v)) throw std::invalid_argument("evidence pieces overlap");
        seen = seen.merged(piece);
        double post = prob(net, x, seen);
        value *= gbf_from(prior, post);
        prior = post;
    }
    return value;
}

double gbf_likelihood_form(const Network& net, const Assignment& x, const Assignment& e) {
    // Sum P(e, x') and P(x') over every other configuration x' of vars(x).
    const auto vars = x.vars();
    std::vector<int> cfg(vars.size(), 0);
    double num_alt = 0.0, den_alt = 0.0;
    while (true) {
        Assignment alt;
        for (std::size_t i = 0; i < vars.size(); ++i) alt.set(vars[i], cfg[i]);
        if (!(alt == x)) {
            num_alt += mass(net, alt.merged(e));
            den_alt += mass(net, alt);
        }
        std::size_t i = vars.size();
        while (i-- > 0) {
            if (++cfg[i] < net.card(vars[i])) break;
            cfg[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    double px = mass(net, x);
    if (!(px > 0.0)) return 0.0;
    double lik_x = mass(net, x.merged(e)) / px;
    if (!(den_alt > 0.0)) return 0.0;
    double lik_alt = num_alt / den_alt;
    if (lik_alt <= 0.0) return std::numeric_limits<double>::infinity();
    return lik_x / lik_alt;
}

double gbf_odds_form(double prior, double posterior) {
    return (posterior / (1.0 - posterior)) / (prior / (1.0 - prior));
}

double gbf_ratio_form(double prior, double ratio) { return ratio * (1.0 - prior) / (1.0 - ratio * prior); }

double gbf_fixed_ratio_closed_form(double prior, double r) { return 1.0 + (r - 1.0) / (1.0 - r * prior); }

std::vector<std::pair<double, double>> gbf_curve(const std::vector<double>& grid, CurveMode mode,
                                                 double parameter) {
    std::vector<std::pair<double, double>> out;
    for (double p : grid) {
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("grid point outside (0,1)");
        double q = mode == CurveMode::FixedDelta ? p + parameter : parameter * p;
        if (!(q > 0.0 && q < 1.0)) {
            std::ostringstream os;
            os << "posterior " << q << " for prior " << p << " outside (0,1)";
            throw std::invalid_argument(os.str());
        }
        out.emplace_back(p, gbf_from(p, q));
    }
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    auto a = spec.find(':');
    auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("grid must be lo:hi:step, got '" + spec + "'");
    double lo = parse_double(spec.substr(0, a), "grid start");
    double hi = parse_double(spec.substr(a + 1, b - a - 1), "grid end");
    double step = parse_double(spec.substr(b + 1), "grid step");
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("empty or reversed grid '" + spec + "'");
    if (!(lo > 0.0) || !(hi < 1.0)) throw std::invalid_argument("grid priors must lie strictly between 0 and 1");
    std::vector<double> out;
    for (long i = 0;; ++i) {
        double p = lo + static_cast<double>(i) * step;
        if (p > hi + step * 1e-9) break;
        out.push_back(std::round(p * 1e10) / 1e10);
    }
    return out;
}

std::string curve_csv(const std::vector<std::pair<double, double>>& rows) {
    std::string out = "prior,gbf\n";
    char buf[64];
    for (const auto& [p, g] : rows) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f\n", p, g);
        out += buf;
    }
    return out;
}

}  // namespace mre
