#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mre/model.hpp"

namespace mre {

enum class Strength { Negative, BarelyWorthMentioning, Substantial, Strong, VeryStrong, Decisive };

// Bands: <1, [1,3], (3,10], (10,30], (30,100], >100.
Strength strength_label(double value);
const char* strength_name(Strength s);

struct GbfScore {
    double value = 0.0;  // may be +infinity
    double prior = 0.0;
    double posterior = 0.0;
    Strength strength = Strength::Negative;
};

// GBF from the prior P(x) and posterior P(x|e), with the extreme-value
// conventions: P(x)=0 -> 0; P(x)=1 -> 0; P(x|e)=1 > P(x) -> +inf.
double gbf_from(double prior, double posterior);

// r(x;e) = P(x|e)/P(x).
double belief_update_ratio(const Network& net, const Assignment& x, const Assignment& e);
// GBF(x; e).
GbfScore gbf(const Network& net, const Assignment& x, const Assignment& e);
// GBF(y; e | x): all probabilities additionally conditioned on x.
double cbf(const Network& net, const Assignment& y, const Assignment& e, const Assignment& x);
// GBF(x; e1) * prod_i GBF(x; e_i | e_1..e_{i-1}).
double gbf_chain(const Network& net, const Assignment& x, const std::vector<Assignment>& pieces);

// Alternative computations used as cross-checks.
// P(e|x) / P(e|not x), the denominator summed over all alternatives.
double gbf_likelihood_form(const Network& net, const Assignment& x, const Assignment& e);
// Posterior odds over prior odds.
double gbf_odds_form(double prior, double posterior);
// From the belief update ratio: r (1 - P(x)) / (1 - r P(x)).
double gbf_ratio_form(double prior, double ratio);

// Closed form for a fixed belief update ratio r: 1 + (r-1)/(1 - r p).
double gbf_fixed_ratio_closed_form(double prior, double r);

enum class CurveMode { FixedDelta, FixedRatio };

std::vector<std::pair<double, double>> gbf_curve(const std::vector<double>& grid, CurveMode mode,
                                                 double parameter);
// "lo:hi:step" -> inclusive grid of priors in (0, 1).
std::vector<double> parse_grid(const std::string& spec);
// CSV with header "prior,gbf", six decimals.
std::string curve_csv(const std::vector<std::pair<double, double>>& rows);

}  // namespace mre
