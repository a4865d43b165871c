#pragma once

// Closed forms for the rank-one (single spike) laws and overlap profiles.
//
// Additive model, base delta_0: bulk is the semicircle on [-2, 2]; the spiked
// law has density sqrt(4 - x^2) / (2 pi (theta^2 + 1 - theta x)) plus, for
// |theta| > 1, an atom at theta + 1/theta of mass 1 - 1/theta^2.
//
// Multiplicative model, base delta_1, aspect alpha: bulk is Marchenko-Pastur
// on [a, b], a,b = (1 -+ sqrt(alpha))^2, with an atom (1 - alpha) delta_0 when
// alpha < 1. The spiked law has density
//   theta sqrt((b - x)(x - a)) / (2 pi x (x (1 - theta) + theta (alpha theta - alpha + 1)))
// plus an atom at 0 of mass c_alpha = (1 - alpha)/(alpha (theta - 1) + 1) when
// alpha < 1, and an atom at x_{alpha,theta} = theta (alpha theta - alpha + 1)/(theta - 1)
// of mass d_{alpha,theta} = (1 - 1/(alpha (theta-1)^2)) / (1 + 1/(alpha (theta-1)))
// when |theta - 1| > 1/sqrt(alpha).

#include <functional>
#include <vector>

#include "spiked/measures.hpp"

namespace spiked {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Model { additive, multiplicative };

// Bulk densities. Zero outside the bulk interval.
double semicircle_density(double x);
double mp_density(double alpha, double x);  // continuous part only

Interval mp_edges(double alpha);  // [a, b]

// Closed-form Stieltjes transforms (upper-half-plane branch).
// Semicircle: (-z + sqrt(z^2 - 4))/2.
// Marchenko-Pastur: (alpha - z - 1 + sqrt((z - b)(z - a)))/(2z).
Complex semicircle_stieltjes(Complex z);
Complex mp_stieltjes(double alpha, Complex z);

// Spiked transforms built by substituting the closed-form bulk transform:
//   additive:        1 / (theta - s_sc(z) - z)
//   multiplicative:  1 / (theta (alpha - 1) - z theta s_mp(z) - z)
Complex spiked_semicircle_stieltjes(double theta, Complex z);
Complex spiked_mp_stieltjes(double alpha, double theta, Complex z);

// Evaluator wrappers (Source::closed_form, guard 0).
StieltjesEvaluator semicircle_evaluator();
StieltjesEvaluator mp_evaluator(double alpha);
StieltjesEvaluator spiked_semicircle_evaluator(double theta);
StieltjesEvaluator spiked_mp_evaluator(double alpha, double theta);

// A rank-one spiked law assembled from the pieces above.
struct RankOneLaw {
    Model model = Model::additive;
    double theta = 0.0;
    double alpha = 0.0;                       // multiplicative only
    Interval bulk;                            // support of the continuous part
    std::function<double(double)> density;    // continuous density, 0 off-bulk
    std::vector<Atom> atoms;                  // atoms with their masses
    StieltjesEvaluator transform;             // closed-form spiked transform
};

RankOneLaw spiked_semicircle_law(double theta);
// Requires alpha > 0 and theta >= 0 (covariance spikes are nonnegative).
RankOneLaw spiked_mp_law(double alpha, double theta);

// Bulk overlap profiles (the limit of n E|<phi_i, v>|^2 at lambda_i ~ x).
// Additive: 1/(theta^2 - theta x + 1) for x in (-2, 2).
// Multiplicative: theta / (x (1 - theta) + theta (alpha theta - alpha + 1))
// for x in (a, b). DomainError outside the open bulk.
double overlap_profile_additive(double theta, double x);
double overlap_profile_multiplicative(double alpha, double theta, double x);

// Quotient of spiked and bulk densities at x, for general base measures where
// no closed form exists. DivisionNearZeroError when the bulk density at x is
// below 1e-8.
double ratio_general(const std::function<double(double)>& spiked_density,
                     const std::function<double(double)>& bulk_density, double x);

}  // namespace spiked
