#pragma once

// Fixed-point solvers for the bulk Stieltjes transforms and the outlier
// machinery built on top of them.
//
// Additive model (deformed Wigner): for a base measure mu_A the transform of
// mu_sc (+) mu_A solves
//     s(z) = int d mu_A(lambda) / (lambda - s(z) - z).
// Multiplicative model (sample covariance with population Sigma): for a base
// mu_Sigma and aspect alpha = m/n the transform solves
//     s(z) = int d mu_Sigma(t) / (t (alpha - 1 - z s(z)) - z).
//
// Both are solved by damped fixed-point iteration from s_0 = i; the damped
// map stays in the upper half-plane, where the solution is the unique
// attracting fixed point. Spiked transforms and outliers are then obtained by
// rank-one formulas:
//     additive:        s_spiked(z) = 1 / (theta - s(z) - z)
//     multiplicative:  s_spiked(z) = 1 / (theta (alpha-1) - z theta s(z) - z)
//     additive outlier: solve w(x) = x + s(x) = theta, mass 1/w'(x)
//     mult outlier:     solve 1/F(1/x) = theta with F(y) = alpha y - y - s(1/y),
//                       mass x F(1/x) / F'(1/x).

#include <memory>
#include <vector>

#include "spiked/closed_forms.hpp"
#include "spiked/measures.hpp"

namespace spiked {

struct SolverSettings {
    double tolerance = 1e-12;    // stop when |map(s) - s| < tolerance
    int max_iterations = 100000;
    double damping = 0.5;
    double retry_damping = 0.25;  // second attempt before giving up
};

// One damped fixed-point solve. Requires Im(z) > 0. NonConvergenceError if
// both damping attempts exhaust the iteration budget.
Complex solve_free_additive(const AtomicMeasure& base, Complex z,
                            const SolverSettings& settings = {});
Complex solve_free_multiplicative(const AtomicMeasure& base, double alpha, Complex z,
                                  const SolverSettings& settings = {});

namespace detail {
// Support scan shared by both solution classes: density threshold 1e-6 on a
// step-1e-3 grid, evaluated just above the axis. Grid points where the
// iteration stalls are conservatively classified as support.
std::vector<Interval> scan_support(const std::function<double(double)>& density_or_nan,
                                   double lo, double hi);
}  // namespace detail

// Memoizing handle for s_{mu_sc (+) mu_A}. Copies are cheap; the support scan
// runs once on first use and is internally synchronized.
class FreeAdditiveSolution {
  public:
    explicit FreeAdditiveSolution(AtomicMeasure base, SolverSettings settings = {},
                                  double domain_guard = 1e-4);

    // Requires Im(z) >= domain guard.
    Complex operator()(Complex z) const;

    StieltjesEvaluator evaluator() const;  // Source::fixed_point
    const AtomicMeasure& base() const;
    const SolverSettings& settings() const;
    double domain_guard() const;

    // Bulk support estimate over [min atom - 4, max atom + 4].
    const std::vector<Interval>& support() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

class FreeMultiplicativeSolution {
  public:
    FreeMultiplicativeSolution(AtomicMeasure base, double alpha, SolverSettings settings = {},
                               double domain_guard = 1e-4);

    Complex operator()(Complex z) const;

    StieltjesEvaluator evaluator() const;
    const AtomicMeasure& base() const;
    double alpha() const;
    const SolverSettings& settings() const;
    double domain_guard() const;

    // Bulk support estimate over [-1, max atom * (1 + sqrt(alpha))^2 + 4];
    // includes the atom at 0 when alpha < 1.
    const std::vector<Interval>& support() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

// Spiked transforms per the rank-one formulas above.
Complex spiked_stieltjes_additive(double theta, const FreeAdditiveSolution& bulk, Complex z);
Complex spiked_stieltjes_multiplicative(double theta, const FreeMultiplicativeSolution& bulk,
                                        Complex z);

// Subordination-type boundary functions, evaluated at x + i 1e-4 (real part).
// SupportError if x lies in the estimated bulk support.
double subordination_w(const FreeAdditiveSolution& bulk, double x);
// F(y) = alpha y - y - s(1/y); requires y != 0 (DomainError) and 1/y outside
// the support (SupportError).
double outlier_F(const FreeMultiplicativeSolution& bulk, double y);

struct OutlierReport {
    bool exists = false;
    double location = 0.0;
    double mass = 0.0;
    double theta = 0.0;
    Model model = Model::additive;
};

// Locate the outlier generated by a spike theta, searching the complement of
// the estimated support (bisection; the outer components extend beyond the
// scan range as needed). exists = false when no root is found or when the
// derivative in the mass formula is numerically zero (|.| < 1e-10).
OutlierReport find_outlier_additive(double theta, const FreeAdditiveSolution& bulk);
OutlierReport find_outlier_multiplicative(double theta, const FreeMultiplicativeSolution& bulk);

}  // namespace spiked
