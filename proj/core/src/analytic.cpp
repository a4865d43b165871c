#include "spiked/analytic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>

namespace spiked {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryEta = 1e-4;  // boundary values taken as Re s(x + i eta)
constexpr double kScanEta = 1e-8;      // support scan height (atoms bleed ~ sqrt(eta))
constexpr double kScanStep = 1e-3;
constexpr double kScanThreshold = 1e-6;
constexpr double kScanMargin = 4.0;
constexpr int kScanMaxIterations = 20000;  // stalls are classified as support
constexpr double kDerivStepW = 1e-6;       // central difference for w'
constexpr double kDerivStepF = 1e-7;       // central difference for F' (y variable)
constexpr double kDerivFloor = 1e-10;

struct FpResult {
    Complex value;
    bool converged = false;
};

template <class Map>
FpResult damped_iterate(const Map& map, double tolerance, int max_iterations, double damping) {
    Complex s(0.0, 1.0);
    for (int it = 0; it < max_iterations; ++it) {
        Complex g = map(s);
        if (std::abs(g - s) < tolerance) return {g, true};
        s = (1.0 - damping) * s + damping * g;
    }
    return {s, false};
}

template <class Map>
Complex solve_with_retry(const Map& map, const SolverSettings& st, const char* what) {
    FpResult r = damped_iterate(map, st.tolerance, st.max_iterations, st.damping);
    if (!r.converged) r = damped_iterate(map, st.tolerance, st.max_iterations, st.retry_damping);
    if (!r.converged) throw NonConvergenceError(what);
    return r.value;
}

auto additive_map(const AtomicMeasure& base, Complex z) {
    return [&base, z](Complex s) {
        Complex total = 0.0;
        for (const auto& a : base.atoms()) total += a.weight / (a.location - s - z);
        return total;
    };
}

auto multiplicative_map(const AtomicMeasure& base, double alpha, Complex z) {
    return [&base, alpha, z](Complex s) {
        Complex total = 0.0;
        for (const auto& a : base.atoms())
            total += a.weight / (a.location * (alpha - 1.0 - z * s) - z);
        return total;
    };
}

auto additive_map_derivative(const AtomicMeasure& base, Complex z) {
    return [&base, z](Complex s) {
        Complex total = 0.0;
        for (const auto& a : base.atoms()) {
            Complex d = a.location - s - z;
            total += a.weight / (d * d);
        }
        return total;
    };
}

auto multiplicative_map_derivative(const AtomicMeasure& base, double alpha, Complex z) {
    return [&base, alpha, z](Complex s) {
        Complex total = 0.0;
        for (const auto& a : base.atoms()) {
            Complex d = a.location * (alpha - 1.0 - z * s) - z;
            total += a.weight * a.location * z / (d * d);
        }
        return total;
    };
}

// --- algebraic branch recovery ----------------------------------------------
// Near the real axis the damped iteration can converge to a solution of the
// self-consistent equation with Im(s) <= 0 (the physical root turns repelling
// close to heavy atoms). The equation is polynomial in s for an atomic base,
// and for Im(z) > 0 it has exactly one root in the upper half-plane, so we
// recover that root from the companion matrix.

// Ascending coefficients; multiply by the linear factor c0 + c1 s.
std::vector<Complex> poly_mul_linear(const std::vector<Complex>& p, Complex c0, Complex c1) {
    std::vector<Complex> out(p.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] += p[i] * c0;
        out[i + 1] += p[i] * c1;
    }
    return out;
}

// P(s) = s prod_a f_a(s) - sum_a w_a prod_{b != a} f_b(s) with f_a = c0_a + c1_a s.
std::vector<Complex> equation_polynomial(const std::vector<std::pair<Complex, Complex>>& factors,
                                         const std::vector<double>& weights) {
    const std::size_t k = factors.size();
    std::vector<Complex> full = {Complex(1.0)};
    for (const auto& [c0, c1] : factors) full = poly_mul_linear(full, c0, c1);
    std::vector<Complex> poly(full.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < full.size(); ++i) poly[i + 1] = full[i];  // s * prod
    for (std::size_t a = 0; a < k; ++a) {
        std::vector<Complex> partial = {Complex(1.0)};
        for (std::size_t b = 0; b < k; ++b) {
            if (b != a) partial = poly_mul_linear(partial, factors[b].first, factors[b].second);
        }
        for (std::size_t i = 0; i < partial.size(); ++i) poly[i] -= weights[a] * partial[i];
    }
    return poly;
}

std::vector<Complex> equation_polynomial_additive(const AtomicMeasure& base, Complex z) {
    std::vector<std::pair<Complex, Complex>> factors;
    std::vector<double> weights;
    for (const auto& a : base.atoms()) {
        factors.emplace_back(a.location - z, Complex(-1.0));
        weights.push_back(a.weight);
    }
    return equation_polynomial(factors, weights);
}

std::vector<Complex> equation_polynomial_multiplicative(const AtomicMeasure& base, double alpha,
                                                        Complex z) {
    std::vector<std::pair<Complex, Complex>> factors;
    std::vector<double> weights;
    for (const auto& a : base.atoms()) {
        factors.emplace_back(a.location * (alpha - 1.0) - z, -a.location * z);
        weights.push_back(a.weight);
    }
    return equation_polynomial(factors, weights);
}

std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
    double scale = 0.0;
    for (Complex c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};
    while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-14 * scale) coeffs.pop_back();
    const auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
    if (degree < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (Eigen::Index i = 0; i + 1 < degree; ++i) companion(i + 1, i) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) {
        companion(i, degree - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(degree));
    for (Eigen::Index i = 0; i < degree; ++i) roots.push_back(solver.eigenvalues()(i));
    return roots;
}

// Newton-polish each candidate root of map(s) = s and return the upper
// half-plane solution meeting the residual tolerance, if any.
template <class Map, class Deriv>
FpResult upper_half_root(const std::vector<Complex>& poly, const Map& map, const Deriv& deriv,
                         double tolerance) {
    FpResult best;
    for (Complex root : polynomial_roots(poly)) {
        Complex s = root;
        for (int it = 0; it < 64; ++it) {
            Complex f = map(s) - s;
            if (std::abs(f) < tolerance) break;
            Complex fp = deriv(s) - 1.0;
            if (!(std::abs(fp) > 0.0)) break;
            s -= f / fp;
        }
        if (s.imag() > 0.0 && std::abs(map(s) - s) < tolerance &&
            (!best.converged || s.imag() > best.value.imag())) {
            best = {s, true};
        }
    }
    return best;
}

template <class Map, class Deriv, class MakePoly>
Complex solve_full(const Map& map, const Deriv& deriv, const MakePoly& make_poly,
                   const SolverSettings& st, const char* what) {
    FpResult r = damped_iterate(map, st.tolerance, st.max_iterations, st.damping);
    if (!r.converged) r = damped_iterate(map, st.tolerance, st.max_iterations, st.retry_damping);
    if (r.converged && r.value.imag() > 0.0) return r.value;
    if (r.converged) {
        // Converged onto the wrong branch; recover the physical root exactly.
        FpResult rescued = upper_half_root(make_poly(), map, deriv, st.tolerance);
        if (rescued.converged) return rescued.value;
    }
    throw NonConvergenceError(what);
}

void require_upper_half(Complex z) {
    if (!(z.imag() > 0.0)) throw DomainError("fixed-point solve needs Im(z) > 0");
}

// Density for the support scan: NaN when the iteration stalls, which callers
// must treat as "inside the support". A wrong-branch convergence is classified
// with the exact algebraic root instead (no residual gate: only the magnitude
// matters here, and near an atom the huge |s| makes the absolute residual
// floor unreachable in doubles).
template <class MakeMap, class MakePoly>
double scan_density(const MakeMap& make_map, const MakePoly& make_poly, const SolverSettings& st,
                    double x) {
    const Complex z(x, kScanEta);
    FpResult r = damped_iterate(make_map(z), st.tolerance, kScanMaxIterations, st.damping);
    if (!r.converged) return std::numeric_limits<double>::quiet_NaN();
    if (r.value.imag() > 0.0) return r.value.imag() / kPi;
    double best = -std::numeric_limits<double>::infinity();
    for (Complex root : polynomial_roots(make_poly(z))) best = std::max(best, root.imag());
    if (!std::isfinite(best)) return std::numeric_limits<double>::quiet_NaN();
    return best / kPi;
}

}  // namespace

Complex solve_free_additive(const AtomicMeasure& base, Complex z, const SolverSettings& settings) {
    require_upper_half(z);
    return solve_full(additive_map(base, z), additive_map_derivative(base, z),
                      [&] { return equation_polynomial_additive(base, z); }, settings,
                      "free additive fixed point stalled");
}

Complex solve_free_multiplicative(const AtomicMeasure& base, double alpha, Complex z,
                                  const SolverSettings& settings) {
    require_upper_half(z);
    if (!(alpha > 0.0)) throw DomainError("aspect ratio alpha must be positive");
    if (base.min_location() < 0.0)
        throw DomainError("population spectrum must be nonnegative");
    return solve_full(multiplicative_map(base, alpha, z),
                      multiplicative_map_derivative(base, alpha, z),
                      [&] { return equation_polynomial_multiplicative(base, alpha, z); }, settings,
                      "free multiplicative fixed point stalled");
}

namespace detail {

std::vector<Interval> scan_support(const std::function<double(double)>& density_or_nan,
                                   double lo, double hi) {
    std::vector<Interval> out;
    bool inside = false;
    double start = lo;
    double last = lo;
    const auto count = static_cast<long>(std::floor((hi - lo) / kScanStep)) + 1;
    for (long k = 0; k < count; ++k) {
        double x = lo + static_cast<double>(k) * kScanStep;
        double d = density_or_nan(x);
        bool support_here = !(d < kScanThreshold);  // NaN (stall) counts as support
        if (support_here && !inside) {
            inside = true;
            start = x;
        } else if (!support_here && inside) {
            inside = false;
            out.push_back({start, last});
        }
        last = x;
    }
    if (inside) out.push_back({start, last});
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Solution handles

struct FreeAdditiveSolution::State {
    AtomicMeasure base;
    SolverSettings settings;
    double guard;
    mutable std::once_flag scanned;
    mutable std::vector<Interval> support;

    State(AtomicMeasure base_in, SolverSettings settings_in, double guard_in)
        : base(std::move(base_in)), settings(settings_in), guard(guard_in) {}
};

FreeAdditiveSolution::FreeAdditiveSolution(AtomicMeasure base, SolverSettings settings,
                                           double domain_guard)
    : state_(std::make_shared<State>(std::move(base), settings, domain_guard)) {}

Complex FreeAdditiveSolution::operator()(Complex z) const {
    if (!(z.imag() >= state_->guard))
        throw DomainError("evaluation below the solution's domain guard");
    return solve_free_additive(state_->base, z, state_->settings);
}

StieltjesEvaluator FreeAdditiveSolution::evaluator() const {
    auto state = state_;
    return {[state](Complex z) { return solve_free_additive(state->base, z, state->settings); },
            StieltjesEvaluator::Source::fixed_point, state_->guard};
}

const AtomicMeasure& FreeAdditiveSolution::base() const { return state_->base; }
const SolverSettings& FreeAdditiveSolution::settings() const { return state_->settings; }
double FreeAdditiveSolution::domain_guard() const { return state_->guard; }

const std::vector<Interval>& FreeAdditiveSolution::support() const {
    std::call_once(state_->scanned, [this] {
        const auto& st = *state_;
        double lo = st.base.min_location() - kScanMargin;
        double hi = st.base.max_location() + kScanMargin;
        auto density = [&st](double x) {
            return scan_density([&st](Complex z) { return additive_map(st.base, z); },
                                [&st](Complex z) { return equation_polynomial_additive(st.base, z); },
                                st.settings, x);
        };
        state_->support = detail::scan_support(density, lo, hi);
    });
    return state_->support;
}

struct FreeMultiplicativeSolution::State {
    AtomicMeasure base;
    double alpha;
    SolverSettings settings;
    double guard;
    mutable std::once_flag scanned;
    mutable std::vector<Interval> support;

    State(AtomicMeasure base_in, double alpha_in, SolverSettings settings_in, double guard_in)
        : base(std::move(base_in)), alpha(alpha_in), settings(settings_in), guard(guard_in) {}
};

FreeMultiplicativeSolution::FreeMultiplicativeSolution(AtomicMeasure base, double alpha,
                                                       SolverSettings settings,
                                                       double domain_guard)
    : state_(std::make_shared<State>(std::move(base), alpha, settings, domain_guard)) {
    if (!(alpha > 0.0)) throw DomainError("aspect ratio alpha must be positive");
    if (state_->base.min_location() < 0.0)
        throw DomainError("population spectrum must be nonnegative");
}

Complex FreeMultiplicativeSolution::operator()(Complex z) const {
    if (!(z.imag() >= state_->guard))
        throw DomainError("evaluation below the solution's domain guard");
    return solve_free_multiplicative(state_->base, state_->alpha, z, state_->settings);
}

StieltjesEvaluator FreeMultiplicativeSolution::evaluator() const {
    auto state = state_;
    return {[state](Complex z) {
                return solve_free_multiplicative(state->base, state->alpha, z, state->settings);
            },
            StieltjesEvaluator::Source::fixed_point, state_->guard};
}

const AtomicMeasure& FreeMultiplicativeSolution::base() const { return state_->base; }
double FreeMultiplicativeSolution::alpha() const { return state_->alpha; }
const SolverSettings& FreeMultiplicativeSolution::settings() const { return state_->settings; }
double FreeMultiplicativeSolution::domain_guard() const { return state_->guard; }

const std::vector<Interval>& FreeMultiplicativeSolution::support() const {
    std::call_once(state_->scanned, [this] {
        const auto& st = *state_;
        double edge = (1.0 + std::sqrt(st.alpha)) * (1.0 + std::sqrt(st.alpha));
        double lo = -1.0;
        double hi = st.base.max_location() * edge + kScanMargin;
        auto density = [&st](double x) {
            return scan_density(
                [&st](Complex z) { return multiplicative_map(st.base, st.alpha, z); },
                [&st](Complex z) {
                    return equation_polynomial_multiplicative(st.base, st.alpha, z);
                },
                st.settings, x);
        };
        state_->support = detail::scan_support(density, lo, hi);
    });
    return state_->support;
}

// ---------------------------------------------------------------------------
// Spiked transforms

Complex spiked_stieltjes_additive(double theta, const FreeAdditiveSolution& bulk, Complex z) {
    return 1.0 / (theta - bulk(z) - z);
}

Complex spiked_stieltjes_multiplicative(double theta, const FreeMultiplicativeSolution& bulk,
                                        Complex z) {
    return 1.0 / (theta * (bulk.alpha() - 1.0) - z * theta * bulk(z) - z);
}

// ---------------------------------------------------------------------------
// Outliers

namespace {

// One-point support membership test at scan height; stalls count as support.
bool in_support_at(const AtomicMeasure& base, const SolverSettings& st, double x) {
    double d = scan_density([&base](Complex z) { return additive_map(base, z); },
                            [&base](Complex z) { return equation_polynomial_additive(base, z); },
                            st, x);
    return !(d < kScanThreshold);
}

bool in_support_at_mult(const AtomicMeasure& base, double alpha, const SolverSettings& st,
                        double x) {
    double d = scan_density(
        [&base, alpha](Complex z) { return multiplicative_map(base, alpha, z); },
        [&base, alpha](Complex z) { return equation_polynomial_multiplicative(base, alpha, z); },
        st, x);
    return !(d < kScanThreshold);
}

// Complement of the support within [lo, hi], in scan order. Endpoints touching
// a support interval are pulled in by one grid step so every bracket endpoint
// sits strictly below the density threshold.
std::vector<Interval> support_complement(const std::vector<Interval>& support, double lo,
                                         double hi) {
    std::vector<Interval> out;
    double cursor = lo;
    bool cursor_on_support = false;
    for (const auto& iv : support) {
        double l = cursor + (cursor_on_support ? kScanStep : 0.0);
        double r = iv.lo - kScanStep;
        if (r - l > 1e-9) out.push_back({l, r});
        cursor = iv.hi;
        cursor_on_support = true;
    }
    double l = cursor + (cursor_on_support ? kScanStep : 0.0);
    if (hi - l > 1e-9) out.push_back({l, hi});
    return out;
}

struct Root {
    bool found = false;
    double x = 0.0;
};

// Bisection for g on [l, r]; the outer ends of the scan window may grow
// geometrically until they bracket a sign change.
template <class Fn>
Root bracket_and_bisect(const Fn& g, double l, double r, bool extend_left, bool extend_right) {
    double gl = g(l);
    double gr = g(r);
    double step = 1.0;
    bool go_left = extend_left;
    for (int k = 0; k < 48 && gl * gr > 0.0 && (extend_left || extend_right); ++k) {
        if (go_left) {
            l -= step;
            gl = g(l);
        } else {
            r += step;
            gr = g(r);
        }
        if (extend_left && extend_right)
            go_left = !go_left;
        step *= 2.0;
    }
    if (gl == 0.0) return {true, l};
    if (gr == 0.0) return {true, r};
    if (gl * gr > 0.0) return {};
    for (int it = 0; it < 200 && r - l > 1e-13 * std::max(1.0, std::abs(l) + std::abs(r)); ++it) {
        double mid = 0.5 * (l + r);
        double gm = g(mid);
        if (gm == 0.0) return {true, mid};
        if (gl * gm < 0.0)
            r = mid, gr = gm;
        else
            l = mid, gl = gm;
    }
    return {true, 0.5 * (l + r)};
}

}  // namespace

double subordination_w(const FreeAdditiveSolution& bulk, double x) {
    if (in_support_at(bulk.base(), bulk.settings(), x))
        throw SupportError("subordination function requested inside the bulk");
    Complex s = solve_free_additive(bulk.base(), Complex(x, kBoundaryEta), bulk.settings());
    return x + s.real();
}

double outlier_F(const FreeMultiplicativeSolution& bulk, double y) {
    if (y == 0.0) throw DomainError("outlier function F is undefined at y = 0");
    double x = 1.0 / y;
    if (in_support_at_mult(bulk.base(), bulk.alpha(), bulk.settings(), x))
        throw SupportError("outlier function F requested inside the bulk");
    Complex s = solve_free_multiplicative(bulk.base(), bulk.alpha(), Complex(x, kBoundaryEta),
                                          bulk.settings());
    return (bulk.alpha() - 1.0) * y - s.real();
}

OutlierReport find_outlier_additive(double theta, const FreeAdditiveSolution& bulk) {
    OutlierReport report;
    report.theta = theta;
    report.model = Model::additive;

    const auto& base = bulk.base();
    const auto& st = bulk.settings();
    double lo = base.min_location() - kScanMargin;
    double hi = base.max_location() + kScanMargin;
    auto components = support_complement(bulk.support(), lo, hi);

    auto w_at = [&](double x) {
        Complex s = solve_free_additive(base, Complex(x, kBoundaryEta), st);
        return x + s.real();
    };
    auto g = [&](double x) { return w_at(x) - theta; };

    for (std::size_t c = 0; c < components.size(); ++c) {
        bool leftmost = c == 0 && components[c].lo <= lo + 1e-12;
        bool rightmost = c + 1 == components.size() && components[c].hi >= hi - 1e-12;
        Root root = bracket_and_bisect(g, components[c].lo, components[c].hi, leftmost, rightmost);
        if (!root.found) continue;
        double wp = (w_at(root.x + kDerivStepW) - w_at(root.x - kDerivStepW)) / (2.0 * kDerivStepW);
        if (std::abs(wp) < kDerivFloor) {
            std::fprintf(stderr,
                         "find_outlier_additive: w'(%.6g) ~ 0, reporting no outlier\n", root.x);
            return report;
        }
        report.exists = true;
        report.location = root.x;
        report.mass = 1.0 / wp;
        return report;
    }
    return report;
}

OutlierReport find_outlier_multiplicative(double theta, const FreeMultiplicativeSolution& bulk) {
    OutlierReport report;
    report.theta = theta;
    report.model = Model::multiplicative;
    if (theta < 0.0) throw DomainError("covariance spike theta must be nonnegative");
    if (theta == 0.0 || theta == 1.0) return report;  // no spike outside the bulk

    const auto& base = bulk.base();
    const auto& st = bulk.settings();
    double alpha = bulk.alpha();
    double edge = (1.0 + std::sqrt(alpha)) * (1.0 + std::sqrt(alpha));
    double lo = -1.0;
    double hi = base.max_location() * edge + kScanMargin;

    auto F_of_inv = [&](double x) {  // F(1/x) = (alpha - 1)/x - s(x)
        Complex s = solve_free_multiplicative(base, alpha, Complex(x, kBoundaryEta), st);
        return (alpha - 1.0) / x - s.real();
    };
    auto g = [&](double x) { return F_of_inv(x) - 1.0 / theta; };

    auto components = support_complement(bulk.support(), lo, hi);
    for (std::size_t c = 0; c < components.size(); ++c) {
        double l = std::max(components[c].lo, 1e-6);
        double r = components[c].hi;
        if (r - l < 1e-9) continue;
        bool rightmost = c + 1 == components.size() && components[c].hi >= hi - 1e-12;
        Root root = bracket_and_bisect(g, l, r, false, rightmost);
        if (!root.found) continue;
        double y = 1.0 / root.x;
        double f0 = F_of_inv(root.x);
        double fp = (F_of_inv(1.0 / (y + kDerivStepF)) - F_of_inv(1.0 / (y - kDerivStepF))) /
                    (2.0 * kDerivStepF);
        if (std::abs(fp) < kDerivFloor) {
            std::fprintf(stderr,
                         "find_outlier_multiplicative: F'(%.6g) ~ 0, reporting no outlier\n", y);
            return report;
        }
        report.exists = true;
        report.location = root.x;
        report.mass = root.x * f0 / fp;
        return report;
    }
    return report;
}

}  // namespace spiked
