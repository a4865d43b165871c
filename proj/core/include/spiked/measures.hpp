#pragma once

// Spectral measures and their Stieltjes transforms.
//
// Two measure representations are used throughout:
//   * AtomicMeasure            -- finitely many atoms, a probability measure;
//                                 inputs for the analytic solvers.
//   * WeightedSpectralMeasure  -- the measure of a matrix in a fixed direction,
//                                 sum_i |<phi_i, v>|^2 delta_{lambda_i}.
//
// The Stieltjes transform convention is s(z) = int d nu(x) / (x - z), which
// maps the upper half-plane to itself.

#include <complex>
#include <functional>
#include <vector>

#include "spiked/errors.hpp"

namespace spiked {

using Complex = std::complex<double>;

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

// Probability measure with finitely many atoms. Atoms are kept sorted by
// location; duplicates within 1e-12 are merged; zero-weight atoms are dropped.
class AtomicMeasure {
  public:
    explicit AtomicMeasure(std::vector<Atom> atoms);

    // delta_c
    static AtomicMeasure point(double location) { return AtomicMeasure({{location, 1.0}}); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double min_location() const { return atoms_.front().location; }
    double max_location() const { return atoms_.back().location; }

  private:
    std::vector<Atom> atoms_;
};

// Empirical spectral measure in a direction: (eigenvalue, weight) pairs sorted
// by eigenvalue descending. Weights must be nonnegative and sum to 1 within
// 1e-8 (NormError otherwise).
class WeightedSpectralMeasure {
  public:
    WeightedSpectralMeasure(std::vector<double> eigenvalues, std::vector<double> weights);

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return eigenvalues_.size(); }

  private:
    std::vector<double> eigenvalues_;  // descending
    std::vector<double> weights_;      // aligned with eigenvalues_
};

// Square-root branch mapping C \ R to the upper half-plane,
// sign(Im z) * (|z| + z) / sqrt(2 (|z| + Re z)).
// On the real axis: nonnegative reals get the usual root (sign(0) -> +1),
// negative reals get the limit from above, +i sqrt(|Re z|).
Complex branch_sqrt(Complex z);

// s(z) = sum_k w_k / (x_k - z). PoleError if z coincides with an atom.
Complex stieltjes(const AtomicMeasure& mu, Complex z);

// Same sum over an empirical measure; requires Im(z) > 0 (DomainError).
Complex stieltjes(const WeightedSpectralMeasure& mu, Complex z);

// k-th moment sum w x^k; 0 <= k <= 16 (DomainError outside that range,
// higher powers are numerically meaningless for n-point spectra).
double moment(const WeightedSpectralMeasure& mu, int k);

// A Stieltjes transform packaged with provenance metadata. domain_guard is
// the smallest Im(z) the backing evaluation supports; calls below it throw
// DomainError.
class StieltjesEvaluator {
  public:
    enum class Source { closed_form, fixed_point, empirical };

    StieltjesEvaluator() = default;  // empty; throws on call
    StieltjesEvaluator(std::function<Complex(Complex)> fn, Source source, double domain_guard)
        : fn_(std::move(fn)), source_(source), domain_guard_(domain_guard) {}

    Complex operator()(Complex z) const;

    Source source() const { return source_; }
    double domain_guard() const { return domain_guard_; }

  private:
    std::function<Complex(Complex)> fn_;
    Source source_ = Source::closed_form;
    double domain_guard_ = 0.0;
};

// Boundary density (1/pi) Im s(x + i eta) at fixed eta. Requires eta > 0 and
// eta >= the evaluator's domain guard.
double density_from_stieltjes(const StieltjesEvaluator& s, double x, double eta);

// Wraps an empirical measure as an evaluator (guard 0: any Im(z) > 0).
StieltjesEvaluator make_evaluator(const WeightedSpectralMeasure& mu);

}  // namespace spiked
