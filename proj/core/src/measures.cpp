#include "spiked/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace spiked {

namespace {
constexpr double kMergeTol = 1e-12;  // atoms closer than this are one atom
constexpr double kNormTol = 1e-8;
}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
    if (atoms.empty()) throw NormError("atomic measure needs at least one atom");
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location) || !std::isfinite(a.weight))
            throw DomainError("atom with non-finite location or weight");
        if (a.weight < 0.0) throw NormError("negative atom weight");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!atoms_.empty() && a.location - atoms_.back().location <= kMergeTol)
            atoms_.back().weight += a.weight;
        else if (a.weight > 0.0)
            atoms_.push_back(a);
        total += a.weight;
    }
    if (std::abs(total - 1.0) > kNormTol) throw NormError("atom weights do not sum to 1");
    if (atoms_.empty()) throw NormError("atomic measure needs at least one atom");
}

WeightedSpectralMeasure::WeightedSpectralMeasure(std::vector<double> eigenvalues,
                                                 std::vector<double> weights) {
    if (eigenvalues.size() != weights.size() || eigenvalues.empty())
        throw DomainError("eigenvalue/weight length mismatch");
    std::vector<std::size_t> order(eigenvalues.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });
    eigenvalues_.reserve(order.size());
    weights_.reserve(order.size());
    double total = 0.0;
    for (std::size_t k : order) {
        if (!std::isfinite(eigenvalues[k]) || !std::isfinite(weights[k]))
            throw DomainError("non-finite eigenvalue or weight");
        if (weights[k] < -kNormTol) throw NormError("negative weight in spectral measure");
        eigenvalues_.push_back(eigenvalues[k]);
        weights_.push_back(std::max(weights[k], 0.0));
        total += weights[k];
    }
    if (std::abs(total - 1.0) > kNormTol) throw NormError("spectral weights do not sum to 1");
}

Complex branch_sqrt(Complex z) {
    if (z.imag() == 0.0) {
        if (z.real() >= 0.0) return {std::sqrt(z.real()), 0.0};
        return {0.0, std::sqrt(-z.real())};  // limit from Im z > 0
    }
    // Equals sign(Im z) * (|z| + z)/sqrt(2(|z| + Re z)) but evaluated through
    // the principal root, which avoids cancellation near the negative axis.
    Complex w = std::sqrt(z);
    return z.imag() > 0.0 ? w : -w;
}

Complex stieltjes(const AtomicMeasure& mu, Complex z) {
    Complex total = 0.0;
    for (const auto& a : mu.atoms()) {
        Complex den = a.location - z;
        if (den == Complex(0.0, 0.0)) throw PoleError("stieltjes transform evaluated at an atom");
        total += a.weight / den;
    }
    return total;
}

Complex stieltjes(const WeightedSpectralMeasure& mu, Complex z) {
    if (!(z.imag() > 0.0))
        throw DomainError("empirical stieltjes transform needs Im(z) > 0");
    Complex total = 0.0;
    const auto& lam = mu.eigenvalues();
    const auto& w = mu.weights();
    for (std::size_t i = 0; i < lam.size(); ++i) total += w[i] / (lam[i] - z);
    return total;
}

double moment(const WeightedSpectralMeasure& mu, int k) {
    if (k < 0 || k > 16) throw DomainError("moment order must be in [0, 16]");
    double total = 0.0;
    const auto& lam = mu.eigenvalues();
    const auto& w = mu.weights();
    for (std::size_t i = 0; i < lam.size(); ++i) total += w[i] * std::pow(lam[i], k);
    return total;
}

Complex StieltjesEvaluator::operator()(Complex z) const {
    if (!fn_) throw DomainError("empty stieltjes evaluator");
    if (!(z.imag() > 0.0) || z.imag() < domain_guard_)
        throw DomainError("stieltjes evaluation below the domain guard");
    return fn_(z);
}

double density_from_stieltjes(const StieltjesEvaluator& s, double x, double eta) {
    if (!(eta > 0.0) || eta < s.domain_guard())
        throw DomainError("density evaluation needs eta > 0 and eta >= domain guard");
    return s(Complex(x, eta)).imag() / std::numbers::pi;
}

StieltjesEvaluator make_evaluator(const WeightedSpectralMeasure& mu) {
    return StieltjesEvaluator([mu](Complex z) { return stieltjes(mu, z); },
                              StieltjesEvaluator::Source::empirical, 0.0);
}

}  // namespace spiked
