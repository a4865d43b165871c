#include "spiked/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "spiked/errors.hpp"

namespace spiked {

WeightedSpectralMeasure spectral_measure_in_direction(const EigenDecomposition& decomposition,
                                                      const Eigen::VectorXd& v) {
    if (v.size() != decomposition.eigenvectors.rows()) {
        throw DomainError("direction dimension does not match the decomposition");
    }
    if (std::abs(v.norm() - 1.0) > 1e-10) {
        throw NormError("direction vector is not normalized");
    }
    Eigen::VectorXd projections = decomposition.eigenvectors.transpose() * v;
    std::vector<double> eigenvalues(decomposition.eigenvalues.data(),
                                    decomposition.eigenvalues.data() + decomposition.eigenvalues.size());
    std::vector<double> weights(eigenvalues.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = projections[static_cast<Eigen::Index>(i)] * projections[static_cast<Eigen::Index>(i)];
    }
    return WeightedSpectralMeasure(std::move(eigenvalues), std::move(weights));
}

OverlapProfile windowed_profile(const WeightedSpectralMeasure& mu, std::span<const double> grid,
                                double epsilon) {
    if (!(epsilon > 0.0)) {
        throw DomainError("window half-width must be positive");
    }
    OverlapProfile profile;
    profile.epsilon = epsilon;
    profile.grid.assign(grid.begin(), grid.end());
    profile.counts.resize(grid.size(), 0);
    profile.estimates.resize(grid.size());
    profile.theory.resize(grid.size());

    // Eigenvalues are stored descending; work on an ascending copy so each
    // window is one equal_range.
    std::vector<double> ascending(mu.eigenvalues().rbegin(), mu.eigenvalues().rend());
    std::vector<double> weights(mu.weights().rbegin(), mu.weights().rend());
    const double n = static_cast<double>(mu.size());

    for (std::size_t j = 0; j < grid.size(); ++j) {
        auto lo = std::lower_bound(ascending.begin(), ascending.end(), grid[j] - epsilon);
        auto hi = std::upper_bound(ascending.begin(), ascending.end(), grid[j] + epsilon);
        const int count = static_cast<int>(hi - lo);
        profile.counts[j] = count;
        if (count == 0) continue;
        double sum = 0.0;
        for (auto it = lo; it != hi; ++it) {
            sum += weights[static_cast<std::size_t>(it - ascending.begin())];
        }
        profile.estimates[j] = n / static_cast<double>(count) * sum;
    }
    return profile;
}

namespace {

double distance_to_interval(double x, const Interval& interval) {
    if (x < interval.lo) return interval.lo - x;
    if (x > interval.hi) return x - interval.hi;
    return 0.0;
}

}  // namespace

std::vector<OutlierCluster> extract_outliers(const WeightedSpectralMeasure& mu,
                                             std::span<const Interval> bulk, double margin) {
    if (!(margin > 0.0)) {
        throw DomainError("margin must be positive");
    }
    constexpr double kClusterTolerance = 1e-6;
    std::vector<OutlierCluster> clusters;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double lambda = mu.eigenvalues()[i];
        bool separated = true;
        for (const Interval& interval : bulk) {
            if (distance_to_interval(lambda, interval) <= margin) {
                separated = false;
                break;
            }
        }
        if (!separated) continue;
        if (!clusters.empty() && std::abs(lambda - clusters.back().eigenvalue) <= kClusterTolerance) {
            OutlierCluster& cluster = clusters.back();
            // Running mean keeps the representative location stable.
            cluster.eigenvalue = (cluster.eigenvalue * cluster.size + lambda) / (cluster.size + 1);
            cluster.weight += mu.weights()[i];
            cluster.size += 1;
        } else {
            clusters.push_back({lambda, mu.weights()[i], 1});
        }
    }
    return clusters;
}

LocalLawDiagnostic local_law_diagnostic(const StieltjesEvaluator& empirical,
                                        const StieltjesEvaluator& theory,
                                        std::span<const Complex> grid, int n, double tau) {
    if (n < 2) throw DomainError("matrix size must be at least 2");
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");

    const double eta_min = std::pow(static_cast<double>(n), tau - 1.0);
    const double eta_max = 1.0 / tau;

    LocalLawDiagnostic diagnostic;
    diagnostic.points.reserve(grid.size());
    for (Complex z : grid) {
        const double eta = z.imag();
        if (eta < eta_min || eta > eta_max) {
            throw DomainError("spectral parameter leaves the local-law domain");
        }
        const Complex s_hat = empirical(z);
        const Complex s_th = theory(z);
        const double n_eta = static_cast<double>(n) * eta;
        const double psi = std::sqrt(std::max(s_th.imag(), 0.0) / n_eta) + 1.0 / n_eta;
        LocalLawDiagnostic::Point point;
        point.E = z.real();
        point.eta = eta;
        point.abs_shat = std::abs(s_hat - s_th);
        point.psi = psi;
        point.ratio = point.abs_shat / psi;
        diagnostic.points.push_back(point);
        diagnostic.summary = std::max(diagnostic.summary, point.ratio);
    }
    return diagnostic;
}

}  // namespace spiked
