#pragma once

// Spectral measures in a direction, windowed overlap profiles, outlier
// extraction, and the local-law diagnostic.

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "spiked/closed_forms.hpp"
#include "spiked/eig.hpp"
#include "spiked/measures.hpp"

namespace spiked {

// mu_{(M, v)} = sum_i |<phi_i, v>|^2 delta_{lambda_i}. v must be normalized
// within 1e-10 (NormError).
WeightedSpectralMeasure spectral_measure_in_direction(const EigenDecomposition& decomposition,
                                                      const Eigen::VectorXd& v);

// Windowed overlap statistic around each grid point x_j:
//   estimate_j = (n / #I_j) sum_{i in I_j} w_i,  I_j = { i : |lambda_i - x_j| <= epsilon }.
// Windows holding no eigenvalue leave estimate_j unset.
struct OverlapProfile {
    std::vector<double> grid;
    std::vector<int> counts;
    std::vector<std::optional<double>> estimates;
    std::vector<std::optional<double>> theory;  // attached by callers when known
    double epsilon = 0.0;
};

OverlapProfile windowed_profile(const WeightedSpectralMeasure& mu, std::span<const double> grid,
                                double epsilon);

// Eigenvalues at distance > margin from every bulk interval, with their
// weights; members closer than 1e-6 to each other are merged into one cluster
// (weights summed, location averaged). Ordered as in the measure (descending).
struct OutlierCluster {
    double eigenvalue = 0.0;
    double weight = 0.0;
    int size = 0;
};

std::vector<OutlierCluster> extract_outliers(const WeightedSpectralMeasure& mu,
                                             std::span<const Interval> bulk, double margin);

// |s_empirical - s_theory| against the envelope
//   psi(z) = sqrt(Im s_theory(z) / (n eta)) + 1/(n eta)
// on a grid of points z = E + i eta with n^(tau - 1) <= eta <= 1/tau
// (DomainError outside that band). summary is the largest ratio.
struct LocalLawDiagnostic {
    struct Point {
        double E = 0.0;
        double eta = 0.0;
        double abs_shat = 0.0;
        double psi = 0.0;
        double ratio = 0.0;
    };
    std::vector<Point> points;
    double summary = 0.0;
};

LocalLawDiagnostic local_law_diagnostic(const StieltjesEvaluator& empirical,
                                        const StieltjesEvaluator& theory,
                                        std::span<const Complex> grid, int n, double tau);

}  // namespace spiked
