#include "spiked/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <cblas.h>

namespace spiked {

double SplitMix64::next_gaussian() {
    double u1 = next_uniform();
    double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_entry(SplitMix64& rng, EntryLaw law) {
    switch (law) {
        case EntryLaw::gaussian:
            return rng.next_gaussian();
        case EntryLaw::rademacher:
            return (rng.next_u64() >> 63) ? 1.0 : -1.0;
        case EntryLaw::uniform:
            return (2.0 * rng.next_uniform() - 1.0) * std::sqrt(3.0);
    }
    throw ConfigError("unknown entry law");
}

void validate(const SpikedModelConfig& config) {
    if (config.n < 2) throw ConfigError("model dimension n must be at least 2");
    if (!std::isfinite(config.theta)) throw ConfigError("spike theta must be finite");
    if (config.model == Model::multiplicative) {
        if (config.theta < 0.0) throw ConfigError("multiplicative spike theta must be >= 0");
        if (config.base.min_location() < 0.0)
            throw ConfigError("population spectrum atoms must be >= 0");
        if (!config.m && !config.alpha)
            throw ConfigError("multiplicative model needs m or alpha");
        if (sample_count(config) < 1) throw ConfigError("sample count m must be >= 1");
    }
}

int sample_count(const SpikedModelConfig& config) {
    if (config.model != Model::multiplicative) return 0;
    if (config.m) return *config.m;
    if (config.alpha) return static_cast<int>(std::llround(*config.alpha * config.n));
    throw ConfigError("multiplicative model needs m or alpha");
}

std::vector<double> realize_diagonal(const SpikedModelConfig& config) {
    validate(config);
    const auto& atoms = config.base.atoms();
    const long slots = config.n - 1;

    std::vector<long> counts(atoms.size());
    long total = 0;
    std::size_t largest = 0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        counts[k] = std::llround(atoms[k].weight * static_cast<double>(slots));
        total += counts[k];
        if (atoms[k].weight > atoms[largest].weight) largest = k;
    }
    counts[largest] += slots - total;  // rounding remainder to the largest atom
    if (counts[largest] < 0) throw ConfigError("base measure cannot fill the diagonal");

    std::vector<double> diag;
    diag.reserve(config.n);
    diag.push_back(config.theta);
    for (std::size_t k = 0; k < atoms.size(); ++k)
        diag.insert(diag.end(), static_cast<std::size_t>(counts[k]), atoms[k].location);
    return diag;
}

namespace {

RealizedModel sample_additive(const SpikedModelConfig& config, const std::vector<double>& diag) {
    const int n = config.n;
    SplitMix64 rng(config.seed);
    Eigen::MatrixXd w(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double x = draw_entry(rng, config.entry_law) * scale;
            w(i, j) = x;
            w(j, i) = x;
        }
    }
    for (int i = 0; i < n; ++i) w(i, i) += diag[static_cast<std::size_t>(i)];

    RealizedModel out;
    out.matrix = std::move(w);
    out.n = n;
    out.theta = config.theta;
    out.model = Model::additive;
    return out;
}

RealizedModel sample_multiplicative(const SpikedModelConfig& config,
                                    const std::vector<double>& diag) {
    const int n = config.n;
    const int m = sample_count(config);
    SplitMix64 rng(config.seed);
    Eigen::MatrixXd x(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) x(i, j) = draw_entry(rng, config.entry_law);

    // S = D X X^T D / n with D = diag(sqrt(diag)); scale rows, then one syrk.
    for (int i = 0; i < n; ++i) x.row(i) *= std::sqrt(diag[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    cblas_dsyrk(CblasColMajor, CblasLower, CblasNoTrans, n, m,
                1.0 / static_cast<double>(n), x.data(), n, 0.0, s.data(), n);
    s.triangularView<Eigen::StrictlyUpper>() = s.transpose();

    RealizedModel out;
    out.matrix = std::move(s);
    out.n = n;
    out.m = m;
    out.theta = config.theta;
    out.model = Model::multiplicative;
    return out;
}

}  // namespace

RealizedModel sample(const SpikedModelConfig& config) {
    validate(config);
    std::vector<double> diag = realize_diagonal(config);
    RealizedModel out = config.model == Model::additive ? sample_additive(config, diag)
                                                        : sample_multiplicative(config, diag);
    out.spike_direction = Eigen::VectorXd::Zero(config.n);
    out.spike_direction(0) = 1.0;
    out.diagonal = std::move(diag);
    return out;
}

}  // namespace spiked
