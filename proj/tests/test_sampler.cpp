#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "spiked/closed_forms.hpp"
#include "spiked/eig.hpp"
#include "spiked/sampler.hpp"

using namespace spiked;

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& matrix) {
    const EigenDecomposition decomposition = sym_eig(matrix);
    std::vector<double> out(decomposition.eigenvalues.data(),
                            decomposition.eigenvalues.data() + decomposition.eigenvalues.size());
    std::sort(out.begin(), out.end());
    return out;
}

// Kolmogorov-Smirnov distance between sorted samples and a CDF.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(i / n - f));
    }
    return d;
}

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
           std::asin(x / 2.0) / std::numbers::pi;
}

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
    // Published test vector for the splitmix64 update/output scramble.
    SplitMix64 rng(1234567);
    CHECK(rng.next_u64() == 6457827717110365317ULL);
    CHECK(rng.next_u64() == 3203168211198807973ULL);
    CHECK(rng.next_u64() == 9817491932198370423ULL);

    SplitMix64 zero(0);
    CHECK(zero.next_u64() == 16294208416658607535ULL);
    SplitMix64 zero2(0);
    CHECK(zero2.next_uniform() == doctest::Approx(0.8833108082136427).epsilon(1e-16));
    SplitMix64 zero3(0);
    CHECK(std::abs(zero3.next_gaussian() - (-0.45275774021745807)) < 5e-16);
}

TEST_CASE("entry laws are standardized") {
    for (EntryLaw law : {EntryLaw::gaussian, EntryLaw::rademacher, EntryLaw::uniform}) {
        SplitMix64 rng(99);
        const int N = 200000;
        double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < N; ++i) {
            const double x = draw_entry(rng, law);
            sum += x;
            sum2 += x * x;
            sum4 += x * x * x * x;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        CHECK(std::abs(sum / N) < 0.02);
        CHECK(std::abs(sum2 / N - 1.0) < 0.02);
        switch (law) {
            case EntryLaw::gaussian:
                CHECK(std::abs(sum4 / N - 3.0) < 0.15);
                CHECK(hi > 3.0);  // unbounded tails reach past 3 sigma
                break;
            case EntryLaw::rademacher:
                CHECK(sum4 / N == 1.0);
                CHECK(lo == -1.0);
                CHECK(hi == 1.0);
                break;
            case EntryLaw::uniform:
                CHECK(std::abs(sum4 / N - 1.8) < 0.05);
                CHECK(lo >= -std::sqrt(3.0));
                CHECK(hi <= std::sqrt(3.0));
                break;
        }
    }
}

TEST_CASE("config validation") {
    SpikedModelConfig config;
    config.model = Model::additive;
    config.n = 1;
    config.theta = 2.0;
    CHECK_THROWS_AS(validate(config), ConfigError);
    config.n = 100;
    CHECK_NOTHROW(validate(config));
    config.theta = std::nan("");
    CHECK_THROWS_AS(validate(config), ConfigError);

    SpikedModelConfig mult;
    mult.model = Model::multiplicative;
    mult.n = 100;
    mult.theta = 2.0;
    mult.base = AtomicMeasure::point(1.0);
    CHECK_THROWS_AS(validate(mult), ConfigError);  // neither m nor alpha
    mult.alpha = 2.0;
    CHECK_NOTHROW(validate(mult));
    CHECK(sample_count(mult) == 200);
    mult.m = 350;
    CHECK(sample_count(mult) == 350);  // explicit m wins over alpha
    mult.theta = -1.0;
    CHECK_THROWS_AS(validate(mult), ConfigError);
    mult.theta = 2.0;
    mult.base = AtomicMeasure({{-1.0, 0.5}, {1.0, 0.5}});
    CHECK_THROWS_AS(validate(mult), ConfigError);  // negative population atom
}

TEST_CASE("diagonal realization is deterministic and exhaustive") {
    SpikedModelConfig config;
    config.model = Model::additive;
    config.n = 9;
    config.theta = 5.0;
    config.base = AtomicMeasure({{-1.0, 0.5}, {1.0, 0.5}});
    const std::vector<double> diag = realize_diagonal(config);
    REQUIRE(diag.size() == 9);
    CHECK(diag[0] == 5.0);
    CHECK(std::count(diag.begin(), diag.end(), -1.0) == 4);
    CHECK(std::count(diag.begin(), diag.end(), 1.0) == 4);

    config.n = 5;
    config.base = AtomicMeasure({{0.0, 0.3}, {1.0, 0.7}});
    const std::vector<double> skewed = realize_diagonal(config);
    CHECK(std::count(skewed.begin(), skewed.end(), 0.0) == 1);
    CHECK(std::count(skewed.begin(), skewed.end(), 1.0) == 3);

    // Both atoms round up; the remainder comes off the first-largest atom.
    config.n = 6;
    config.base = AtomicMeasure({{-1.0, 0.5}, {1.0, 0.5}});
    const std::vector<double> tied = realize_diagonal(config);
    REQUIRE(tied.size() == 6);
    CHECK(std::count(tied.begin(), tied.end(), -1.0) == 2);
    CHECK(std::count(tied.begin(), tied.end(), 1.0) == 3);
}

TEST_CASE("additive sampler: symmetry, spike, determinism") {
    SpikedModelConfig config;
    config.model = Model::additive;
    config.n = 60;
    config.theta = 2.0;
    config.seed = 11;
    const RealizedModel realized = sample(config);
    REQUIRE(realized.matrix.rows() == 60);
    REQUIRE(realized.matrix.cols() == 60);
    CHECK(realized.m == 0);
    CHECK(realized.model == Model::additive);
    CHECK((realized.matrix - realized.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(realized.spike_direction(0) == 1.0);
    CHECK(realized.spike_direction.tail(59).cwiseAbs().maxCoeff() == 0.0);
    CHECK(realized.diagonal[0] == 2.0);
    // W(0,0) = theta + noise of scale 1/sqrt(n).
    CHECK(std::abs(realized.matrix(0, 0) - 2.0) < 1.0);

    const RealizedModel again = sample(config);
    CHECK((realized.matrix - again.matrix).cwiseAbs().maxCoeff() == 0.0);

    config.seed = 12;
    const RealizedModel other = sample(config);
    CHECK((realized.matrix - other.matrix).cwiseAbs().maxCoeff() > 0.0);

    config.entry_law = EntryLaw::rademacher;
    const RealizedModel rademacher = sample(config);
    const double scale = std::sqrt(60.0);
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            CHECK(std::abs(std::abs(rademacher.matrix(i, j)) * scale - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("multiplicative sampler: psd, scale, determinism") {
    SpikedModelConfig config;
    config.model = Model::multiplicative;
    config.n = 300;
    config.m = 600;
    config.theta = 1.0;
    config.base = AtomicMeasure::point(1.0);
    config.seed = 21;
    const RealizedModel realized = sample(config);
    CHECK(realized.m == 600);
    CHECK((realized.matrix - realized.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);

    const std::vector<double> spectrum = sorted_eigenvalues(realized.matrix);
    CHECK(spectrum.front() > -1e-10);  // covariance matrices are PSD
    // E S_ii = m/n = alpha.
    CHECK(std::abs(realized.matrix.trace() / 300.0 - 2.0) < 0.2);

    const RealizedModel again = sample(config);
    CHECK((realized.matrix - again.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wigner spectrum is close to the semicircle") {
    SpikedModelConfig config;
    config.model = Model::additive;
    config.n = 1200;
    config.theta = 0.0;
    config.seed = 5;
    for (EntryLaw law : {EntryLaw::gaussian, EntryLaw::rademacher}) {
        config.entry_law = law;
        const std::vector<double> spectrum = sorted_eigenvalues(sample(config).matrix);
        CHECK(ks_distance(spectrum, semicircle_cdf) < 0.02);
    }
}

TEST_CASE("wishart spectrum is close to marchenko-pastur") {
    SpikedModelConfig config;
    config.model = Model::multiplicative;
    config.n = 800;
    config.alpha = 2.0;
    config.theta = 1.0;
    config.base = AtomicMeasure::point(1.0);
    config.seed = 6;

    // Numeric MP(2) CDF on a fine grid.
    const Interval edges = mp_edges(2.0);
    const int steps = 20000;
    const double h = (edges.hi - edges.lo) / steps;
    std::vector<double> cumulative(steps + 1, 0.0);
    for (int k = 1; k <= steps; ++k) {
        const double left = mp_density(2.0, edges.lo + (k - 1) * h);
        const double right = mp_density(2.0, edges.lo + k * h);
        cumulative[k] = cumulative[k - 1] + 0.5 * (left + right) * h;
    }
    auto cdf = [&](double x) {
        if (x <= edges.lo) return 0.0;
        if (x >= edges.hi) return 1.0;
        const double pos = (x - edges.lo) / h;
        const int k = std::min(static_cast<int>(pos), steps - 1);
        return cumulative[k] + (pos - k) * (cumulative[k + 1] - cumulative[k]);
    };

    const std::vector<double> spectrum = sorted_eigenvalues(sample(config).matrix);
    CHECK(ks_distance(spectrum, cdf) < 0.02);
}
