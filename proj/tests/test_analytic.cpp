#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "spiked/analytic.hpp"
#include "spiked/closed_forms.hpp"
#include "spiked/eig.hpp"
#include "spiked/sampler.hpp"

using namespace spiked;

namespace {

const Complex kI(0.0, 1.0);
const AtomicMeasure kPm1({{-1.0, 0.5}, {1.0, 0.5}});
const AtomicMeasure kOneTwo({{1.0, 0.5}, {2.0, 0.5}});

}  // namespace

TEST_CASE("additive fixed point reproduces the semicircle closed form") {
    const Complex zs[] = {{0.0, 1.0}, {0.0, 2.0}, {1.5, 0.5}, {-2.7, 0.3}, {0.3, 0.05}};
    for (Complex z : zs) {
        CHECK(std::abs(solve_free_additive(AtomicMeasure::point(0.0), z) -
                       semicircle_stieltjes(z)) < 1e-9);
    }
}

TEST_CASE("multiplicative fixed point reproduces marchenko-pastur") {
    for (double alpha : {0.5, 2.0, 4.0}) {
        const Complex zs[] = {{0.0, 1.0}, {3.0, 0.5}, {-1.0, 0.1}, {5.0, 0.01}};
        for (Complex z : zs) {
            CHECK(std::abs(solve_free_multiplicative(AtomicMeasure::point(1.0), alpha, z) -
                           mp_stieltjes(alpha, z)) < 1e-9);
        }
    }
}

TEST_CASE("fixed point at frozen general-base points") {
    // Symmetric two-atom base: s(i) = i t with t (t+1)^2 = 1.
    CHECK(std::abs(solve_free_additive(kPm1, kI) - Complex(0.0, 0.46557123187676803)) < 1e-9);
    CHECK(std::abs(solve_free_additive(kPm1, Complex(1.0, 0.01)) -
                   Complex(-0.12319847756507039, 0.74055036377222351)) < 1e-9);
    CHECK(std::abs(solve_free_additive(kPm1, Complex(3.0, 0.0001)) -
                   Complex(-0.46791111015307269, 3.388477564270082e-5)) < 1e-9);

    CHECK(std::abs(solve_free_multiplicative(kOneTwo, 2.0, Complex(2.0, 1.0)) -
                   Complex(-0.017177674349266592, 0.42055003913351867)) < 1e-9);
    CHECK(std::abs(solve_free_multiplicative(kOneTwo, 2.0, Complex(5.0, 0.01)) -
                   Complex(-0.21127571097912121, 0.24208749514052229)) < 1e-9);
}

TEST_CASE("fixed point solvers enforce their domain and budget") {
    CHECK_THROWS_AS(solve_free_additive(AtomicMeasure::point(0.0), Complex(0.0, -1.0)),
                    DomainError);
    SolverSettings strangled;
    strangled.max_iterations = 1;
    CHECK_THROWS_AS(solve_free_additive(AtomicMeasure::point(0.0), kI, strangled),
                    NonConvergenceError);
    CHECK_THROWS_AS(solve_free_multiplicative(AtomicMeasure::point(1.0), 2.0, kI, strangled),
                    NonConvergenceError);
}

TEST_CASE("additive solution handle: support scan and guard") {
    const FreeAdditiveSolution semicircle(AtomicMeasure::point(0.0));
    const auto& support = semicircle.support();
    REQUIRE(support.size() == 1);
    CHECK(std::abs(support[0].lo - (-2.0)) < 5e-3);
    CHECK(std::abs(support[0].hi - 2.0) < 5e-3);

    CHECK(semicircle.evaluator().source() == StieltjesEvaluator::Source::fixed_point);
    CHECK(semicircle.domain_guard() == 1e-4);
    CHECK_THROWS_AS(semicircle(Complex(0.0, 1e-5)), DomainError);

    // Symmetric two-atom base stays connected (cusp case): edges at 3 sqrt(3)/2.
    const FreeAdditiveSolution two_atoms(kPm1);
    REQUIRE(two_atoms.support().size() == 1);
    CHECK(std::abs(two_atoms.support()[0].hi - 2.59807621135332) < 5e-3);
    CHECK(std::abs(two_atoms.support()[0].lo + 2.59807621135332) < 5e-3);
}

TEST_CASE("multiplicative solution handle: support scan") {
    const FreeMultiplicativeSolution wide(AtomicMeasure::point(1.0), 4.0);
    REQUIRE(wide.support().size() == 1);
    CHECK(std::abs(wide.support()[0].lo - 1.0) < 5e-3);
    CHECK(std::abs(wide.support()[0].hi - 9.0) < 5e-3);

    // alpha < 1: the atom at zero shows up as its own tiny interval.
    const FreeMultiplicativeSolution thin(AtomicMeasure::point(1.0), 0.5);
    const Interval edges = mp_edges(0.5);
    REQUIRE(thin.support().size() == 2);
    CHECK(thin.support()[0].lo <= 0.0);
    CHECK(thin.support()[0].hi >= 0.0);
    CHECK(std::abs(thin.support()[1].lo - edges.lo) < 1e-2);
    CHECK(std::abs(thin.support()[1].hi - edges.hi) < 1e-2);
}

TEST_CASE("spiked transforms through the fixed point match closed forms") {
    const FreeAdditiveSolution semicircle(AtomicMeasure::point(0.0));
    for (Complex z : {Complex(0.0, 2.0), Complex(0.5, 0.01)}) {
        CHECK(std::abs(spiked_stieltjes_additive(2.0, semicircle, z) -
                       spiked_semicircle_stieltjes(2.0, z)) < 1e-9);
    }
    const FreeMultiplicativeSolution mp(AtomicMeasure::point(1.0), 4.0);
    for (Complex z : {Complex(5.0, 0.01), Complex(0.0, 2.0)}) {
        CHECK(std::abs(spiked_stieltjes_multiplicative(2.0, mp, z) -
                       spiked_mp_stieltjes(4.0, 2.0, z)) < 1e-9);
    }
}

TEST_CASE("subordination function inverts the additive outlier map") {
    const FreeAdditiveSolution semicircle(AtomicMeasure::point(0.0));
    // w(theta + 1/theta) = theta for the semicircle.
    CHECK(std::abs(subordination_w(semicircle, 2.5) - 2.0) < 1e-4);
    CHECK(std::abs(subordination_w(semicircle, -2.5) - (-2.0)) < 1e-4);
    CHECK_THROWS_AS(subordination_w(semicircle, 1.0), SupportError);
}

TEST_CASE("outlier function F inverts the multiplicative outlier map") {
    const FreeMultiplicativeSolution mp(AtomicMeasure::point(1.0), 4.0);
    // 1/F(1/x) = theta at x = theta (alpha theta - alpha + 1)/(theta - 1).
    CHECK(std::abs(1.0 / outlier_F(mp, 1.0 / 10.0) - 2.0) < 1e-3);
    CHECK_THROWS_AS(outlier_F(mp, 0.0), DomainError);
    CHECK_THROWS_AS(outlier_F(mp, 0.25), SupportError);  // 1/y = 4 sits in the bulk
}

TEST_CASE("additive outliers match theta + 1/theta") {
    const FreeAdditiveSolution semicircle(AtomicMeasure::point(0.0));
    for (double theta : {1.5, 2.0, 3.0, -2.0, -4.0}) {
        const OutlierReport report = find_outlier_additive(theta, semicircle);
        REQUIRE(report.exists);
        CHECK(report.model == Model::additive);
        CHECK(report.theta == theta);
        CHECK(std::abs(report.location - (theta + 1.0 / theta)) < 1e-5);
        CHECK(std::abs(report.mass - (1.0 - 1.0 / (theta * theta))) < 1e-5);
    }
    // Close to threshold the eta-regularized boundary values cost accuracy.
    const OutlierReport near_critical = find_outlier_additive(1.1, semicircle);
    REQUIRE(near_critical.exists);
    CHECK(std::abs(near_critical.location - (1.1 + 1.0 / 1.1)) < 1e-4);
    CHECK(std::abs(near_critical.mass - (1.0 - 1.0 / 1.21)) < 1e-4);
}

TEST_CASE("subcritical additive spikes produce no outlier") {
    const FreeAdditiveSolution semicircle(AtomicMeasure::point(0.0));
    for (double theta : {0.9, 1.0, -1.0, 0.5, 0.0}) {
        CHECK_FALSE(find_outlier_additive(theta, semicircle).exists);
    }
}

TEST_CASE("general-base additive outlier: inverse-function oracle") {
    // For mu_A = (delta_-1 + delta_1)/2 and theta = 3: location theta - s_A(theta)
    // = 3.375 and mass 1 - s_A'(theta) = 0.84375, both exact rationals.
    const FreeAdditiveSolution two_atoms(kPm1);
    const OutlierReport report = find_outlier_additive(3.0, two_atoms);
    REQUIRE(report.exists);
    CHECK(std::abs(report.location - 3.375) < 1e-5);
    CHECK(std::abs(report.mass - 0.84375) < 1e-5);

    CHECK_FALSE(find_outlier_additive(0.5, two_atoms).exists);
    CHECK_FALSE(find_outlier_additive(1.2, two_atoms).exists);
}

TEST_CASE("multiplicative outliers match the rank-one formulas") {
    const FreeMultiplicativeSolution wide(AtomicMeasure::point(1.0), 4.0);

    const OutlierReport right = find_outlier_multiplicative(2.0, wide);
    REQUIRE(right.exists);
    CHECK(right.model == Model::multiplicative);
    CHECK(std::abs(right.location - 10.0) < 1e-5);
    CHECK(std::abs(right.mass - 0.6) < 1e-4);

    // theta < 1 - 1/sqrt(alpha): the outlier detaches below the bulk.
    const OutlierReport left = find_outlier_multiplicative(0.25, wide);
    REQUIRE(left.exists);
    CHECK(std::abs(left.location - 2.0 / 3.0) < 1e-5);
    CHECK(std::abs(left.mass - 5.0 / 6.0) < 1e-4);

    CHECK_FALSE(find_outlier_multiplicative(1.4, wide).exists);  // |theta-1| <= 1/2
    CHECK_FALSE(find_outlier_multiplicative(1.0, wide).exists);
    CHECK_FALSE(find_outlier_multiplicative(0.0, wide).exists);
    CHECK_THROWS_AS(find_outlier_multiplicative(-1.0, wide), DomainError);

    const FreeMultiplicativeSolution narrow(AtomicMeasure::point(1.0), 2.0);
    const OutlierReport six = find_outlier_multiplicative(2.0, narrow);
    REQUIRE(six.exists);
    CHECK(std::abs(six.location - 6.0) < 1e-5);
    CHECK(std::abs(six.mass - 1.0 / 3.0) < 1e-4);

    const FreeMultiplicativeSolution thin(AtomicMeasure::point(1.0), 0.5);
    const OutlierReport above = find_outlier_multiplicative(4.0, thin);
    REQUIRE(above.exists);
    CHECK(std::abs(above.location - 10.0 / 3.0) < 1e-5);
    CHECK(std::abs(above.mass - 7.0 / 15.0) < 1e-4);
    CHECK_FALSE(find_outlier_multiplicative(2.0, thin).exists);
}

TEST_CASE("fixed point agrees with a simulated spectrum") {
    // Monte Carlo cross-check: the full empirical spectrum of an n=500 deformed
    // Wigner matrix with base (delta_-1 + delta_1)/2 has transform close to the
    // fixed point at z = i.
    SpikedModelConfig config;
    config.model = Model::additive;
    config.n = 500;
    config.theta = 0.0;
    config.base = kPm1;
    config.seed = 42;
    const RealizedModel realized = sample(config);
    const EigenDecomposition decomposition = sym_eig(realized.matrix);

    std::vector<double> eigenvalues(decomposition.eigenvalues.data(),
                                    decomposition.eigenvalues.data() + config.n);
    std::vector<double> weights(static_cast<std::size_t>(config.n), 1.0 / config.n);
    const WeightedSpectralMeasure mu(std::move(eigenvalues), std::move(weights));

    CHECK(std::abs(stieltjes(mu, kI) - Complex(0.0, 0.46557123187676803)) < 0.05);
}
