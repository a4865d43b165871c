#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "spiked/measures.hpp"

using namespace spiked;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("atomic measure sorts, merges, and drops zero weights") {
    AtomicMeasure mu({{1.0, 0.25}, {-1.0, 0.5}, {1.0, 0.25}, {3.0, 0.0}});
    REQUIRE(mu.size() == 2);
    CHECK(mu.atoms()[0].location == -1.0);
    CHECK(mu.atoms()[0].weight == 0.5);
    CHECK(mu.atoms()[1].location == 1.0);
    CHECK(mu.atoms()[1].weight == 0.5);
    CHECK(mu.min_location() == -1.0);
    CHECK(mu.max_location() == 1.0);
}

TEST_CASE("atomic measure validates its input") {
    CHECK_THROWS_AS(AtomicMeasure({}), NormError);
    CHECK_THROWS_AS(AtomicMeasure({{0.0, 0.7}}), NormError);
    CHECK_THROWS_AS(AtomicMeasure({{0.0, 1.5}, {1.0, -0.5}}), NormError);
    CHECK_THROWS_AS(AtomicMeasure({{std::nan(""), 1.0}}), DomainError);
    const AtomicMeasure delta = AtomicMeasure::point(2.5);
    REQUIRE(delta.size() == 1);
    CHECK(delta.atoms()[0].location == 2.5);
    CHECK(delta.atoms()[0].weight == 1.0);
}

TEST_CASE("weighted spectral measure sorts descending with aligned weights") {
    WeightedSpectralMeasure mu({0.0, 2.0, -1.0}, {0.2, 0.5, 0.3});
    CHECK(mu.eigenvalues() == std::vector<double>{2.0, 0.0, -1.0});
    CHECK(mu.weights() == std::vector<double>{0.5, 0.2, 0.3});
    CHECK(mu.size() == 3);
}

TEST_CASE("weighted spectral measure validates weights") {
    CHECK_THROWS_AS(WeightedSpectralMeasure({1.0}, {0.9}), NormError);
    CHECK_THROWS_AS(WeightedSpectralMeasure({1.0, 2.0}, {1.5, -0.5}), NormError);
    CHECK_THROWS_AS(WeightedSpectralMeasure({1.0, 2.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(WeightedSpectralMeasure({}, {}), DomainError);
    // Tiny negative values from floating-point cancellation are clamped.
    WeightedSpectralMeasure mu({1.0, 2.0}, {1.0 + 1e-12, -1e-12});
    CHECK(mu.weights()[1] == 1.0 + 1e-12);
    CHECK(mu.weights()[0] == 0.0);
}

TEST_CASE("branch_sqrt squares back and lands in the closed upper half-plane") {
    const Complex zs[] = {{4.0, 0.0}, {-4.0, 0.0}, {0.0, 2.0},  {0.0, -2.0},
                          {3.0, 4.0}, {3.0, -4.0}, {-3.0, 0.1}, {-3.0, -0.1}};
    for (Complex z : zs) {
        const Complex w = branch_sqrt(z);
        CHECK(std::abs(w * w - z) < 1e-12 * std::max(1.0, std::abs(z)));
        CHECK(w.imag() >= 0.0);
    }
}

TEST_CASE("branch_sqrt real-axis convention") {
    CHECK(branch_sqrt({4.0, 0.0}) == Complex(2.0, 0.0));
    CHECK(branch_sqrt({0.0, 0.0}) == Complex(0.0, 0.0));
    const Complex below = branch_sqrt({-4.0, 0.0});
    CHECK(below.real() == 0.0);
    CHECK(below.imag() == 2.0);
    // Continuity: the real-axis value is the limit from above.
    const Complex above = branch_sqrt({-4.0, 1e-12});
    CHECK(std::abs(above - below) < 1e-6);
}

TEST_CASE("atomic stieltjes transform at fixed points") {
    const AtomicMeasure pm1({{-1.0, 0.5}, {1.0, 0.5}});
    CHECK(std::abs(stieltjes(pm1, 2.0 * kI) - Complex(0.0, 0.4)) < 1e-15);
    CHECK(std::abs(stieltjes(pm1, kI) - Complex(0.0, 0.5)) < 1e-15);
    // Real evaluation away from atoms is allowed; at an atom it is a pole.
    CHECK(std::abs(stieltjes(pm1, Complex(3.0, 0.0)) - Complex(-0.375, 0.0)) < 1e-15);
    CHECK_THROWS_AS(stieltjes(pm1, Complex(1.0, 0.0)), PoleError);
}

TEST_CASE("empirical stieltjes transform requires the upper half-plane") {
    const WeightedSpectralMeasure mu({-1.0, 1.0}, {0.5, 0.5});
    CHECK(std::abs(stieltjes(mu, kI) - Complex(0.0, 0.5)) < 1e-15);
    CHECK_THROWS_AS(stieltjes(mu, Complex(0.0, -1.0)), DomainError);
    CHECK_THROWS_AS(stieltjes(mu, Complex(2.0, 0.0)), DomainError);
}

TEST_CASE("moments of a weighted spectral measure") {
    const WeightedSpectralMeasure mu({2.0, -1.0}, {0.25, 0.75});
    CHECK(moment(mu, 0) == 1.0);
    CHECK(moment(mu, 1) == doctest::Approx(0.25 * 2.0 - 0.75).epsilon(1e-14));
    CHECK(moment(mu, 2) == doctest::Approx(0.25 * 4.0 + 0.75).epsilon(1e-14));
    CHECK_THROWS_AS(moment(mu, -1), DomainError);
    CHECK_THROWS_AS(moment(mu, 17), DomainError);
}

TEST_CASE("stieltjes evaluator guards its domain") {
    const StieltjesEvaluator empty;
    CHECK_THROWS_AS(empty(kI), DomainError);

    const StieltjesEvaluator s([](Complex z) { return -1.0 / z; },
                               StieltjesEvaluator::Source::closed_form, 0.5);
    CHECK(s.domain_guard() == 0.5);
    CHECK(s.source() == StieltjesEvaluator::Source::closed_form);
    CHECK(std::abs(s(kI) - kI) < 1e-15);
    CHECK_THROWS_AS(s(Complex(0.0, 0.4)), DomainError);
    CHECK_THROWS_AS(s(Complex(1.0, 0.0)), DomainError);
}

TEST_CASE("density recovery from an atomic transform") {
    // nu = delta_0: Im s(x + i eta)/pi is the Poisson kernel eta/(pi (x^2+eta^2)).
    const AtomicMeasure delta0 = AtomicMeasure::point(0.0);
    const StieltjesEvaluator s([delta0](Complex z) { return stieltjes(delta0, z); },
                               StieltjesEvaluator::Source::closed_form, 0.0);
    const double eta = 1e-3;
    CHECK(density_from_stieltjes(s, 0.0, eta) ==
          doctest::Approx(1.0 / (std::numbers::pi * eta)).epsilon(1e-12));
    CHECK_THROWS_AS(density_from_stieltjes(s, 0.0, 0.0), DomainError);
}

TEST_CASE("make_evaluator matches the direct empirical sum") {
    const WeightedSpectralMeasure mu({-2.0, 0.5, 1.0}, {0.25, 0.25, 0.5});
    const StieltjesEvaluator s = make_evaluator(mu);
    CHECK(s.source() == StieltjesEvaluator::Source::empirical);
    const Complex z(0.3, 0.7);
    CHECK(std::abs(s(z) - stieltjes(mu, z)) == 0.0);
}
