#include "spiked/closed_forms.hpp"

#include <cmath>
#include <numbers>

namespace spiked {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRatioFloor = 1e-8;

void require_alpha(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("aspect ratio alpha must be positive");
}
}  // namespace

double semicircle_density(double x) {
    if (std::abs(x) >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

Interval mp_edges(double alpha) {
    require_alpha(alpha);
    double r = std::sqrt(alpha);
    return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

double mp_density(double alpha, double x) {
    auto [a, b] = mp_edges(alpha);
    if (x <= a || x >= b) return 0.0;
    return std::sqrt((b - x) * (x - a)) / (2.0 * kPi * x);
}

Complex semicircle_stieltjes(Complex z) {
    return (-z + branch_sqrt(z * z - 4.0)) / 2.0;
}

Complex mp_stieltjes(double alpha, Complex z) {
    auto [a, b] = mp_edges(alpha);
    return (alpha - z - 1.0 + branch_sqrt((z - b) * (z - a))) / (2.0 * z);
}

Complex spiked_semicircle_stieltjes(double theta, Complex z) {
    return 1.0 / (theta - semicircle_stieltjes(z) - z);
}

Complex spiked_mp_stieltjes(double alpha, double theta, Complex z) {
    return 1.0 / (theta * (alpha - 1.0) - z * theta * mp_stieltjes(alpha, z) - z);
}

StieltjesEvaluator semicircle_evaluator() {
    return {[](Complex z) { return semicircle_stieltjes(z); },
            StieltjesEvaluator::Source::closed_form, 0.0};
}

StieltjesEvaluator mp_evaluator(double alpha) {
    require_alpha(alpha);
    return {[alpha](Complex z) { return mp_stieltjes(alpha, z); },
            StieltjesEvaluator::Source::closed_form, 0.0};
}

StieltjesEvaluator spiked_semicircle_evaluator(double theta) {
    return {[theta](Complex z) { return spiked_semicircle_stieltjes(theta, z); },
            StieltjesEvaluator::Source::closed_form, 0.0};
}

StieltjesEvaluator spiked_mp_evaluator(double alpha, double theta) {
    require_alpha(alpha);
    return {[alpha, theta](Complex z) { return spiked_mp_stieltjes(alpha, theta, z); },
            StieltjesEvaluator::Source::closed_form, 0.0};
}

RankOneLaw spiked_semicircle_law(double theta) {
    RankOneLaw law;
    law.model = Model::additive;
    law.theta = theta;
    law.bulk = {-2.0, 2.0};
    law.density = [theta](double x) {
        if (std::abs(x) >= 2.0) return 0.0;
        return std::sqrt(4.0 - x * x) / (2.0 * kPi * (theta * theta + 1.0 - theta * x));
    };
    if (std::abs(theta) > 1.0)
        law.atoms.push_back({theta + 1.0 / theta, 1.0 - 1.0 / (theta * theta)});
    law.transform = spiked_semicircle_evaluator(theta);
    return law;
}

RankOneLaw spiked_mp_law(double alpha, double theta) {
    require_alpha(alpha);
    if (theta < 0.0) throw DomainError("covariance spike theta must be nonnegative");
    RankOneLaw law;
    law.model = Model::multiplicative;
    law.theta = theta;
    law.alpha = alpha;
    law.bulk = mp_edges(alpha);
    double shift = theta * (alpha * theta - alpha + 1.0);
    law.density = [alpha, theta, shift, bulk = law.bulk](double x) {
        if (x <= bulk.lo || x >= bulk.hi) return 0.0;
        return theta * std::sqrt((bulk.hi - x) * (x - bulk.lo)) /
               (2.0 * kPi * x * (x * (1.0 - theta) + shift));
    };
    if (alpha < 1.0)
        law.atoms.push_back({0.0, (1.0 - alpha) / (alpha * (theta - 1.0) + 1.0)});
    if (std::abs(theta - 1.0) > 1.0 / std::sqrt(alpha)) {
        double d = theta - 1.0;
        law.atoms.push_back({theta * (alpha * theta - alpha + 1.0) / d,
                             (1.0 - 1.0 / (alpha * d * d)) / (1.0 + 1.0 / (alpha * d))});
    }
    law.transform = spiked_mp_evaluator(alpha, theta);
    return law;
}

double overlap_profile_additive(double theta, double x) {
    if (std::abs(x) >= 2.0) throw DomainError("additive overlap profile needs |x| < 2");
    return 1.0 / (theta * theta - theta * x + 1.0);
}

double overlap_profile_multiplicative(double alpha, double theta, double x) {
    auto [a, b] = mp_edges(alpha);
    if (x <= a || x >= b)
        throw DomainError("multiplicative overlap profile needs x inside (a, b)");
    return theta / (x * (1.0 - theta) + theta * (alpha * theta - alpha + 1.0));
}

double ratio_general(const std::function<double(double)>& spiked_density,
                     const std::function<double(double)>& bulk_density, double x) {
    double den = bulk_density(x);
    if (!(std::abs(den) > kRatioFloor))
        throw DivisionNearZeroError("bulk density vanishes at the requested point");
    return spiked_density(x) / den;
}

}  // namespace spiked
