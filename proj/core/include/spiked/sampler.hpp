#pragma once

// Samplers for the two spiked models:
//
//   additive:        W = X/sqrt(n) + A,     A = diag(theta, gamma_2..gamma_n)
//   multiplicative:  S = D (X X^T / n) D,   D = diag(sqrt(theta), sqrt(gamma_2)..)
//
// X has iid mean-0 variance-1 entries (symmetric with an independent diagonal
// of the same law in the additive case; n x m in the multiplicative case).
// The spike occupies slot 0, so the spike direction is always e_1. The
// remaining n-1 diagonal slots realize the base measure deterministically:
// an atom of weight w gets round(w (n-1)) slots and the largest atom absorbs
// the rounding remainder.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "spiked/closed_forms.hpp"
#include "spiked/measures.hpp"
#include "spiked/rng.hpp"

namespace spiked {

struct SpikedModelConfig {
    Model model = Model::additive;
    int n = 0;
    std::optional<int> m;          // multiplicative sample count...
    std::optional<double> alpha;   // ...or aspect ratio, m = round(alpha n)
    double theta = 0.0;
    AtomicMeasure base = AtomicMeasure::point(0.0);
    EntryLaw entry_law = EntryLaw::gaussian;
    std::uint64_t seed = 0;
};

struct RealizedModel {
    Eigen::MatrixXd matrix;             // W or S, n x n symmetric
    Eigen::VectorXd spike_direction;    // e_1
    std::vector<double> diagonal;       // theta followed by the realized base
    int n = 0;
    int m = 0;                          // 0 for the additive model
    double theta = 0.0;
    Model model = Model::additive;
};

// Validates a config: n >= 2, finite theta, multiplicative needs theta >= 0,
// nonnegative base atoms and a resolvable m >= 1. ConfigError otherwise.
void validate(const SpikedModelConfig& config);

// Resolved sample count for a multiplicative config.
int sample_count(const SpikedModelConfig& config);

// Deterministic diagonal: spike first, then the realized base measure sorted
// by atom location.
std::vector<double> realize_diagonal(const SpikedModelConfig& config);

// Draw one matrix. Entries are consumed from SplitMix64(seed) in a fixed
// documented order: additive fills the upper triangle row by row (diagonal
// included); multiplicative fills X row by row.
RealizedModel sample(const SpikedModelConfig& config);

}  // namespace spiked
