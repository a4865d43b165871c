#pragma once

#include <stdexcept>
#include <string>

namespace spiked {

// Evaluation outside a function's domain (bad eta, bad moment order, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Stieltjes transform of an atomic measure requested exactly at an atom.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// A boundary-value operation was requested at a point inside the bulk support.
struct SupportError : std::domain_error {
    explicit SupportError(const std::string& what) : std::domain_error(what) {}
};

// Weights of a measure (or a direction vector) fail their normalization check.
struct NormError : std::invalid_argument {
    explicit NormError(const std::string& what) : std::invalid_argument(what) {}
};

// Fixed-point iteration exhausted its iteration budget, including the retry.
struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Dense eigensolver backend reported failure.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Matrix handed to the symmetric eigensolver is not symmetric.
struct AsymmetryError : std::invalid_argument {
    explicit AsymmetryError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid model, scenario, or config-file input.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Quotient of densities where the denominator is numerically zero.
struct DivisionNearZeroError : std::domain_error {
    explicit DivisionNearZeroError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace spiked
