#pragma once

// Dense symmetric eigendecomposition used by the simulation pipeline.
// Backed by LAPACK's divide-and-conquer solver (dsyevd); results are
// deterministic for a fixed input on a fixed BLAS configuration.

#include <Eigen/Dense>

#include "spiked/errors.hpp"

namespace spiked {

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;   // descending
    Eigen::MatrixXd eigenvectors;  // columns aligned with eigenvalues
};

// Requires a square matrix, symmetric within 1e-10 * max|entry|
// (AsymmetryError). The strictly lower triangle is what the backend reads;
// the input is symmetrized first so both triangles agree exactly.
// Eigenvector sign convention: the entry of largest magnitude is positive,
// ties broken toward the lowest index. ConvergenceError if the backend fails.
EigenDecomposition sym_eig(const Eigen::MatrixXd& matrix);

}  // namespace spiked
