#include "spiked/eig.hpp"

#include <cmath>
#include <lapacke.h>
#include <vector>

namespace spiked {

EigenDecomposition sym_eig(const Eigen::MatrixXd& matrix) {
    const auto n = matrix.rows();
    if (n == 0 || n != matrix.cols()) throw AsymmetryError("sym_eig needs a square matrix");

    double scale = matrix.cwiseAbs().maxCoeff();
    double tol = 1e-10 * std::max(scale, 1.0);
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > tol)
        throw AsymmetryError("sym_eig input is not symmetric");

    Eigen::MatrixXd a = 0.5 * (matrix + matrix.transpose());
    std::vector<double> w(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                     a.data(), static_cast<lapack_int>(n), w.data());
    if (info != 0) throw ConvergenceError("dsyevd failed to converge");

    // dsyevd returns ascending order; flip to descending.
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = w[static_cast<std::size_t>(n - 1 - k)];
        out.eigenvectors.col(k) = a.col(n - 1 - k);
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        auto col = out.eigenvectors.col(k);
        Eigen::Index lead = 0;
        double best = std::abs(col(0));
        for (Eigen::Index i = 1; i < n; ++i) {
            double v = std::abs(col(i));
            if (v > best) {  // strict: ties stay at the lowest index
                best = v;
                lead = i;
            }
        }
        if (col(lead) < 0.0) col = -col;
    }
    return out;
}

}  // namespace spiked
