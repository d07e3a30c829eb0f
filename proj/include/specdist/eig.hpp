#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specdist {

/// Eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
};

/// All eigenvalues of a symmetric/Hermitian matrix. Throws
/// std::invalid_argument if the matrix is not Hermitian to 1e-10 entrywise.
Spectrum eig_sym(const Eigen::MatrixXd& a);
Spectrum eig_sym(const Eigen::MatrixXcd& a);

/// Symmetric tridiagonal matrix given by its diagonal (n) and off-diagonal
/// (n - 1). Runs in O(n^2) without forming the dense matrix.
Spectrum eig_sym_tridiag(std::span<const double> diag, std::span<const double> offdiag);

/// Eigenvalues of M^{-1} K through the Cholesky reduction L^{-1} K L^{-H}.
/// Throws NotPositiveDefinite if M has no Cholesky factor.
Spectrum eig_gen_sym_def(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m);
Spectrum eig_gen_sym_def(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& m);

}  // namespace specdist
