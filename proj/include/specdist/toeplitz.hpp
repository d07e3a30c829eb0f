#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "specdist/core.hpp"

namespace specdist {

using cplx = std::complex<double>;

struct QuadratureOptions {
    /// Gauss-Legendre nodes per sub-panel; each sub-panel spans at most one
    /// period of e^{-ik theta}.
    std::size_t nodes_per_panel = 32;
};

/// f_k = (1/2pi) int_{-pi}^{pi} f(theta) e^{-ik theta} d theta, by composite
/// Gauss-Legendre split at the symbol's breakpoints. The symbol's domain must
/// be [-pi, pi].
cplx fourier_coeff(const ScalarSymbol& f, long k, const QuadratureOptions& opts = {});

/// Coefficients f_k for |k| <= order.
class FourierCoeffs {
public:
    FourierCoeffs(std::size_t order, std::vector<cplx> coeffs);

    std::size_t order() const noexcept { return order_; }
    cplx operator[](long k) const;
    /// True if every coefficient is real and f_{-k} = f_k to within tol.
    bool is_real_even(double tol = 1e-12) const;

private:
    std::size_t order_;
    std::vector<cplx> coeffs_;  // index k + order
};

FourierCoeffs fourier_coeffs(const ScalarSymbol& f, std::size_t order, const QuadratureOptions& opts = {});

/// T_n(f) = [f_{i-j}]. Requires order >= n - 1 unless `allow_truncation`,
/// in which case missing coefficients are taken as zero.
Eigen::MatrixXcd toeplitz_build(const FourierCoeffs& c, std::size_t n, bool allow_truncation = false);

/// k x k block coefficients of a matrix-valued generating function.
class BlockFourierCoeffs {
public:
    BlockFourierCoeffs(std::size_t order, std::vector<Eigen::MatrixXcd> blocks);

    /// Builds the coefficient table from the nonzero blocks of a trigonometric
    /// polynomial sum_k B_k e^{ik theta}.
    static BlockFourierCoeffs from_blocks(const std::map<long, Eigen::MatrixXcd>& blocks);

    std::size_t order() const noexcept { return order_; }
    std::size_t block_size() const noexcept { return static_cast<std::size_t>(blocks_.front().rows()); }
    const Eigen::MatrixXcd& operator[](long k) const;
    /// max over k of |B_{-k} - B_k^*| entrywise.
    double hermitian_defect() const;

private:
    std::size_t order_;
    std::vector<Eigen::MatrixXcd> blocks_;
};

/// Entrywise quadrature of a k x k generating function on [-pi, pi].
BlockFourierCoeffs block_fourier_coeffs(const MatrixSymbol::Eval& f, std::size_t k, std::size_t order,
                                        const std::vector<double>& breakpoints = {},
                                        const QuadratureOptions& opts = {});

/// Block (I, J) = B_{I-J}; size n k. Same truncation rule as toeplitz_build.
Eigen::MatrixXcd block_toeplitz_build(const BlockFourierCoeffs& c, std::size_t n, bool allow_truncation = false);

}  // namespace specdist
