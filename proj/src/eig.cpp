#include "specdist/eig.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <lapacke.h>

#include "specdist/errors.hpp"

namespace specdist {

namespace {

constexpr double kHermitianTol = 1e-10;

template <typename Matrix>
void require_hermitian(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (a.size() > 0 && (a - a.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
    }
}

template <typename Matrix>
Spectrum solve_hermitian(const Matrix& a) {
    if (a.rows() == 0) return {};
    // Symmetrize so round-off in the input cannot leak into the solver.
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_sym: eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    Spectrum s{{ev.data(), ev.data() + ev.size()}};
    std::sort(s.values.begin(), s.values.end());
    return s;
}

template <typename Matrix>
Spectrum reduce_and_solve(const Matrix& k, const Matrix& m) {
    require_hermitian(k, "eig_gen_sym_def");
    require_hermitian(m, "eig_gen_sym_def");
    if (k.rows() != m.rows()) throw std::invalid_argument("eig_gen_sym_def: K and M differ in size");
    if (k.rows() == 0) return {};
    const Eigen::LLT<Matrix> llt(0.5 * (m + m.adjoint()));
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("eig_gen_sym_def: M is not positive definite");
    const auto l = llt.matrixL();
    const Matrix y = l.solve(k);                // L^{-1} K
    const Matrix c = l.solve(Matrix(y.adjoint()));  // L^{-1} K L^{-H}
    return solve_hermitian(c);
}

}  // namespace

Spectrum eig_sym(const Eigen::MatrixXd& a) {
    require_hermitian(a, "eig_sym");
    return solve_hermitian(a);
}

Spectrum eig_sym(const Eigen::MatrixXcd& a) {
    require_hermitian(a, "eig_sym");
    if (a.size() > 0 && a.imag().cwiseAbs().maxCoeff() == 0.0) return solve_hermitian(Eigen::MatrixXd(a.real()));
    return solve_hermitian(a);
}

Spectrum eig_sym_tridiag(std::span<const double> diag, std::span<const double> offdiag) {
    const std::size_t n = diag.size();
    if (n == 0) {
        if (!offdiag.empty()) throw std::invalid_argument("eig_sym_tridiag: off-diagonal given without diagonal");
        return {};
    }
    if (offdiag.size() != n - 1) {
        throw std::invalid_argument("eig_sym_tridiag: expected " + std::to_string(n - 1) + " off-diagonal entries");
    }
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.push_back(0.0);  // keeps data() valid for n = 1
    const lapack_int info = LAPACKE_dsterf(static_cast<lapack_int>(n), d.data(), e.data());
    if (info != 0) throw std::runtime_error("eig_sym_tridiag: dsterf failed with info " + std::to_string(info));
    return Spectrum{std::move(d)};
}

Spectrum eig_gen_sym_def(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m) { return reduce_and_solve(k, m); }

Spectrum eig_gen_sym_def(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& m) { return reduce_and_solve(k, m); }

}  // namespace specdist
