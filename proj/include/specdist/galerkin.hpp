#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specdist/eig.hpp"

namespace specdist {

/// B-spline basis of degree p over an arbitrary non-decreasing knot vector.
/// Function i (0-based) is supported on [t_i, t_{i+p+1}].
class BSplineBasis {
public:
    BSplineBasis(std::size_t degree, std::vector<double> knots);

    /// Open knot vector on [0, 1] with n elements: 0 and 1 repeated p + 1
    /// times, each interior knot i/n repeated p - k times (C^k smoothness).
    static BSplineBasis open_uniform(std::size_t p, std::size_t k, std::size_t n);
    /// Knots 0, 1, ..., eta on [0, eta], each repeated p - k times, with
    /// eta = ceil((p + 1)/(p - k)). The first p - k functions are the
    /// reference B-splines.
    static BSplineBasis reference(std::size_t p, std::size_t k);

    std::size_t degree() const noexcept { return p_; }
    const std::vector<double>& knots() const noexcept { return t_; }
    /// Number of functions, boundary ones included.
    std::size_t count() const noexcept { return t_.size() - p_ - 1; }
    double support_lo(std::size_t i) const;
    double support_hi(std::size_t i) const;

    /// Cox-de Boor recursion; right-continuous, except that the last knot
    /// is included in the last non-empty span.
    double eval(std::size_t i, double x) const;
    double deriv(std::size_t i, double x) const;

private:
    double eval_degree(std::size_t i, std::size_t p, double x) const;

    std::size_t p_;
    std::vector<double> t_;
};

double bspline_eval(const BSplineBasis& basis, std::size_t i, double x);
double bspline_deriv(const BSplineBasis& basis, std::size_t i, double x);

/// n(p - k) + k - 1: dimension of the spline space once the two boundary
/// functions are dropped.
std::size_t spline_dim(std::size_t p, std::size_t k, std::size_t n);

/// Blocks K^[l], M^[l] for l = 0..eta-1, each (p - k) x (p - k):
///   K^[l](r, s) = int beta_s'(t) beta_r'(t - l) dt,
///   M^[l](r, s) = int beta_s(t)  beta_r(t - l)  dt.
struct ReferenceBlocks {
    std::size_t p = 0;
    std::size_t k = 0;
    std::size_t eta = 0;
    std::vector<Eigen::MatrixXd> K;
    std::vector<Eigen::MatrixXd> M;
};

ReferenceBlocks reference_blocks(std::size_t p, std::size_t k);

/// f_{p,k}(theta) = sum_l K^[l] e^{i l theta} with K^[-l] = (K^[l])^T.
Eigen::MatrixXcd symbol_f(const ReferenceBlocks& blocks, double theta);
Eigen::MatrixXcd symbol_f(std::size_t p, std::size_t k, double theta);
/// h_{p,k}(theta), same construction from the M blocks.
Eigen::MatrixXcd symbol_h(const ReferenceBlocks& blocks, double theta);
Eigen::MatrixXcd symbol_h(std::size_t p, std::size_t k, double theta);
/// Ascending eigenvalues of e_{p,k}(theta) = h_{p,k}(theta)^{-1} f_{p,k}(theta).
/// Throws InternalError if h is not positive definite.
std::vector<double> symbol_e_branches(const ReferenceBlocks& blocks, double theta);
std::vector<double> symbol_e_branches(std::size_t p, std::size_t k, double theta);

struct StiffnessMass {
    Eigen::MatrixXd K;
    Eigen::MatrixXd M;
};

/// Galerkin stiffness and mass matrices of the open uniform basis with the
/// first and last functions removed. Gauss-Legendre with p + 1 nodes per
/// element, which is exact. Requires n >= 2.
StiffnessMass assemble_KM(std::size_t n, std::size_t p, std::size_t k);

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    Eigen::MatrixXd dense() const;
};

/// Central differences for -(a u')' on the grid i/(n+1):
/// diag_i = a((i - 1/2)/(n+1)) + a((i + 1/2)/(n+1)), offdiag_i = -a((i + 1/2)/(n+1)).
Tridiagonal fd_matrix(const std::function<double(double)>& a, std::size_t n);

/// The n x n biquadratic C^1 stiffness and (scaled) mass matrices.
Eigen::MatrixXd iga_stiffness_1d(std::size_t n);
Eigen::MatrixXd iga_mass_1d(std::size_t n);
/// K_n (x) M_n + M_n (x) K_n. Requires n >= 3.
Eigen::MatrixXd iga_2d_matrix(std::size_t n);

/// a(m) = m + floor(sqrt(8m)), m >= 1.
long long seq_a(long long m);
/// Minimum alpha >= 1 with p in [a(1)+...+a(alpha), a(1)+...+a(alpha+1)].
/// Requires p >= 3.
long long alpha(long long p);
/// Minimum alpha >= 1 with p <= a(1)+...+a(alpha) + 2. This is the index
/// for which the k = 1 mass-matrix grids reproduce the spectrum; it agrees
/// with alpha(p) for p = 3, 4, 5, 10, 11, 17, 18, 26, 27, ... and is one
/// larger elsewhere (first at p = 6).
/// Requires p >= 3.
long long mass_alpha(long long p);

enum class GridKind { Full, NoZero, NoPi, Interior };

std::string to_string(GridKind kind);
/// Theta_n = {i pi/n : i = 0..n}; NoZero drops 0, NoPi drops pi, Interior
/// drops both.
std::vector<double> grid_points(GridKind kind, std::size_t n);
std::size_t grid_count(GridKind kind, std::size_t n);

/// Grid for branch j (1-based) in the exact eigenvalue formula of nM_{n,p,k}.
GridKind grid_assign_M(std::size_t p, std::size_t k, std::size_t j);
/// Grid for branch j (1-based) in the exact eigenvalue formula of n^{-2}L_{n,p,k}.
GridKind grid_assign_L(std::size_t p, std::size_t k, std::size_t j);

/// Matrix families whose spectra are given by symbol branches on Theta grids:
/// n^{-1}K (branches of f), nM (branches of h), n^{-2}L = (nM)^{-1} n^{-1}K
/// (branches of e).
enum class Family { K, M, L };

std::string to_string(Family family);
Spectrum family_spectrum(Family family, std::size_t n, std::size_t p, std::size_t k);

using BranchFn = std::function<std::vector<double>(double)>;
BranchFn family_branches(Family family, std::size_t p, std::size_t k);

struct FormulaCheck {
    bool pass = false;
    double max_error = 0.0;
};

/// Sorted-matches the spectrum against {branch_j(theta) : theta in the grid
/// assigned to j}. Throws std::invalid_argument if the grid sizes do not add
/// up to the spectrum size.
FormulaCheck verify_eig_formula(const Spectrum& spectrum, const BranchFn& branches,
                                const std::vector<GridKind>& assignment, std::size_t n, double tol);

/// First assignment in lexicographic order (Full < NoZero < NoPi < Interior
/// per branch) whose grid sizes add up to the spectrum size and which passes
/// verify_eig_formula at `tol`.
std::optional<std::vector<GridKind>> infer_grid_assignment(const Spectrum& spectrum, const BranchFn& branches,
                                                           std::size_t p, std::size_t k, std::size_t n, double tol);

}  // namespace specdist
