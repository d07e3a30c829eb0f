#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specdist/core.hpp"
#include "specdist/eig.hpp"
#include "specdist/galerkin.hpp"
#include "specdist/match.hpp"
#include "specdist/split.hpp"

namespace specdist {

/// M_n of T_n(f) against f(i pi/(n+1)), i = 1..n, for a real generating
/// function f on [-pi, pi] that is even (sampled on [0, pi]). Fourier
/// coefficients are computed once up to max(ns) - 1.
std::vector<MnRow> toeplitz_mn_table(const ScalarSymbol& f, const std::vector<std::size_t>& ns);

/// M_n of the finite-difference matrix for coefficient `coef` against
/// a(x)(2 - 2cos theta) on the sqrt(n) x sqrt(n) uniform grid of
/// [0, 1] x [0, pi]. Every n must be a perfect square.
std::vector<MnRow> fd_mn_table(const std::string& coef, const std::vector<std::size_t>& ns);

/// max_i |lambda_i(T_n(a + b cos)) - (a + b cos(i pi/(n+1)))| after sorting.
double cosine_exactness(double a, double b, std::size_t n);

struct RangedError {
    double max_error = 0.0;
    double min_eig = 0.0;
    double max_eig = 0.0;
};

/// Eigenvalues of K_n (x) M_n + M_n (x) K_n against the symbol on
/// {(i1 pi/n, i2 pi/n)}.
RangedError iga_2d_exactness(std::size_t n);

/// The (2n-1) x (2n-1) quadratic C^0 stiffness matrix n^{-1}K_{n,2,0}, built as
/// the 2n x 2n block Toeplitz matrix of its symbol minus the last row and
/// column.
Eigen::MatrixXd quadratic_c0_matrix(std::size_t n);
/// Its eigenvalues against lower(i pi/n), i = 1..n, and upper(i pi/n),
/// i = 1..n-1.
double quadratic_c0_exactness(std::size_t n);

/// M_n for the indicator of {1} sampled on {i/n} against n zero eigenvalues.
double indicator_mn(std::size_t n);

struct SplitDemo {
    std::size_t n = 0;
    std::vector<std::size_t> cardinalities;
    std::vector<double> branch_mn;
    std::size_t initial_bad = 0;
};

/// Splits the spectrum of quadratic_c0_matrix(n) into the two branches and
/// matches each part against its branch on {i pi/n}.
SplitDemo quadratic_c0_split(std::size_t n);

struct FamilyCheck {
    Family family = Family::M;
    std::size_t p = 0;
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<GridKind> assignment;  // empty if inference failed
    FormulaCheck check;
};

/// M and L use the stated grid assignment; K uses the inferred one.
FamilyCheck check_family(Family family, std::size_t p, std::size_t k, std::size_t n, double tol);

std::string assignment_string(const std::vector<GridKind>& assignment);

/// Named experiment with string parameters, as given on the command line.
struct ExperimentSpec {
    std::string name;
    std::map<std::string, std::string> params;
};

struct ExperimentResult {
    /// 0 success, 1 tolerance failure, 2 usage error.
    int exit_code = 0;
    std::string csv;
    /// Failing rows or the usage error.
    std::vector<std::string> messages;
};

/// Registered experiment names.
const std::vector<std::string>& experiment_names();

ExperimentResult run(const ExperimentSpec& spec);

}  // namespace specdist
