#include "specdist/galerkin.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "specdist/match.hpp"

namespace specdist {

Eigen::MatrixXd Tridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = diag[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
        a(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
    return a;
}

Tridiagonal fd_matrix(const std::function<double(double)>& a, std::size_t n) {
    if (n == 0) throw std::invalid_argument("fd_matrix: need n >= 1");
    const double h = 1.0 / static_cast<double>(n + 1);
    Tridiagonal t;
    t.diag.resize(n);
    t.offdiag.resize(n - 1);
    for (std::size_t i = 1; i <= n; ++i) {
        const double left = a((static_cast<double>(i) - 0.5) * h);
        const double right = a((static_cast<double>(i) + 0.5) * h);
        t.diag[i - 1] = left + right;
        if (i < n) t.offdiag[i - 1] = -right;
    }
    return t;
}

namespace {

// Banded symmetric matrix from a centre stencil (c0, c1, c2) with the
// first/last diagonal entry and the first/last c1 entry overridden.
Eigen::MatrixXd pentadiagonal(std::size_t n, double c0, double c1, double c2, double corner, double corner_off) {
    if (n < 3) throw std::invalid_argument("IgA matrices need n >= 3");
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, i) = c0;
        if (i + 1 < m) a(i, i + 1) = a(i + 1, i) = c1;
        if (i + 2 < m) a(i, i + 2) = a(i + 2, i) = c2;
    }
    a(0, 0) = a(m - 1, m - 1) = corner;
    a(0, 1) = a(1, 0) = corner_off;
    a(m - 2, m - 1) = a(m - 1, m - 2) = corner_off;
    return a;
}

}  // namespace

Eigen::MatrixXd iga_stiffness_1d(std::size_t n) { return pentadiagonal(n, 6.0, -2.0, -1.0, 8.0, -1.0) / 6.0; }

Eigen::MatrixXd iga_mass_1d(std::size_t n) { return pentadiagonal(n, 66.0, 26.0, 1.0, 40.0, 25.0) / 120.0; }

Eigen::MatrixXd iga_2d_matrix(std::size_t n) {
    if (n < 3) throw std::invalid_argument("iga_2d_matrix: need n >= 3");
    const Eigen::MatrixXd k = iga_stiffness_1d(n);
    const Eigen::MatrixXd m = iga_mass_1d(n);
    Eigen::MatrixXd a = Eigen::kroneckerProduct(k, m);
    a += Eigen::kroneckerProduct(m, k);
    return a;
}

namespace {

long long isqrt(long long x) {
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

}  // namespace

long long seq_a(long long m) {
    if (m < 1) throw std::invalid_argument("seq_a: need m >= 1");
    return m + isqrt(8 * m);
}

long long alpha(long long p) {
    if (p < 3) throw std::invalid_argument("alpha: need p >= 3");
    long long a = 1;
    long long s = seq_a(1);
    while (true) {
        const long long next = s + seq_a(a + 1);
        if (s <= p && p <= next) return a;
        s = next;
        ++a;
    }
}

long long mass_alpha(long long p) {
    if (p < 3) throw std::invalid_argument("mass_alpha: need p >= 3");
    long long a = 1;
    long long s = seq_a(1);
    while (p > s + 2) s += seq_a(++a);
    return a;
}

std::string to_string(GridKind kind) {
    switch (kind) {
        case GridKind::Full: return "FULL";
        case GridKind::NoZero: return "NO_ZERO";
        case GridKind::NoPi: return "NO_PI";
        case GridKind::Interior: return "INTERIOR";
    }
    return "?";
}

std::vector<double> grid_points(GridKind kind, std::size_t n) {
    if (n == 0) throw std::invalid_argument("grid_points: need n >= 1");
    const bool zero = kind == GridKind::Full || kind == GridKind::NoPi;
    const bool pi = kind == GridKind::Full || kind == GridKind::NoZero;
    std::vector<double> out;
    for (std::size_t i = zero ? 0 : 1; i <= (pi ? n : n - 1); ++i) {
        out.push_back(i == n ? std::numbers::pi : static_cast<double>(i) * std::numbers::pi / static_cast<double>(n));
    }
    return out;
}

std::size_t grid_count(GridKind kind, std::size_t n) {
    switch (kind) {
        case GridKind::Full: return n + 1;
        case GridKind::NoZero:
        case GridKind::NoPi: return n;
        case GridKind::Interior: return n - 1;
    }
    return 0;
}

namespace {

void check_pkj(std::size_t p, std::size_t k, std::size_t j, const char* who) {
    if (p < 1 || k > 1 || k >= p) throw std::invalid_argument(std::string(who) + ": need p >= 1 and 0 <= k <= min(1, p - 1)");
    if (j < 1 || j > p - k) throw std::invalid_argument(std::string(who) + ": branch index out of range");
}

}  // namespace

GridKind grid_assign_M(std::size_t p, std::size_t k, std::size_t j) {
    check_pkj(p, k, j, "grid_assign_M");
    const bool odd = (p + j) % 2 == 1;
    if (k == 0) {
        if (j == p) return GridKind::Interior;
        return odd ? GridKind::NoZero : GridKind::NoPi;
    }
    if (p == 2) return GridKind::NoZero;
    const auto pivot = static_cast<std::size_t>(static_cast<long long>(p) - mass_alpha(static_cast<long long>(p)) - 1);
    if (j == pivot) return GridKind::Full;
    if (j == p - 1) return GridKind::Interior;
    if (j < pivot) return odd ? GridKind::NoZero : GridKind::NoPi;
    return odd ? GridKind::NoPi : GridKind::NoZero;
}

GridKind grid_assign_L(std::size_t p, std::size_t k, std::size_t j) {
    check_pkj(p, k, j, "grid_assign_L");
    if ((p + j) % 2 == 0) return GridKind::Interior;
    return j > 1 ? GridKind::Full : GridKind::NoZero;
}

std::string to_string(Family family) {
    switch (family) {
        case Family::K: return "K";
        case Family::M: return "M";
        case Family::L: return "L";
    }
    return "?";
}

Spectrum family_spectrum(Family family, std::size_t n, std::size_t p, std::size_t k) {
    const StiffnessMass km = assemble_KM(n, p, k);
    const double nd = static_cast<double>(n);
    switch (family) {
        case Family::K: return eig_sym(Eigen::MatrixXd(km.K / nd));
        case Family::M: return eig_sym(Eigen::MatrixXd(km.M * nd));
        case Family::L: return eig_gen_sym_def(Eigen::MatrixXd(km.K / nd), Eigen::MatrixXd(km.M * nd));
    }
    throw std::invalid_argument("family_spectrum: unknown family");
}

BranchFn family_branches(Family family, std::size_t p, std::size_t k) {
    auto blocks = std::make_shared<const ReferenceBlocks>(reference_blocks(p, k));
    switch (family) {
        case Family::K:
            return [blocks](double t) { return eig_sym(symbol_f(*blocks, t)).values; };
        case Family::M:
            return [blocks](double t) { return eig_sym(symbol_h(*blocks, t)).values; };
        case Family::L:
            return [blocks](double t) { return symbol_e_branches(*blocks, t); };
    }
    throw std::invalid_argument("family_branches: unknown family");
}

namespace {

// Branch values at every point of Theta_n; row i is theta = i pi/n.
std::vector<std::vector<double>> tabulate(const BranchFn& branches, std::size_t n) {
    std::vector<std::vector<double>> table;
    table.reserve(n + 1);
    for (double t : grid_points(GridKind::Full, n)) table.push_back(branches(t));
    return table;
}

FormulaCheck check_table(const Spectrum& spectrum, const std::vector<std::vector<double>>& table,
                         const std::vector<GridKind>& assignment, std::size_t n, double tol) {
    std::vector<double> samples;
    samples.reserve(spectrum.size());
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        const GridKind kind = assignment[j];
        const bool zero = kind == GridKind::Full || kind == GridKind::NoPi;
        const bool pi = kind == GridKind::Full || kind == GridKind::NoZero;
        for (std::size_t i = zero ? 0 : 1; i <= (pi ? n : n - 1); ++i) {
            if (table[i].size() != assignment.size()) {
                throw std::invalid_argument("verify_eig_formula: assignment length differs from branch count");
            }
            samples.push_back(table[i][j]);
        }
    }
    if (samples.size() != spectrum.size()) {
        throw std::invalid_argument("verify_eig_formula: grids hold " + std::to_string(samples.size()) +
                                    " points but the spectrum has " + std::to_string(spectrum.size()) + " values");
    }
    const double err = sorted_match(samples, spectrum.values).m_n;
    return {err <= tol, err};
}

}  // namespace

FormulaCheck verify_eig_formula(const Spectrum& spectrum, const BranchFn& branches,
                                const std::vector<GridKind>& assignment, std::size_t n, double tol) {
    if (n == 0) throw std::invalid_argument("verify_eig_formula: need n >= 1");
    return check_table(spectrum, tabulate(branches, n), assignment, n, tol);
}

std::optional<std::vector<GridKind>> infer_grid_assignment(const Spectrum& spectrum, const BranchFn& branches,
                                                           std::size_t p, std::size_t k, std::size_t n, double tol) {
    if (k >= p) throw std::invalid_argument("infer_grid_assignment: need k < p");
    if (n == 0) throw std::invalid_argument("infer_grid_assignment: need n >= 1");
    const std::size_t m = p - k;
    const auto table = tabulate(branches, n);
    constexpr GridKind order[] = {GridKind::Full, GridKind::NoZero, GridKind::NoPi, GridKind::Interior};
    const auto target = static_cast<long long>(spectrum.size());
    const auto nn = static_cast<long long>(n);

    std::vector<GridKind> current;
    current.reserve(m);
    std::optional<std::vector<GridKind>> found;
    // Depth-first in lexicographic order; a prefix survives only if the
    // remaining branches can still bring the point count to the target.
    std::function<void(long long)> search = [&](long long count) {
        if (found) return;
        const auto left = static_cast<long long>(m - current.size());
        if (left == 0) {
            if (count == target && check_table(spectrum, table, current, n, tol).pass) found = current;
            return;
        }
        for (GridKind kind : order) {
            const long long c = count + static_cast<long long>(grid_count(kind, n));
            const long long rest = left - 1;
            if (c + rest * (nn - 1) > target || c + rest * (nn + 1) < target) continue;
            current.push_back(kind);
            search(c);
            current.pop_back();
            if (found) return;
        }
    };
    search(0);
    return found;
}

}  // namespace specdist
