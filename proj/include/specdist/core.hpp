#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specdist {

using Point = std::vector<double>;
using Dims = std::vector<std::size_t>;
/// Multi-index with 1-based entries, i = (i_1, ..., i_d) with 1 <= i_j <= n_j.
using MultiIndex = std::vector<std::size_t>;
using Membership = std::function<bool(std::span<const double>)>;

/// Closed d-dimensional rectangle [a, b].
class Rect {
public:
    Rect(std::vector<double> lo, std::vector<double> hi);

    static Rect interval(double a, double b) { return Rect({a}, {b}); }

    std::size_t dim() const noexcept { return lo_.size(); }
    const std::vector<double>& lo() const noexcept { return lo_; }
    const std::vector<double>& hi() const noexcept { return hi_; }
    bool contains(std::span<const double> x) const;

private:
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// N(n) = n_1 * ... * n_d.
std::size_t grid_size(const Dims& dims);
/// Lexicographic position (0-based) of a 1-based multi-index; the last
/// coordinate varies fastest.
std::size_t flat_index(const Dims& dims, const MultiIndex& index);
MultiIndex multi_index(const Dims& dims, std::size_t flat);

/// A point family in a rectangle indexed lexicographically by i = 1..n.
/// Nothing forces the points to be close to the uniform grid; grid_deviation
/// measures how far they are.
class AUGrid {
public:
    AUGrid(Rect rect, Dims dims, std::vector<Point> points);

    const Rect& rect() const noexcept { return rect_; }
    const Dims& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Point& point(std::size_t flat) const { return points_.at(flat); }
    const std::vector<Point>& points() const noexcept { return points_; }

    /// a + i(b - a)/n for the multi-index at lexicographic position `flat`.
    Point uniform_point(std::size_t flat) const;
    /// Coordinate `axis` of every point, in index order.
    std::vector<double> coordinates(std::size_t axis = 0) const;

private:
    Rect rect_;
    Dims dims_;
    std::vector<Point> points_;
};

AUGrid make_uniform_grid(const Rect& rect, const Dims& dims);
/// One-dimensional grid in [a, b] with the given points, in the given order.
AUGrid make_grid_1d(double a, double b, std::vector<double> points);

/// m(G): max over i of the infinity-norm distance between point i and
/// a + i(b - a)/n.
double grid_deviation(const AUGrid& grid);

/// I_n(Omega): multi-indices whose points satisfy `membership`, in
/// lexicographic order.
std::vector<MultiIndex> restrict_indices(const AUGrid& grid, const Membership& membership);

/// Upper bound floor((beta - alpha)/h) + 1 on the number of points of
/// {x0 + i h : i in Z} inside [alpha, beta]. The quotient gets a 1e-12
/// relative slack so that rounding cannot push it below an integer.
std::size_t count_grid_in_interval(double x0, double h, double alpha, double beta);

/// Finite multiset of finite reals kept in insertion order.
class RealMultiset {
public:
    explicit RealMultiset(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::vector<double> sorted() const;

private:
    std::vector<double> values_;
};

struct Interval {
    double lo;
    double hi;
};

/// Finite union of disjoint closed intervals kept sorted; overlapping or
/// touching inputs are merged on construction.
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> intervals);

    static IntervalUnion single(double lo, double hi) { return IntervalUnion({{lo, hi}}); }

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }
    bool contains(double x) const;
    /// Closed eps-expansion: every interval widened by eps on both sides.
    IntervalUnion expanded(double eps) const;
    double lower() const;
    double upper() const;

private:
    std::vector<Interval> intervals_;
};

/// Real function on a subset Omega of a rectangle.
///
/// `membership` selects Omega (empty means the whole rectangle). The declared
/// bounds play the role of inf and sup over Omega. `breakpoints` lists the
/// coordinates along the first axis where the function or its derivatives
/// jump; quadrature splits its panels there. A declared essential range, if
/// present, takes precedence over a sampled one.
struct ScalarSymbol {
    Rect domain;
    std::function<double(std::span<const double>)> eval;
    double declared_inf = 0.0;
    double declared_sup = 0.0;
    Membership membership;
    std::vector<double> breakpoints;
    std::optional<IntervalUnion> declared_range;

    double operator()(std::span<const double> x) const { return eval(x); }
    double operator()(double x) const { return eval(std::span<const double>(&x, 1)); }
    bool in_omega(std::span<const double> x) const;

    /// Same function viewed on another rectangle (e.g. an even symbol on
    /// [0, pi] instead of [-pi, pi]).
    ScalarSymbol on(Rect rect, double inf, double sup) const;

    static ScalarSymbol univariate(double a, double b, std::function<double(double)> f,
                                   double inf, double sup,
                                   std::vector<double> breakpoints = {});
};

/// Throws std::invalid_argument if any sample on a uniform grid with
/// `per_axis` points per axis leaves [declared_inf, declared_sup] (slack tol)
/// or is not finite.
void check_declared_bounds(const ScalarSymbol& f, std::size_t per_axis, double tol = 1e-12);

/// k x k Hermitian-matrix-valued function on [a, b].
class MatrixSymbol {
public:
    using Eval = std::function<Eigen::MatrixXcd(double)>;

    MatrixSymbol(double a, double b, std::size_t k, Eval eval);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t size() const noexcept { return k_; }

    /// Evaluates and checks Hermitian symmetry to 1e-12 entrywise.
    Eigen::MatrixXcd operator()(double theta) const;
    /// lambda_1(f(theta)) <= ... <= lambda_k(f(theta)).
    std::vector<double> branches(double theta) const;
    /// 0-based branch j.
    double branch(std::size_t j, double theta) const;

private:
    double a_;
    double b_;
    std::size_t k_;
    Eval eval_;
};

double max_hermitian_defect(const Eigen::MatrixXcd& a);

}  // namespace specdist
