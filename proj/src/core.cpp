#include "specdist/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace specdist {

Rect::Rect(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty() || lo_.size() != hi_.size()) {
        throw std::invalid_argument("Rect: bounds must be non-empty and of equal dimension");
    }
    for (std::size_t j = 0; j < lo_.size(); ++j) {
        if (!(lo_[j] <= hi_[j])) {
            throw std::invalid_argument("Rect: lower bound exceeds upper bound on axis " + std::to_string(j));
        }
    }
}

bool Rect::contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
        if (x[j] < lo_[j] || x[j] > hi_[j]) return false;
    }
    return true;
}

std::size_t grid_size(const Dims& dims) {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
}

std::size_t flat_index(const Dims& dims, const MultiIndex& index) {
    if (index.size() != dims.size()) throw std::invalid_argument("flat_index: dimension mismatch");
    std::size_t flat = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (index[j] < 1 || index[j] > dims[j]) throw std::out_of_range("flat_index: index out of range");
        flat = flat * dims[j] + (index[j] - 1);
    }
    return flat;
}

MultiIndex multi_index(const Dims& dims, std::size_t flat) {
    if (flat >= grid_size(dims)) throw std::out_of_range("multi_index: flat index out of range");
    MultiIndex index(dims.size());
    for (std::size_t j = dims.size(); j-- > 0;) {
        index[j] = flat % dims[j] + 1;
        flat /= dims[j];
    }
    return index;
}

AUGrid::AUGrid(Rect rect, Dims dims, std::vector<Point> points)
    : rect_(std::move(rect)), dims_(std::move(dims)), points_(std::move(points)) {
    if (dims_.size() != rect_.dim()) throw std::invalid_argument("AUGrid: dims and rect dimension differ");
    for (auto d : dims_) {
        if (d == 0) throw std::invalid_argument("AUGrid: dims must be positive");
    }
    if (points_.size() != grid_size(dims_)) {
        throw std::invalid_argument("AUGrid: expected " + std::to_string(grid_size(dims_)) + " points, got " +
                                    std::to_string(points_.size()));
    }
    for (const auto& p : points_) {
        if (p.size() != rect_.dim()) throw std::invalid_argument("AUGrid: point of wrong dimension");
    }
}

Point AUGrid::uniform_point(std::size_t flat) const {
    auto idx = multi_index(dims_, flat);
    Point p(dims_.size());
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        const double a = rect_.lo()[j];
        const double b = rect_.hi()[j];
        // Last index lands exactly on b.
        p[j] = idx[j] == dims_[j] ? b : a + static_cast<double>(idx[j]) * (b - a) / static_cast<double>(dims_[j]);
    }
    return p;
}

std::vector<double> AUGrid::coordinates(std::size_t axis) const {
    if (axis >= rect_.dim()) throw std::out_of_range("AUGrid::coordinates: bad axis");
    std::vector<double> out(points_.size());
    std::transform(points_.begin(), points_.end(), out.begin(), [axis](const Point& p) { return p[axis]; });
    return out;
}

AUGrid make_uniform_grid(const Rect& rect, const Dims& dims) {
    if (dims.size() != rect.dim()) throw std::invalid_argument("make_uniform_grid: dims and rect dimension differ");
    for (auto d : dims) {
        if (d == 0) throw std::invalid_argument("make_uniform_grid: dims must be positive");
    }
    // Build through a temporary grid of the right shape to reuse uniform_point.
    const std::size_t total = grid_size(dims);
    std::vector<Point> pts(total, Point(rect.dim(), 0.0));
    AUGrid shape(rect, dims, pts);
    for (std::size_t f = 0; f < total; ++f) pts[f] = shape.uniform_point(f);
    return AUGrid(rect, dims, std::move(pts));
}

AUGrid make_grid_1d(double a, double b, std::vector<double> points) {
    const std::size_t n = points.size();
    std::vector<Point> pts;
    pts.reserve(n);
    for (double x : points) pts.push_back({x});
    return AUGrid(Rect::interval(a, b), {n}, std::move(pts));
}

double grid_deviation(const AUGrid& grid) {
    double m = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Point u = grid.uniform_point(f);
        const Point& p = grid.point(f);
        for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(p[j] - u[j]));
    }
    return m;
}

std::vector<MultiIndex> restrict_indices(const AUGrid& grid, const Membership& membership) {
    std::vector<MultiIndex> out;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        if (!membership || membership(grid.point(f))) out.push_back(multi_index(grid.dims(), f));
    }
    return out;
}

std::size_t count_grid_in_interval(double /*x0*/, double h, double alpha, double beta) {
    if (!(h > 0.0)) throw std::invalid_argument("count_grid_in_interval: step must be positive");
    if (!(alpha <= beta)) throw std::invalid_argument("count_grid_in_interval: alpha must not exceed beta");
    // Endpoints that sit on grid points can make the quotient fall a few ulps
    // short of an integer; the relative slack keeps the bound an upper bound.
    const double q = (beta - alpha) / h;
    return static_cast<std::size_t>(std::floor(q + 1e-12 * std::max(1.0, q))) + 1;
}

RealMultiset::RealMultiset(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("RealMultiset: must contain at least one value");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("RealMultiset: values must be finite");
    }
}

std::vector<double> RealMultiset::sorted() const {
    auto s = values_;
    std::stable_sort(s.begin(), s.end());
    return s;
}

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!(iv.lo <= iv.hi)) throw std::invalid_argument("IntervalUnion: interval with lo > hi");
    }
    std::sort(intervals.begin(), intervals.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (const auto& iv : intervals) {
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
            intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
        } else {
            intervals_.push_back(iv);
        }
    }
}

bool IntervalUnion::contains(double x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return x <= it->hi;
}

IntervalUnion IntervalUnion::expanded(double eps) const {
    if (eps < 0.0) throw std::invalid_argument("IntervalUnion::expanded: eps must be non-negative");
    std::vector<Interval> out;
    out.reserve(intervals_.size());
    for (const auto& iv : intervals_) out.push_back({iv.lo - eps, iv.hi + eps});
    return IntervalUnion(std::move(out));
}

double IntervalUnion::lower() const {
    if (empty()) throw std::logic_error("IntervalUnion::lower: empty union");
    return intervals_.front().lo;
}

double IntervalUnion::upper() const {
    if (empty()) throw std::logic_error("IntervalUnion::upper: empty union");
    return intervals_.back().hi;
}

bool ScalarSymbol::in_omega(std::span<const double> x) const {
    return domain.contains(x) && (!membership || membership(x));
}

ScalarSymbol ScalarSymbol::on(Rect rect, double inf, double sup) const {
    ScalarSymbol s = *this;
    s.domain = std::move(rect);
    s.declared_inf = inf;
    s.declared_sup = sup;
    return s;
}

ScalarSymbol ScalarSymbol::univariate(double a, double b, std::function<double(double)> f, double inf,
                                      double sup, std::vector<double> breakpoints) {
    ScalarSymbol s{Rect::interval(a, b),
                   [f = std::move(f)](std::span<const double> x) { return f(x[0]); },
                   inf,
                   sup,
                   {},
                   std::move(breakpoints),
                   std::nullopt};
    return s;
}

void check_declared_bounds(const ScalarSymbol& f, std::size_t per_axis, double tol) {
    Dims dims(f.domain.dim(), per_axis);
    const auto grid = make_uniform_grid(f.domain, dims);
    for (const auto& p : grid.points()) {
        if (!f.in_omega(p)) continue;
        const double v = f(p);
        if (!std::isfinite(v)) throw std::invalid_argument("symbol returned a non-finite value");
        if (v < f.declared_inf - tol || v > f.declared_sup + tol) {
            throw std::invalid_argument("symbol value " + std::to_string(v) + " outside declared bounds");
        }
    }
}

MatrixSymbol::MatrixSymbol(double a, double b, std::size_t k, Eval eval)
    : a_(a), b_(b), k_(k), eval_(std::move(eval)) {
    if (!(a <= b)) throw std::invalid_argument("MatrixSymbol: a must not exceed b");
    if (k == 0) throw std::invalid_argument("MatrixSymbol: size must be positive");
}

double max_hermitian_defect(const Eigen::MatrixXcd& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd MatrixSymbol::operator()(double theta) const {
    Eigen::MatrixXcd m = eval_(theta);
    if (static_cast<std::size_t>(m.rows()) != k_ || static_cast<std::size_t>(m.cols()) != k_) {
        throw std::invalid_argument("MatrixSymbol: evaluation has wrong size");
    }
    if (max_hermitian_defect(m) > 1e-12) throw std::invalid_argument("MatrixSymbol: value is not Hermitian");
    return m;
}

std::vector<double> MatrixSymbol::branches(double theta) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((*this)(theta), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double MatrixSymbol::branch(std::size_t j, double theta) const {
    if (j >= k_) throw std::out_of_range("MatrixSymbol::branch: index out of range");
    return branches(theta)[j];
}

}  // namespace specdist
