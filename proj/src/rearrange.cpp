#include "specdist/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specdist {

QuantileInterpolant::QuantileInterpolant(std::vector<double> sorted_samples) : samples_(std::move(sorted_samples)) {
    if (samples_.size() < 2) throw std::invalid_argument("QuantileInterpolant: need at least two samples");
    if (!std::is_sorted(samples_.begin(), samples_.end())) {
        throw std::invalid_argument("QuantileInterpolant: samples must be ascending");
    }
}

double QuantileInterpolant::node(std::size_t l) const {
    return static_cast<double>(l) / static_cast<double>(intervals());
}

double QuantileInterpolant::operator()(double y) const {
    const double w = static_cast<double>(intervals());
    const double t = std::clamp(y, 0.0, 1.0) * w;
    const auto l = std::min(static_cast<std::size_t>(std::floor(t)), intervals() - 1);
    const double frac = t - static_cast<double>(l);
    const double lo = samples_[l];
    const double hi = samples_[l + 1];
    // Exact on constant runs, so a constant multiset interpolates to itself.
    if (lo == hi) return lo;
    return lo + frac * (hi - lo);
}

QuantileInterpolant empirical_quantile(const RealMultiset& samples) {
    if (samples.size() < 2) throw std::invalid_argument("empirical_quantile: need at least two samples");
    return QuantileInterpolant(samples.sorted());
}

double quantile_eval(const QuantileInterpolant& q, double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("quantile_eval: y must lie in [0, 1]");
    return q(y);
}

std::vector<double> dense_samples(const ScalarSymbol& f, std::size_t density) {
    const std::size_t d = f.domain.dim();
    auto per_axis = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(density), 1.0 / static_cast<double>(d)) - 1e-9));
    per_axis = std::max<std::size_t>(per_axis, 1);
    const Dims dims(d, per_axis);
    const std::size_t total = grid_size(dims);

    std::vector<double> out;
    out.reserve(total);
    Point x(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto idx = multi_index(dims, flat);
        for (std::size_t j = 0; j < d; ++j) {
            const double a = f.domain.lo()[j];
            const double b = f.domain.hi()[j];
            x[j] = a + (static_cast<double>(idx[j]) - 0.5) * (b - a) / static_cast<double>(per_axis);
        }
        if (f.in_omega(x)) out.push_back(f(x));
    }
    return out;
}

double quantile_oracle(const ScalarSymbol& f, std::size_t density, double y) {
    if (density < 1000) throw std::invalid_argument("quantile_oracle: density must be at least 1000");
    if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("quantile_oracle: y must lie in [0, 1]");
    auto s = dense_samples(f, density);
    if (s.empty()) throw std::invalid_argument("quantile_oracle: no sample falls inside Omega");
    const auto count = s.size();
    auto rank = static_cast<std::size_t>(std::ceil(y * static_cast<double>(count)));
    rank = std::clamp<std::size_t>(rank, 1, count);
    std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(rank - 1), s.end());
    return s[rank - 1];
}

IntervalUnion essential_range(const ScalarSymbol& f, std::size_t density, std::optional<double> gap_tol) {
    if (density < 1000) throw std::invalid_argument("essential_range: density must be at least 1000");
    const double tol = gap_tol.value_or(10.0 * (f.declared_sup - f.declared_inf) / static_cast<double>(density));
    if (!(tol > 0.0)) throw std::invalid_argument("essential_range: gap tolerance must be positive");

    auto s = dense_samples(f, density);
    if (s.empty()) return {};
    std::sort(s.begin(), s.end());
    std::vector<Interval> runs{{s.front(), s.front()}};
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] - s[i - 1] > tol) {
            runs.push_back({s[i], s[i]});
        } else {
            runs.back().hi = s[i];
        }
    }
    return IntervalUnion(std::move(runs));
}

IntervalUnion resolved_essential_range(const ScalarSymbol& f, std::size_t density) {
    if (f.declared_range) return *f.declared_range;
    return essential_range(f, density);
}

}  // namespace specdist
