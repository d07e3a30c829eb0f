#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specdist/core.hpp"

namespace specdist {

/// Piecewise-linear interpolant through (l/w, s_l), l = 0..w, of ascending
/// samples s_0 <= ... <= s_w. This is the discrete monotone rearrangement of
/// a sampled function.
class QuantileInterpolant {
public:
    /// `sorted_samples` must be ascending and hold at least two values.
    explicit QuantileInterpolant(std::vector<double> sorted_samples);

    const std::vector<double>& samples() const noexcept { return samples_; }
    /// Number of linear pieces w.
    std::size_t intervals() const noexcept { return samples_.size() - 1; }
    /// Node l/w.
    double node(std::size_t l) const;
    double operator()(double y) const;

private:
    std::vector<double> samples_;
};

/// Sorts the samples (stably) and returns their interpolant.
QuantileInterpolant empirical_quantile(const RealMultiset& samples);

/// Evaluates q at y in [0, 1]; throws std::invalid_argument otherwise.
double quantile_eval(const QuantileInterpolant& q, double y);

/// Brute-force monotone rearrangement: samples f at the cell midpoints of a
/// uniform grid with about `density` points over the domain, keeps the ones
/// in Omega, sorts them and returns the ceil(y * N)-th order statistic.
double quantile_oracle(const ScalarSymbol& f, std::size_t density, double y);

/// Sampled essential range. Dense midpoint samples are sorted and split into
/// runs wherever consecutive values are more than `gap_tol` apart; each run
/// becomes one closed interval. The default gap tolerance is
/// 10 * (declared_sup - declared_inf) / density.
IntervalUnion essential_range(const ScalarSymbol& f, std::size_t density,
                              std::optional<double> gap_tol = std::nullopt);

/// The declared essential range if the symbol carries one, otherwise the
/// sampled one.
IntervalUnion resolved_essential_range(const ScalarSymbol& f, std::size_t density);

/// Midpoint samples of f over Omega (about `density` points in total).
std::vector<double> dense_samples(const ScalarSymbol& f, std::size_t density);

}  // namespace specdist
