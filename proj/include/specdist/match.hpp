#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "specdist/core.hpp"

namespace specdist {

/// Outcome of pairing two equal-size vectors after sorting both ascending.
struct MatchResult {
    /// max_i |s_sigma(i) - l_tau(i)|.
    double m_n = 0.0;
    /// sigma[i] is the position of the i-th smallest sample (stable, 0-based).
    std::vector<std::size_t> sigma;
    /// tau[i] is the position of the i-th smallest lambda (stable, 0-based).
    std::vector<std::size_t> tau;
    /// sorted sample i minus sorted lambda i.
    std::vector<double> paired_diffs;
};

/// Stable ascending sort permutation of `values`.
std::vector<std::size_t> sort_permutation(std::span<const double> values);

MatchResult sorted_match(std::span<const double> samples, std::span<const double> lambdas);

/// Exhaustive minimum over all permutations tau of max_i |s_i - l_tau(i)|.
/// Factorial cost; throws UnsupportedSize beyond 9 entries.
double min_perm_match(std::span<const double> samples, std::span<const double> lambdas);

struct MnRow {
    std::size_t n;
    double m_n;
};

/// Grid used at a given n.
using GridFamily = std::function<AUGrid(std::size_t n)>;

/// For each n: samples `symbol` at the grid points inside Omega and
/// sorted-matches them against lambdas_by_n.at(n).
std::vector<MnRow> mn_curve(const ScalarSymbol& symbol, const GridFamily& grids,
                            const std::map<std::size_t, RealMultiset>& lambdas_by_n,
                            std::span<const std::size_t> ns);

/// mn_curve over the uniform grid of the symbol's rectangle with the
/// explicit per-n dimensions `dims_for_n(n)` (flattened lexicographically).
std::vector<MnRow> mn_curve_2d(const ScalarSymbol& symbol, const std::function<Dims(std::size_t)>& dims_for_n,
                               const std::map<std::size_t, RealMultiset>& lambdas_by_n,
                               std::span<const std::size_t> ns);

enum class Direction { Increasing, Decreasing };

/// Restriction of a real function to [lo, hi] on which it is monotone.
/// `eval` must be continuous on the closed interval (use one-sided limits
/// at jumps).
struct MonotonePiece {
    double lo;
    double hi;
    Direction direction;
    std::function<double(double)> eval;
};

/// For each reference point theta_i, pairs the i-th sample f(theta_i) with a
/// lambda through the sorted matching, solves f(x) = lambda on every piece by
/// bisection and keeps the root closest to theta_i (smaller x on ties).
/// Returns the chosen preimages sorted ascending, as a grid over the
/// reference rectangle. Throws NoPreimage if some lambda is outside every
/// piece image by more than 1e-9.
AUGrid preimage_grid(std::span<const MonotonePiece> pieces, const RealMultiset& lambdas, const AUGrid& ref_grid);

/// Evaluates the piecewise function formed by `pieces` (first piece whose
/// closed interval contains x).
double eval_pieces(std::span<const MonotonePiece> pieces, double x);

}  // namespace specdist
