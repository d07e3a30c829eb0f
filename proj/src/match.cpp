#include "specdist/match.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "specdist/errors.hpp"

namespace specdist {

std::vector<std::size_t> sort_permutation(std::span<const double> values) {
    std::vector<std::size_t> perm(values.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return perm;
}

MatchResult sorted_match(std::span<const double> samples, std::span<const double> lambdas) {
    if (samples.size() != lambdas.size()) {
        throw std::invalid_argument("sorted_match: length mismatch (" + std::to_string(samples.size()) + " samples vs " +
                                    std::to_string(lambdas.size()) + " lambdas)");
    }
    if (samples.empty()) throw std::invalid_argument("sorted_match: inputs must be non-empty");

    MatchResult r;
    r.sigma = sort_permutation(samples);
    r.tau = sort_permutation(lambdas);
    r.paired_diffs.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        r.paired_diffs[i] = samples[r.sigma[i]] - lambdas[r.tau[i]];
        r.m_n = std::max(r.m_n, std::abs(r.paired_diffs[i]));
    }
    return r;
}

double min_perm_match(std::span<const double> samples, std::span<const double> lambdas) {
    if (samples.size() != lambdas.size()) throw std::invalid_argument("min_perm_match: length mismatch");
    if (samples.size() > 9) throw UnsupportedSize("min_perm_match: exhaustive mode supports at most 9 entries");
    if (samples.empty()) throw std::invalid_argument("min_perm_match: inputs must be non-empty");

    std::vector<std::size_t> perm(samples.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < perm.size() && worst < best; ++i) {
            worst = std::max(worst, std::abs(samples[i] - lambdas[perm[i]]));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<MnRow> mn_curve(const ScalarSymbol& symbol, const GridFamily& grids,
                            const std::map<std::size_t, RealMultiset>& lambdas_by_n,
                            std::span<const std::size_t> ns) {
    std::vector<MnRow> rows;
    rows.reserve(ns.size());
    for (std::size_t n : ns) {
        const auto it = lambdas_by_n.find(n);
        if (it == lambdas_by_n.end()) throw std::invalid_argument("mn_curve: no eigenvalues for n = " + std::to_string(n));
        const AUGrid grid = grids(n);
        std::vector<double> samples;
        samples.reserve(grid.size());
        for (const auto& p : grid.points()) {
            if (symbol.in_omega(p)) samples.push_back(symbol(p));
        }
        if (samples.size() != it->second.size()) {
            throw std::invalid_argument("mn_curve: at n = " + std::to_string(n) + ", " + std::to_string(samples.size()) +
                                        " grid points in Omega but " + std::to_string(it->second.size()) +
                                        " eigenvalues");
        }
        rows.push_back({n, sorted_match(samples, it->second.values()).m_n});
    }
    return rows;
}

std::vector<MnRow> mn_curve_2d(const ScalarSymbol& symbol, const std::function<Dims(std::size_t)>& dims_for_n,
                               const std::map<std::size_t, RealMultiset>& lambdas_by_n,
                               std::span<const std::size_t> ns) {
    const GridFamily grids = [&](std::size_t n) { return make_uniform_grid(symbol.domain, dims_for_n(n)); };
    return mn_curve(symbol, grids, lambdas_by_n, ns);
}

double eval_pieces(std::span<const MonotonePiece> pieces, double x) {
    for (std::size_t j = 0; j < pieces.size(); ++j) {
        const auto& p = pieces[j];
        const bool last = j + 1 == pieces.size();
        if (x >= p.lo && (x < p.hi || (last && x <= p.hi))) return p.eval(x);
    }
    throw std::invalid_argument("eval_pieces: point outside every piece");
}

namespace {

constexpr double kImageSlack = 1e-9;
constexpr double kRootTol = 1e-13;

std::optional<double> solve_on_piece(const MonotonePiece& piece, double target) {
    const double v_lo = piece.eval(piece.lo);
    const double v_hi = piece.eval(piece.hi);
    const double lo_val = std::min(v_lo, v_hi);
    const double hi_val = std::max(v_lo, v_hi);
    if (target < lo_val - kImageSlack || target > hi_val + kImageSlack) return std::nullopt;
    if (target <= lo_val) return piece.direction == Direction::Increasing ? piece.lo : piece.hi;
    if (target >= hi_val) return piece.direction == Direction::Increasing ? piece.hi : piece.lo;

    double a = piece.lo;
    double b = piece.hi;
    const bool increasing = piece.direction == Direction::Increasing;
    for (int it = 0; it < 200 && b - a > kRootTol; ++it) {
        const double mid = 0.5 * (a + b);
        const double v = piece.eval(mid);
        if ((v < target) == increasing) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

AUGrid preimage_grid(std::span<const MonotonePiece> pieces, const RealMultiset& lambdas, const AUGrid& ref_grid) {
    if (ref_grid.rect().dim() != 1) throw std::invalid_argument("preimage_grid: only one-dimensional grids are supported");
    if (ref_grid.size() != lambdas.size()) throw std::invalid_argument("preimage_grid: grid and multiset sizes differ");
    if (pieces.empty()) throw std::invalid_argument("preimage_grid: no monotone pieces");
    for (const auto& p : pieces) {
        if (!(p.lo < p.hi)) throw std::invalid_argument("preimage_grid: degenerate piece");
    }

    const auto theta = ref_grid.coordinates(0);
    std::vector<double> samples(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) samples[i] = eval_pieces(pieces, theta[i]);
    const auto match = sorted_match(samples, lambdas.values());

    // target[i] is the lambda paired with reference point i.
    std::vector<double> target(theta.size());
    for (std::size_t r = 0; r < theta.size(); ++r) target[match.sigma[r]] = lambdas[match.tau[r]];

    std::vector<double> chosen(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        std::optional<double> best;
        for (const auto& piece : pieces) {
            const auto root = solve_on_piece(piece, target[i]);
            if (!root) continue;
            if (!best) {
                best = root;
                continue;
            }
            const double d_new = std::abs(*root - theta[i]);
            const double d_old = std::abs(*best - theta[i]);
            if (d_new < d_old || (d_new == d_old && *root < *best)) best = root;
        }
        if (!best) throw NoPreimage(i, target[i]);
        chosen[i] = *best;
    }
    std::sort(chosen.begin(), chosen.end());
    return make_grid_1d(ref_grid.rect().lo()[0], ref_grid.rect().hi()[0], std::move(chosen));
}

}  // namespace specdist
