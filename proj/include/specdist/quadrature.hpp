#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace specdist {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// m-point rule, exact for polynomials of degree 2m - 1. Nodes ascending.
GaussRule gauss_legendre(std::size_t m);

/// Composite rule: [a, b] split at every breakpoint strictly inside it, each
/// panel further split into `subpanels(panel_length)` equal parts, with
/// `rule` applied on every part.
template <typename F, typename Sub>
auto integrate_composite(F&& f, double a, double b, std::span<const double> breakpoints, const GaussRule& rule,
                         Sub&& subpanels) {
    std::vector<double> cuts{a};
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    // breakpoints are expected sorted; tolerate unsorted input
    std::sort(cuts.begin(), cuts.end());

    using R = decltype(f(a));
    R total{};
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double lo = cuts[p];
        const double hi = cuts[p + 1];
        if (hi <= lo) continue;
        const std::size_t m = std::max<std::size_t>(1, subpanels(hi - lo));
        const double h = (hi - lo) / static_cast<double>(m);
        for (std::size_t s = 0; s < m; ++s) {
            const double x0 = lo + static_cast<double>(s) * h;
            const double half = 0.5 * h;
            const double mid = x0 + half;
            R part{};
            for (std::size_t q = 0; q < rule.size(); ++q) part += rule.weights[q] * f(mid + half * rule.nodes[q]);
            total += half * part;
        }
    }
    return total;
}

}  // namespace specdist
