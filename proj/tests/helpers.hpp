#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

#include "specdist/core.hpp"
#include "specdist/eig.hpp"
#include "specdist/toeplitz.hpp"

namespace specdist::testing {

/// Ascending eigenvalues of T_n(f) for a symbol on [-pi, pi].
inline std::vector<double> toeplitz_spectrum(const ScalarSymbol& f, std::size_t n) {
    return eig_sym(toeplitz_build(fourier_coeffs(f, n - 1), n)).values;
}

/// {i pi/(n+1) : i = 1..n}.
inline std::vector<double> shifted_grid(std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) * std::numbers::pi / static_cast<double>(n + 1);
    return g;
}

}  // namespace specdist::testing
