#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specdist/core.hpp"
#include "specdist/match.hpp"

namespace specdist::symbols {

/// a + b cos(theta) on [-pi, pi].
ScalarSymbol cosine(double a, double b);

/// Even symbol equal to 1 on [0, pi/2) and theta + 1 - pi/2 on [pi/2, pi],
/// on [-pi, pi]. Range [1, 1 + pi/2].
ScalarSymbol plateau_ramp();

/// Even symbol equal to cos(2 theta) + cos(3 theta) on [0, pi/2) and theta on
/// [pi/2, pi], on [-pi, pi]. Jumps at +-pi/2.
ScalarSymbol cos_sum_ramp();
/// Minimiser of cos(2 theta) + cos(3 theta) on [0, pi/2].
double cos_sum_ramp_argmin();
/// Monotone pieces of cos_sum_ramp on [0, pi]: decreasing on [0, theta*],
/// increasing on [theta*, pi/2] (closed with the left limit), increasing on
/// [pi/2, pi].
std::vector<MonotonePiece> cos_sum_ramp_pieces();

/// Diffusion coefficients on [0, 1] by name: "exp" (e^{-x}), "cos3"
/// (2 + cos 3x), "xlog" (x log(1 + x)). Throws std::invalid_argument otherwise.
std::function<double(double)> diffusion_coefficient(const std::string& name);
/// a(x)(2 - 2 cos theta) on [0, 1] x [0, pi].
ScalarSymbol diffusion_symbol(const std::string& name);

/// kappa(theta) mu(theta') + mu(theta) kappa(theta') on [0, pi]^2 with
/// kappa = 1 - 2/3 cos - 1/3 cos 2, mu = 11/20 + 13/30 cos + 1/60 cos 2.
double iga_kappa(double theta);
double iga_mu(double theta);
ScalarSymbol iga_2d_symbol();

/// (1/3) [[4, -2 - 2e^{i theta}], [-2 - 2e^{-i theta}, 8 - 4 cos theta]], the
/// symbol of the quadratic C^0 Galerkin stiffness matrix n^{-1}K_{n,2,0}.
Eigen::MatrixXcd quadratic_c0_value(double theta);
/// The same on [a, b] (default [0, pi]).
MatrixSymbol quadratic_c0(double a = 0.0, double b = 3.14159265358979323846);
/// Closed-form branches 2 - 2/3 cos -+ 2/3 sqrt(3 + cos^2).
double quadratic_c0_lower(double theta);
double quadratic_c0_upper(double theta);

/// Indicator of {1} on [0, 1].
ScalarSymbol indicator_of_one();

}  // namespace specdist::symbols
