#include "specdist/symbols.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace specdist::symbols {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ScalarSymbol cosine(double a, double b) {
    return ScalarSymbol::univariate(
        -kPi, kPi, [a, b](double t) { return a + b * std::cos(t); }, a - std::abs(b), a + std::abs(b));
}

ScalarSymbol plateau_ramp() {
    const auto f = [](double t) {
        const double x = std::abs(t);
        return x < kPi / 2 ? 1.0 : x + 1.0 - kPi / 2;
    };
    return ScalarSymbol::univariate(-kPi, kPi, f, 1.0, 1.0 + kPi / 2, {-kPi / 2, 0.0, kPi / 2});
}

double cos_sum_ramp_argmin() { return std::acos((std::sqrt(10.0) - 1.0) / 6.0); }

ScalarSymbol cos_sum_ramp() {
    const auto f = [](double t) {
        const double x = std::abs(t);
        return x < kPi / 2 ? std::cos(2 * x) + std::cos(3 * x) : x;
    };
    const double lo = -25.0 / 54.0 - 10.0 * std::sqrt(10.0) / 27.0;
    return ScalarSymbol::univariate(-kPi, kPi, f, lo, kPi, {-kPi / 2, 0.0, kPi / 2});
}

std::vector<MonotonePiece> cos_sum_ramp_pieces() {
    const auto trig = [](double x) { return std::cos(2 * x) + std::cos(3 * x); };
    const double star = cos_sum_ramp_argmin();
    return {
        {0.0, star, Direction::Decreasing, trig},
        {star, kPi / 2, Direction::Increasing, trig},
        {kPi / 2, kPi, Direction::Increasing, [](double x) { return x; }},
    };
}

std::function<double(double)> diffusion_coefficient(const std::string& name) {
    if (name == "exp") return [](double x) { return std::exp(-x); };
    if (name == "cos3") return [](double x) { return 2.0 + std::cos(3.0 * x); };
    if (name == "xlog") return [](double x) { return x * std::log1p(x); };
    throw std::invalid_argument("unknown diffusion coefficient '" + name + "' (expected exp, cos3 or xlog)");
}

ScalarSymbol diffusion_symbol(const std::string& name) {
    const auto a = diffusion_coefficient(name);
    // Each coefficient is non-negative and monotone on [0, 1].
    const double amax = std::max(a(0.0), a(1.0));
    ScalarSymbol s{Rect({0.0, 0.0}, {1.0, kPi}),
                   [a](std::span<const double> x) { return a(x[0]) * (2.0 - 2.0 * std::cos(x[1])); },
                   0.0,
                   4.0 * amax,
                   {},
                   {},
                   std::nullopt};
    return s;
}

double iga_kappa(double t) { return 1.0 - 2.0 / 3.0 * std::cos(t) - 1.0 / 3.0 * std::cos(2 * t); }

double iga_mu(double t) { return 11.0 / 20.0 + 13.0 / 30.0 * std::cos(t) + 1.0 / 60.0 * std::cos(2 * t); }

ScalarSymbol iga_2d_symbol() {
    ScalarSymbol s{Rect({0.0, 0.0}, {kPi, kPi}),
                   [](std::span<const double> x) {
                       return iga_kappa(x[0]) * iga_mu(x[1]) + iga_mu(x[0]) * iga_kappa(x[1]);
                   },
                   0.0,
                   1.5,
                   {},
                   {},
                   std::nullopt};
    return s;
}

Eigen::MatrixXcd quadratic_c0_value(double t) {
    const std::complex<double> z = std::polar(1.0, t);
    Eigen::MatrixXcd m(2, 2);
    m(0, 0) = 4.0;
    m(0, 1) = -2.0 - 2.0 * z;
    m(1, 0) = -2.0 - 2.0 * std::conj(z);
    m(1, 1) = 8.0 - 4.0 * std::cos(t);
    return m / 3.0;
}

MatrixSymbol quadratic_c0(double a, double b) { return MatrixSymbol(a, b, 2, quadratic_c0_value); }

double quadratic_c0_lower(double t) {
    const double c = std::cos(t);
    return 2.0 - 2.0 / 3.0 * c - 2.0 / 3.0 * std::sqrt(3.0 + c * c);
}

double quadratic_c0_upper(double t) {
    const double c = std::cos(t);
    return 2.0 - 2.0 / 3.0 * c + 2.0 / 3.0 * std::sqrt(3.0 + c * c);
}

ScalarSymbol indicator_of_one() {
    return ScalarSymbol::univariate(0.0, 1.0, [](double x) { return x == 1.0 ? 1.0 : 0.0; }, 0.0, 1.0);
}

}  // namespace specdist::symbols
