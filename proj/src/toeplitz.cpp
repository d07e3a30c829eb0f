#include "specdist/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specdist/quadrature.hpp"

namespace specdist {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t periods_in(double length, long k) {
    const double periods = std::abs(static_cast<double>(k)) * length / (2.0 * kPi);
    return static_cast<std::size_t>(std::ceil(periods));
}

void require_full_period(const Rect& domain) {
    if (domain.dim() != 1 || std::abs(domain.lo()[0] + kPi) > 1e-12 || std::abs(domain.hi()[0] - kPi) > 1e-12) {
        throw std::invalid_argument("generating function must be defined on [-pi, pi]");
    }
}

}  // namespace

cplx fourier_coeff(const ScalarSymbol& f, long k, const QuadratureOptions& opts) {
    require_full_period(f.domain);
    const GaussRule rule = gauss_legendre(opts.nodes_per_panel);
    const double kk = static_cast<double>(k);
    const auto integrand = [&](double t) { return f(t) * cplx(std::cos(kk * t), -std::sin(kk * t)); };
    const cplx total =
        integrate_composite(integrand, -kPi, kPi, f.breakpoints, rule, [k](double len) { return periods_in(len, k); });
    return total / (2.0 * kPi);
}

FourierCoeffs::FourierCoeffs(std::size_t order, std::vector<cplx> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != 2 * order_ + 1) throw std::invalid_argument("FourierCoeffs: expected 2*order+1 coefficients");
}

cplx FourierCoeffs::operator[](long k) const {
    if (static_cast<std::size_t>(std::abs(k)) > order_) throw std::out_of_range("FourierCoeffs: |k| exceeds order");
    return coeffs_[static_cast<std::size_t>(k + static_cast<long>(order_))];
}

bool FourierCoeffs::is_real_even(double tol) const {
    const long ord = static_cast<long>(order_);
    for (long k = -ord; k <= ord; ++k) {
        const cplx c = (*this)[k];
        if (std::abs(c.imag()) > tol || std::abs(c - (*this)[-k]) > tol) return false;
    }
    return true;
}

FourierCoeffs fourier_coeffs(const ScalarSymbol& f, std::size_t order, const QuadratureOptions& opts) {
    require_full_period(f.domain);
    const long ord = static_cast<long>(order);
    std::vector<cplx> c(2 * order + 1);
    // f is real-valued, so f_{-k} is the conjugate of f_k.
    for (long k = 0; k <= ord; ++k) {
        const cplx v = fourier_coeff(f, k, opts);
        c[static_cast<std::size_t>(ord + k)] = v;
        c[static_cast<std::size_t>(ord - k)] = std::conj(v);
    }
    return FourierCoeffs(order, std::move(c));
}

Eigen::MatrixXcd toeplitz_build(const FourierCoeffs& c, std::size_t n, bool allow_truncation) {
    if (n == 0) throw std::invalid_argument("toeplitz_build: n must be positive");
    if (c.order() + 1 < n && !allow_truncation) {
        throw std::invalid_argument("toeplitz_build: need coefficients up to |k| = " + std::to_string(n - 1));
    }
    const long ord = static_cast<long>(c.order());
    Eigen::MatrixXcd t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const long k = static_cast<long>(i) - static_cast<long>(j);
            t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::abs(k) <= ord ? c[k] : cplx{};
        }
    }
    return t;
}

BlockFourierCoeffs::BlockFourierCoeffs(std::size_t order, std::vector<Eigen::MatrixXcd> blocks)
    : order_(order), blocks_(std::move(blocks)) {
    if (blocks_.size() != 2 * order_ + 1) throw std::invalid_argument("BlockFourierCoeffs: expected 2*order+1 blocks");
    const auto rows = blocks_.front().rows();
    for (const auto& b : blocks_) {
        if (b.rows() != rows || b.cols() != rows || rows == 0) {
            throw std::invalid_argument("BlockFourierCoeffs: blocks must be square and of equal size");
        }
    }
}

BlockFourierCoeffs BlockFourierCoeffs::from_blocks(const std::map<long, Eigen::MatrixXcd>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("BlockFourierCoeffs::from_blocks: no blocks");
    std::size_t order = 0;
    for (const auto& [k, b] : blocks) order = std::max(order, static_cast<std::size_t>(std::abs(k)));
    const auto size = blocks.begin()->second.rows();
    std::vector<Eigen::MatrixXcd> table(2 * order + 1, Eigen::MatrixXcd::Zero(size, size));
    for (const auto& [k, b] : blocks) table[static_cast<std::size_t>(k + static_cast<long>(order))] = b;
    return BlockFourierCoeffs(order, std::move(table));
}

const Eigen::MatrixXcd& BlockFourierCoeffs::operator[](long k) const {
    if (static_cast<std::size_t>(std::abs(k)) > order_) throw std::out_of_range("BlockFourierCoeffs: |k| exceeds order");
    return blocks_[static_cast<std::size_t>(k + static_cast<long>(order_))];
}

double BlockFourierCoeffs::hermitian_defect() const {
    double d = 0.0;
    const long ord = static_cast<long>(order_);
    for (long k = 0; k <= ord; ++k) d = std::max(d, ((*this)[-k] - (*this)[k].adjoint()).cwiseAbs().maxCoeff());
    return d;
}

BlockFourierCoeffs block_fourier_coeffs(const MatrixSymbol::Eval& f, std::size_t k, std::size_t order,
                                        const std::vector<double>& breakpoints, const QuadratureOptions& opts) {
    const GaussRule rule = gauss_legendre(opts.nodes_per_panel);
    const long ord = static_cast<long>(order);
    std::vector<Eigen::MatrixXcd> table;
    table.reserve(2 * order + 1);
    for (long m = -ord; m <= ord; ++m) {
        const double mm = static_cast<double>(m);
        const auto integrand = [&](double t) -> Eigen::MatrixXcd {
            Eigen::MatrixXcd v = f(t);
            if (static_cast<std::size_t>(v.rows()) != k || static_cast<std::size_t>(v.cols()) != k) {
                throw std::invalid_argument("block_fourier_coeffs: evaluation has wrong size");
            }
            return v * cplx(std::cos(mm * t), -std::sin(mm * t));
        };
        // integrate_composite default-constructs its accumulator; seed sizes here.
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        std::vector<double> cuts{-kPi};
        for (double c : breakpoints) {
            if (c > -kPi && c < kPi) cuts.push_back(c);
        }
        cuts.push_back(kPi);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            const double len = cuts[p + 1] - cuts[p];
            const std::size_t parts = std::max<std::size_t>(1, periods_in(len, m));
            const double h = len / static_cast<double>(parts);
            for (std::size_t s = 0; s < parts; ++s) {
                const double mid = cuts[p] + (static_cast<double>(s) + 0.5) * h;
                for (std::size_t q = 0; q < rule.size(); ++q) {
                    acc += (0.5 * h * rule.weights[q]) * integrand(mid + 0.5 * h * rule.nodes[q]);
                }
            }
        }
        table.push_back(acc / (2.0 * kPi));
    }
    return BlockFourierCoeffs(order, std::move(table));
}

Eigen::MatrixXcd block_toeplitz_build(const BlockFourierCoeffs& c, std::size_t n, bool allow_truncation) {
    if (n == 0) throw std::invalid_argument("block_toeplitz_build: n must be positive");
    if (c.order() + 1 < n && !allow_truncation) {
        throw std::invalid_argument("block_toeplitz_build: need blocks up to |k| = " + std::to_string(n - 1));
    }
    const auto s = static_cast<Eigen::Index>(c.block_size());
    const long ord = static_cast<long>(c.order());
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * s, static_cast<Eigen::Index>(n) * s);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const long k = static_cast<long>(i) - static_cast<long>(j);
            if (std::abs(k) > ord) continue;
            t.block(static_cast<Eigen::Index>(i) * s, static_cast<Eigen::Index>(j) * s, s, s) = c[k];
        }
    }
    return t;
}

}  // namespace specdist
