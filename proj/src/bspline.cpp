#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specdist/errors.hpp"
#include "specdist/galerkin.hpp"
#include "specdist/quadrature.hpp"

namespace specdist {

BSplineBasis::BSplineBasis(std::size_t degree, std::vector<double> knots) : p_(degree), t_(std::move(knots)) {
    if (t_.size() < p_ + 2) throw std::invalid_argument("BSplineBasis: need at least p + 2 knots");
    if (!std::is_sorted(t_.begin(), t_.end())) throw std::invalid_argument("BSplineBasis: knots must be non-decreasing");
    if (!(t_.front() < t_.back())) throw std::invalid_argument("BSplineBasis: knot vector spans an empty interval");
}

BSplineBasis BSplineBasis::open_uniform(std::size_t p, std::size_t k, std::size_t n) {
    if (p < 1 || k >= p) throw std::invalid_argument("open_uniform: need p >= 1 and 0 <= k <= p - 1");
    if (n < 1) throw std::invalid_argument("open_uniform: need n >= 1");
    std::vector<double> t(p + 1, 0.0);
    for (std::size_t e = 1; e < n; ++e) {
        t.insert(t.end(), p - k, static_cast<double>(e) / static_cast<double>(n));
    }
    t.insert(t.end(), p + 1, 1.0);
    return BSplineBasis(p, std::move(t));
}

BSplineBasis BSplineBasis::reference(std::size_t p, std::size_t k) {
    if (p < 1 || k >= p) throw std::invalid_argument("reference: need p >= 1 and 0 <= k <= p - 1");
    const std::size_t m = p - k;
    const std::size_t eta = (p + 1 + m - 1) / m;
    std::vector<double> t;
    for (std::size_t j = 0; j <= eta; ++j) t.insert(t.end(), m, static_cast<double>(j));
    return BSplineBasis(p, std::move(t));
}

double BSplineBasis::support_lo(std::size_t i) const {
    if (i >= count()) throw std::invalid_argument("BSplineBasis: function index out of range");
    return t_[i];
}

double BSplineBasis::support_hi(std::size_t i) const {
    if (i >= count()) throw std::invalid_argument("BSplineBasis: function index out of range");
    return t_[i + p_ + 1];
}

double BSplineBasis::eval_degree(std::size_t i, std::size_t p, double x) const {
    const double last = t_.back();
    std::vector<double> n(p + 1);
    for (std::size_t j = 0; j <= p; ++j) {
        const double a = t_[i + j];
        const double b = t_[i + j + 1];
        const bool inside = a <= x && x < b;
        const bool closing = x == last && a < b && b == last;
        n[j] = inside || closing ? 1.0 : 0.0;
    }
    for (std::size_t d = 1; d <= p; ++d) {
        for (std::size_t j = 0; j + d <= p; ++j) {
            const std::size_t s = i + j;
            const double left_den = t_[s + d] - t_[s];
            const double right_den = t_[s + d + 1] - t_[s + 1];
            const double left = left_den > 0.0 ? (x - t_[s]) / left_den * n[j] : 0.0;
            const double right = right_den > 0.0 ? (t_[s + d + 1] - x) / right_den * n[j + 1] : 0.0;
            n[j] = left + right;
        }
    }
    return n[0];
}

double BSplineBasis::eval(std::size_t i, double x) const {
    if (i >= count()) throw std::invalid_argument("BSplineBasis::eval: function index out of range");
    return eval_degree(i, p_, x);
}

double BSplineBasis::deriv(std::size_t i, double x) const {
    if (i >= count()) throw std::invalid_argument("BSplineBasis::deriv: function index out of range");
    if (p_ == 0) return 0.0;
    const double p = static_cast<double>(p_);
    const double left_den = t_[i + p_] - t_[i];
    const double right_den = t_[i + p_ + 1] - t_[i + 1];
    double d = 0.0;
    if (left_den > 0.0) d += p / left_den * eval_degree(i, p_ - 1, x);
    if (right_den > 0.0) d -= p / right_den * eval_degree(i + 1, p_ - 1, x);
    return d;
}

double bspline_eval(const BSplineBasis& basis, std::size_t i, double x) { return basis.eval(i, x); }

double bspline_deriv(const BSplineBasis& basis, std::size_t i, double x) { return basis.deriv(i, x); }

std::size_t spline_dim(std::size_t p, std::size_t k, std::size_t n) { return n * (p - k) + k - 1; }

ReferenceBlocks reference_blocks(std::size_t p, std::size_t k) {
    const BSplineBasis beta = BSplineBasis::reference(p, k);
    const std::size_t m = p - k;
    ReferenceBlocks out;
    out.p = p;
    out.k = k;
    out.eta = static_cast<std::size_t>(beta.knots().back());
    const GaussRule rule = gauss_legendre(p + 1);

    for (std::size_t l = 0; l < out.eta; ++l) {
        Eigen::MatrixXd kb = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        Eigen::MatrixXd mb = kb;
        const double shift = static_cast<double>(l);
        for (std::size_t span = 0; span < out.eta; ++span) {
            const double mid = static_cast<double>(span) + 0.5;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const double t = mid + 0.5 * rule.nodes[q];
                const double w = 0.5 * rule.weights[q];
                for (std::size_t r = 0; r < m; ++r) {
                    const double u = t - shift;
                    const double br = beta.eval(r, u);
                    const double dr = beta.deriv(r, u);
                    if (br == 0.0 && dr == 0.0) continue;
                    for (std::size_t s = 0; s < m; ++s) {
                        const auto ri = static_cast<Eigen::Index>(r);
                        const auto si = static_cast<Eigen::Index>(s);
                        kb(ri, si) += w * beta.deriv(s, t) * dr;
                        mb(ri, si) += w * beta.eval(s, t) * br;
                    }
                }
            }
        }
        out.K.push_back(std::move(kb));
        out.M.push_back(std::move(mb));
    }
    return out;
}

namespace {

Eigen::MatrixXcd block_symbol(const std::vector<Eigen::MatrixXd>& blocks, double theta) {
    Eigen::MatrixXcd f = blocks.front().cast<std::complex<double>>();
    for (std::size_t l = 1; l < blocks.size(); ++l) {
        const std::complex<double> z = std::polar(1.0, static_cast<double>(l) * theta);
        f += blocks[l].cast<std::complex<double>>() * z;
        f += blocks[l].transpose().cast<std::complex<double>>() * std::conj(z);
    }
    return f;
}

}  // namespace

Eigen::MatrixXcd symbol_f(const ReferenceBlocks& blocks, double theta) { return block_symbol(blocks.K, theta); }

Eigen::MatrixXcd symbol_f(std::size_t p, std::size_t k, double theta) {
    return symbol_f(reference_blocks(p, k), theta);
}

Eigen::MatrixXcd symbol_h(const ReferenceBlocks& blocks, double theta) { return block_symbol(blocks.M, theta); }

Eigen::MatrixXcd symbol_h(std::size_t p, std::size_t k, double theta) {
    return symbol_h(reference_blocks(p, k), theta);
}

std::vector<double> symbol_e_branches(const ReferenceBlocks& blocks, double theta) {
    try {
        return eig_gen_sym_def(symbol_f(blocks, theta), symbol_h(blocks, theta)).values;
    } catch (const NotPositiveDefinite&) {
        throw InternalError("symbol_e_branches: h_{p,k}(theta) is not positive definite");
    }
}

std::vector<double> symbol_e_branches(std::size_t p, std::size_t k, double theta) {
    return symbol_e_branches(reference_blocks(p, k), theta);
}

StiffnessMass assemble_KM(std::size_t n, std::size_t p, std::size_t k) {
    if (n < 2) throw std::invalid_argument("assemble_KM: need n >= 2");
    const BSplineBasis basis = BSplineBasis::open_uniform(p, k, n);
    const std::size_t total = basis.count();
    const auto dim = static_cast<Eigen::Index>(total - 2);
    StiffnessMass km{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
    const GaussRule rule = gauss_legendre(p + 1);
    const double h = 1.0 / static_cast<double>(n);

    std::vector<std::size_t> active;
    std::vector<double> val;
    std::vector<double> der;
    for (std::size_t e = 0; e < n; ++e) {
        const double lo = static_cast<double>(e) * h;
        const double hi = static_cast<double>(e + 1) * h;
        active.clear();
        for (std::size_t i = 1; i + 1 < total; ++i) {
            if (basis.support_lo(i) < hi && basis.support_hi(i) > lo) active.push_back(i);
        }
        val.resize(active.size());
        der.resize(active.size());
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double x = lo + 0.5 * h * (1.0 + rule.nodes[q]);
            const double w = 0.5 * h * rule.weights[q];
            for (std::size_t a = 0; a < active.size(); ++a) {
                val[a] = basis.eval(active[a], x);
                der[a] = basis.deriv(active[a], x);
            }
            for (std::size_t a = 0; a < active.size(); ++a) {
                const auto ga = static_cast<Eigen::Index>(active[a] - 1);
                for (std::size_t b = 0; b < active.size(); ++b) {
                    const auto gb = static_cast<Eigen::Index>(active[b] - 1);
                    km.K(ga, gb) += w * der[a] * der[b];
                    km.M(ga, gb) += w * val[a] * val[b];
                }
            }
        }
    }
    return km;
}

}  // namespace specdist
