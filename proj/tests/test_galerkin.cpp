#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "properties.hpp"
#include "specdist/eig.hpp"
#include "specdist/experiments.hpp"
#include "specdist/galerkin.hpp"
#include "specdist/symbols.hpp"
#include "specdist/toeplitz.hpp"

using namespace specdist;
constexpr double pi = std::numbers::pi;

TEST_CASE("finite-difference matrix") {
    const auto a = symbols::diffusion_coefficient("cos3");
    const auto t = fd_matrix(a, 9);
    const double h = 0.1;
    CHECK(t.diag[0] == doctest::Approx(a(0.5 * h) + a(1.5 * h)));
    CHECK(t.offdiag[3] == doctest::Approx(-a(4.5 * h)));
    const Eigen::MatrixXd d = t.dense();
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("biquadratic IgA matrix spectrum") {
    for (std::size_t n : {3u, 6u, 12u}) {
        const auto lam = eig_sym(iga_2d_matrix(n)).values;
        std::vector<double> expected;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 1; j <= n; ++j) {
                const double t1 = static_cast<double>(i) * pi / static_cast<double>(n);
                const double t2 = static_cast<double>(j) * pi / static_cast<double>(n);
                const double kappa1 = 1.0 - 2.0 / 3.0 * std::cos(t1) - std::cos(2 * t1) / 3.0;
                const double kappa2 = 1.0 - 2.0 / 3.0 * std::cos(t2) - std::cos(2 * t2) / 3.0;
                const double mu1 = 11.0 / 20.0 + 13.0 / 30.0 * std::cos(t1) + std::cos(2 * t1) / 60.0;
                const double mu2 = 11.0 / 20.0 + 13.0 / 30.0 * std::cos(t2) + std::cos(2 * t2) / 60.0;
                expected.push_back(kappa1 * mu2 + mu1 * kappa2);
            }
        }
        CHECK(oracle::max_abs_diff(lam, oracle::sorted(expected)) <= 1e-8);
        CHECK(lam.front() >= -1e-9);
        CHECK(lam.back() <= 1.5 + 1e-9);
    }
    CHECK(symbols::iga_kappa(0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(iga_2d_matrix(2), std::invalid_argument);
    CHECK(eig_sym(iga_2d_matrix(20)).values.front() < eig_sym(iga_2d_matrix(6)).values.front());
}

TEST_CASE("B-spline basis") {
    specdist::testing::Gen g(31);
    SUBCASE("partition of unity") {
        for (std::size_t p = 1; p <= 6; ++p) {
            for (std::size_t k = 0; k < p; ++k) {
                const auto b = BSplineBasis::open_uniform(p, k, 7);
                for (int t = 0; t < 100; ++t) {
                    const double x = t == 0 ? 0.0 : t == 1 ? 1.0 : g.uniform(0.0, 1.0);
                    double sum = 0.0;
                    for (std::size_t i = 0; i < b.count(); ++i) sum += bspline_eval(b, i, x);
                    REQUIRE(std::abs(sum - 1.0) <= 1e-12);
                }
            }
        }
    }
    SUBCASE("hat functions peak at their knot") {
        const auto b = BSplineBasis::open_uniform(1, 0, 6);
        REQUIRE(b.count() == 7);
        for (std::size_t i = 0; i <= 6; ++i) CHECK(bspline_eval(b, i, i / 6.0) == doctest::Approx(1.0));
    }
    SUBCASE("derivatives against central differences away from knots") {
        for (std::size_t p : {2u, 3u, 5u}) {
            const auto b = BSplineBasis::open_uniform(p, 1, 5);
            for (int t = 0; t < 200; ++t) {
                const double x = g.uniform(0.0, 1.0);
                if (std::abs(x * 5 - std::round(x * 5)) < 1e-3) continue;
                const std::size_t i = g.index(0, b.count() - 1);
                const double h = 1e-6;
                const double fd = (bspline_eval(b, i, x + h) - bspline_eval(b, i, x - h)) / (2 * h);
                REQUIRE(std::abs(bspline_deriv(b, i, x) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
            }
        }
    }
    SUBCASE("boundary removal leaves functions vanishing at 0 and 1") {
        const auto b = BSplineBasis::open_uniform(3, 1, 4);
        for (std::size_t i = 1; i + 1 < b.count(); ++i) {
            CHECK(bspline_eval(b, i, 0.0) == 0.0);
            CHECK(bspline_eval(b, i, 1.0) == 0.0);
        }
        CHECK(b.count() - 2 == spline_dim(3, 1, 4));
    }
    SUBCASE("index out of range") {
        const auto b = BSplineBasis::open_uniform(2, 0, 3);
        CHECK_THROWS_AS(bspline_eval(b, b.count(), 0.5), std::invalid_argument);
    }
}

TEST_CASE("reference blocks and symbols") {
    SUBCASE("quadratic C0 symbols against the closed-form matrices") {
        for (int i = 0; i <= 20; ++i) {
            const double t = pi * i / 20.0;
            CHECK((symbol_f(2, 0, t) - oracle::closed_form_f20(t)).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((symbol_h(2, 0, t) - oracle::closed_form_h20(t)).cwiseAbs().maxCoeff() <= 1e-12);
        }
        const Eigen::MatrixXcd at_pi = symbol_f(2, 0, pi);
        CHECK(std::abs(at_pi(0, 0) - cplx(4.0 / 3.0)) <= 1e-12);
        CHECK(std::abs(at_pi(0, 1)) <= 1e-12);
        CHECK(std::abs(at_pi(1, 1) - cplx(4.0)) <= 1e-12);
    }
    SUBCASE("linear C0 symbols") {
        for (double t : {0.0, 0.4, 1.7, pi}) {
            CHECK(std::abs(symbol_f(1, 0, t)(0, 0) - cplx(2.0 - 2.0 * std::cos(t))) <= 1e-12);
            CHECK(std::abs(symbol_h(1, 0, t)(0, 0) - cplx((4.0 + 2.0 * std::cos(t)) / 6.0)) <= 1e-12);
        }
    }
    SUBCASE("blocks against Simpson integration of the reference B-splines") {
        for (auto [p, k] : {std::pair<std::size_t, std::size_t>{3, 1}, {4, 0}, {5, 2}}) {
            const auto rb = reference_blocks(p, k);
            const auto basis = BSplineBasis::reference(p, k);
            const std::size_t m = p - k;
            REQUIRE(rb.K.size() == rb.eta);
            for (std::size_t l = 0; l < rb.eta; ++l) {
                for (std::size_t r = 0; r < m; ++r) {
                    for (std::size_t s = 0; s < m; ++s) {
                        // beta_r(t - l) is function r translated by l knot units
                        const auto shifted = [&](auto fn, double t) {
                            const double u = t - static_cast<double>(l);
                            return u < 0.0 || u > static_cast<double>(rb.eta) ? 0.0 : fn(r, u);
                        };
                        double kk = 0.0;
                        double mm = 0.0;
                        for (std::size_t span = 0; span < rb.eta; ++span) {
                            const double a = static_cast<double>(span);
                            const double lo = a + 1e-13;
                            const double hi = a + 1.0 - 1e-13;
                            kk += oracle::simpson(
                                [&](double t) {
                                    return basis.deriv(s, t) *
                                           shifted([&](std::size_t q, double u) { return basis.deriv(q, u); }, t);
                                },
                                lo, hi, 400);
                            mm += oracle::simpson(
                                [&](double t) {
                                    return basis.eval(s, t) *
                                           shifted([&](std::size_t q, double u) { return basis.eval(q, u); }, t);
                                },
                                lo, hi, 400);
                        }
                        CHECK(std::abs(rb.K[l](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) - kk) <= 1e-8);
                        CHECK(std::abs(rb.M[l](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) - mm) <= 1e-8);
                    }
                }
            }
        }
    }
    SUBCASE("Hermitian, ordered and definite for p up to 8") {
        specdist::testing::Gen g(12);
        for (std::size_t p = 1; p <= 8; ++p) {
            for (std::size_t k = 0; k <= 1 && k < p; ++k) {
                const auto rb = reference_blocks(p, k);
                const Eigen::MatrixXd m0 = rb.M[0];
                CHECK(Eigen::LLT<Eigen::MatrixXd>(m0).info() == Eigen::Success);
                CHECK(eig_sym(rb.K[0]).values.front() >= -1e-12);
                for (int t = 0; t < 100; ++t) {
                    const double th = g.uniform(0.0, pi);
                    const Eigen::MatrixXcd f = symbol_f(rb, th);
                    const Eigen::MatrixXcd h = symbol_h(rb, th);
                    REQUIRE(max_hermitian_defect(f) <= 1e-12);
                    REQUIRE(max_hermitian_defect(h) <= 1e-12);
                    REQUIRE(Eigen::LLT<Eigen::MatrixXcd>(h).info() == Eigen::Success);
                    const auto e = symbol_e_branches(rb, th);
                    REQUIRE(e.size() == p - k);
                    for (std::size_t j = 0; j < e.size(); ++j) {
                        REQUIRE(e[j] >= -1e-10);
                        if (j > 0) REQUIRE(e[j - 1] <= e[j]);
                    }
                }
            }
        }
    }
}

TEST_CASE("Galerkin assembly") {
    SUBCASE("linear C0 against hand integration") {
        for (std::size_t n : {2u, 5u, 11u}) {
            const auto km = assemble_KM(n, 1, 0);
            const auto [k, m] = oracle::hat_KM(n);
            CHECK((km.K - k).cwiseAbs().maxCoeff() <= 1e-12 * n);
            CHECK((km.M - m).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
    SUBCASE("quadratic C0 stiffness equals the 4, -2 block pattern") {
        for (std::size_t n : {2u, 3u, 8u, 20u}) {
            const Eigen::MatrixXd a = assemble_KM(n, 2, 0).K / static_cast<double>(n);
            REQUIRE(a.rows() == static_cast<Eigen::Index>(2 * n - 1));
            CHECK((a - quadratic_c0_matrix(n)).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(a(0, 0) == doctest::Approx(4.0 / 3.0));
            CHECK(a(0, 1) == doctest::Approx(-2.0 / 3.0));
            CHECK(a(1, 1) == doctest::Approx(8.0 / 3.0));
        }
    }
    SUBCASE("symmetric positive definite for p <= 8, k in {0, 1}, n <= 20") {
        for (std::size_t p = 1; p <= 8; ++p) {
            for (std::size_t k = 0; k <= 1 && k < p; ++k) {
                for (std::size_t n = 2; n <= 20; n += 3) {
                    const auto km = assemble_KM(n, p, k);
                    REQUIRE(km.K.rows() == static_cast<Eigen::Index>(spline_dim(p, k, n)));
                    REQUIRE((km.K - km.K.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * km.K.cwiseAbs().maxCoeff());
                    REQUIRE((km.M - km.M.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
                    REQUIRE(Eigen::LLT<Eigen::MatrixXd>(km.K).info() == Eigen::Success);
                    REQUIRE(Eigen::LLT<Eigen::MatrixXd>(km.M).info() == Eigen::Success);
                }
            }
        }
        CHECK_THROWS_AS(assemble_KM(1, 2, 0), std::invalid_argument);
    }
    SUBCASE("interior entries follow the block Toeplitz pattern of the reference blocks") {
        for (std::size_t p = 1; p <= 6; ++p) {
            for (std::size_t k = 0; k <= 1 && k < p; ++k) {
                const auto rb = reference_blocks(p, k);
                const std::size_t n = 2 * rb.eta + 3;
                const auto basis = BSplineBasis::open_uniform(p, k, n);
                const auto km = assemble_KM(n, p, k);
                const std::size_t m = p - k;
                const auto& t = basis.knots();
                const double nn = static_cast<double>(n);
                // full-basis function g starts at knot I/n as reference function r
                const auto locate = [&](std::size_t g, std::size_t& block, std::size_t& r) {
                    block = static_cast<std::size_t>(std::llround(t[g] * nn));
                    r = g - (p + 1 + (block - 1) * m);
                };
                std::size_t compared = 0;
                for (std::size_t g1 = 1; g1 + 1 < basis.count(); ++g1) {
                    for (std::size_t g2 = 1; g2 + 1 < basis.count(); ++g2) {
                        if (t[g1] <= 0.0 || t[g2] <= 0.0 || t[g1 + p + 1] >= 1.0 || t[g2 + p + 1] >= 1.0) continue;
                        std::size_t i1, r, i2, s;
                        locate(g1, i1, r);
                        locate(g2, i2, s);
                        const long l = static_cast<long>(i1) - static_cast<long>(i2);
                        double expected_k = 0.0;
                        double expected_m = 0.0;
                        if (static_cast<std::size_t>(std::abs(l)) < rb.eta) {
                            const auto ri = static_cast<Eigen::Index>(r);
                            const auto si = static_cast<Eigen::Index>(s);
                            expected_k = l >= 0 ? rb.K[l](ri, si) : rb.K[-l](si, ri);
                            expected_m = l >= 0 ? rb.M[l](ri, si) : rb.M[-l](si, ri);
                        }
                        const auto a = static_cast<Eigen::Index>(g1 - 1);
                        const auto b = static_cast<Eigen::Index>(g2 - 1);
                        REQUIRE(std::abs(km.K(a, b) / nn - expected_k) <= 1e-12);
                        REQUIRE(std::abs(km.M(a, b) * nn - expected_m) <= 1e-12);
                        ++compared;
                    }
                }
                CHECK(compared > 0);
            }
        }
    }
}

TEST_CASE("integer sequence and alpha") {
    CHECK(seq_a(1) == 3);
    CHECK(seq_a(2) == 6);
    CHECK(seq_a(3) == 7);
    // a(m) = m + floor(sqrt(8m)); 8m is a perfect square at m = 2, 8, 18, ...
    for (long long m = 1; m <= 2000; ++m) {
        long long r = 0;
        while ((r + 1) * (r + 1) <= 8 * m) ++r;
        REQUIRE(seq_a(m) == m + r);
    }
    CHECK(alpha(3) == 1);
    for (long long p = 3; p <= 100; ++p) {
        REQUIRE(p - alpha(p) >= 2);
        REQUIRE(p - mass_alpha(p) >= 2);
    }
    CHECK_THROWS_AS(alpha(2), std::invalid_argument);
    CHECK_THROWS_AS(mass_alpha(2), std::invalid_argument);
    CHECK_THROWS_AS(seq_a(0), std::invalid_argument);
}

TEST_CASE("mass_alpha thresholds") {
    // first p with each value: 3, 6, 12, 19, 28, 39 (gaps a(1), a(2), ...)
    const long long starts[] = {3, 6, 12, 19, 28, 39};
    for (long long v = 1; v <= 5; ++v) {
        CHECK(mass_alpha(starts[v - 1]) == v);
        CHECK(mass_alpha(starts[v] - 1) == v);
        CHECK(mass_alpha(starts[v]) == v + 1);
    }
}

TEST_CASE("Theta grids") {
    const auto full = grid_points(GridKind::Full, 2);
    REQUIRE(full.size() == 3);
    CHECK(full[0] == 0.0);
    CHECK(full[1] == doctest::Approx(pi / 2));
    CHECK(full[2] == doctest::Approx(pi));
    const auto inner = grid_points(GridKind::Interior, 2);
    REQUIRE(inner.size() == 1);
    CHECK(inner[0] == doctest::Approx(pi / 2));
    for (std::size_t n : {1u, 4u, 9u}) {
        CHECK(grid_count(GridKind::Full, n) == n + 1);
        CHECK(grid_count(GridKind::NoZero, n) == n);
        CHECK(grid_count(GridKind::NoPi, n) == n);
        CHECK(grid_count(GridKind::Interior, n) == n - 1);
        CHECK(grid_points(GridKind::NoZero, n).front() > 0.0);
        CHECK(grid_points(GridKind::NoPi, n).back() < pi);
    }
}

TEST_CASE("grid assignments") {
    CHECK(grid_assign_M(3, 0, 1) == GridKind::NoPi);
    CHECK(grid_assign_M(3, 0, 3) == GridKind::Interior);
    CHECK(grid_assign_M(2, 1, 1) == GridKind::NoZero);
    CHECK(grid_assign_L(2, 0, 2) == GridKind::Interior);
    CHECK_THROWS_AS(grid_assign_M(3, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(grid_assign_L(3, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(grid_assign_M(2, 2, 1), std::invalid_argument);

    SUBCASE("grid sizes add up to the matrix size for p <= 20") {
        for (std::size_t p = 1; p <= 20; ++p) {
            for (std::size_t k = 0; k <= 1 && k < p; ++k) {
                for (std::size_t n : {2u, 3u, 10u}) {
                    std::size_t m_total = 0;
                    std::size_t l_total = 0;
                    for (std::size_t j = 1; j <= p - k; ++j) {
                        m_total += grid_count(grid_assign_M(p, k, j), n);
                        l_total += grid_count(grid_assign_L(p, k, j), n);
                    }
                    REQUIRE(m_total == spline_dim(p, k, n));
                    REQUIRE(l_total == spline_dim(p, k, n));
                }
            }
        }
    }
}

namespace {

std::vector<GridKind> stated(Family f, std::size_t p, std::size_t k) {
    std::vector<GridKind> a;
    for (std::size_t j = 1; j <= p - k; ++j) a.push_back(f == Family::M ? grid_assign_M(p, k, j) : grid_assign_L(p, k, j));
    return a;
}

}  // namespace

TEST_CASE("exact eigenvalue formulas for nM and n^-2 L") {
    for (Family f : {Family::M, Family::L}) {
        for (std::size_t p = 1; p <= 8; ++p) {
            for (std::size_t k = 0; k <= 1 && k < p; ++k) {
                const auto branches = family_branches(f, p, k);
                for (std::size_t n : {2u, 7u, 20u}) {
                    const auto c = verify_eig_formula(family_spectrum(f, n, p, k), branches, stated(f, p, k), n, 1e-8);
                    INFO(to_string(f), " p=", p, " k=", k, " n=", n, " err=", c.max_error);
                    CHECK(c.pass);
                }
            }
        }
    }
}

TEST_CASE("the literal alpha misplaces the full grid for k = 1, p = 6") {
    const std::size_t p = 6;
    const std::size_t n = 9;
    std::vector<GridKind> literal;
    const auto pivot = static_cast<std::size_t>(static_cast<long long>(p) - alpha(static_cast<long long>(p)) - 1);
    for (std::size_t j = 1; j < p; ++j) {
        const bool odd = (p + j) % 2 == 1;
        literal.push_back(j == pivot ? GridKind::Full
                          : j == p - 1 ? GridKind::Interior
                          : j < pivot ? (odd ? GridKind::NoZero : GridKind::NoPi)
                                      : (odd ? GridKind::NoPi : GridKind::NoZero));
    }
    const auto spectrum = family_spectrum(Family::M, n, p, 1);
    const auto branches = family_branches(Family::M, p, 1);
    CHECK_FALSE(verify_eig_formula(spectrum, branches, literal, n, 1e-8).pass);
    CHECK(verify_eig_formula(spectrum, branches, stated(Family::M, p, 1), n, 1e-8).pass);
}

TEST_CASE("swapping NoZero and NoPi on one branch breaks the formula") {
    auto a = stated(Family::M, 4, 0);
    REQUIRE(a[0] == GridKind::NoZero);
    a[0] = GridKind::NoPi;
    const auto c = verify_eig_formula(family_spectrum(Family::M, 9, 4, 0), family_branches(Family::M, 4, 0), a, 9, 1e-8);
    CHECK_FALSE(c.pass);
    CHECK(c.max_error > 1e-4);
}

TEST_CASE("verify_eig_formula rejects a count mismatch") {
    const auto s = family_spectrum(Family::M, 5, 2, 0);
    CHECK_THROWS_AS(verify_eig_formula(s, family_branches(Family::M, 2, 0), {GridKind::Full, GridKind::Full}, 5, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("grid inference for the stiffness family") {
    SUBCASE("p = 2, k = 0 gives NoZero then Interior") {
        for (std::size_t n : {5u, 10u, 20u}) {
            const auto a = infer_grid_assignment(family_spectrum(Family::K, n, 2, 0), family_branches(Family::K, 2, 0), 2, 0, n, 1e-8);
            REQUIRE(a.has_value());
            CHECK(*a == std::vector<GridKind>{GridKind::NoZero, GridKind::Interior});
        }
    }
    SUBCASE("inference on nM at p = 3, k = 0 agrees with the stated assignment") {
        const auto a = infer_grid_assignment(family_spectrum(Family::M, 8, 3, 0), family_branches(Family::M, 3, 0), 3, 0, 8, 1e-8);
        REQUIRE(a.has_value());
        CHECK(*a == stated(Family::M, 3, 0));
    }
    SUBCASE("p = 1 has exactly one count-feasible assignment") {
        for (Family f : {Family::K, Family::M, Family::L}) {
            std::size_t feasible = 0;
            for (GridKind g : {GridKind::Full, GridKind::NoZero, GridKind::NoPi, GridKind::Interior}) {
                feasible += grid_count(g, 6) == spline_dim(1, 0, 6) ? 1 : 0;
            }
            CHECK(feasible == 1);
            const auto a = infer_grid_assignment(family_spectrum(f, 6, 1, 0), family_branches(f, 1, 0), 1, 0, 6, 1e-8);
            REQUIRE(a.has_value());
            CHECK(*a == std::vector<GridKind>{GridKind::Interior});
        }
    }
    SUBCASE("a spectrum that fits no assignment") {
        auto s = family_spectrum(Family::K, 6, 2, 0);
        s.values.back() += 1.0;
        CHECK_FALSE(infer_grid_assignment(s, family_branches(Family::K, 2, 0), 2, 0, 6, 1e-8).has_value());
    }
}

TEST_CASE("stiffness spectrum lies within the branch range") {
    for (std::size_t p = 1; p <= 6; ++p) {
        for (std::size_t k = 0; k <= 1 && k < p; ++k) {
            const auto branches = family_branches(Family::K, p, k);
            // sampled extremes, polished by golden-section search around the best sample
            const int samples = 2000;
            const auto extreme = [&](bool upper) {
                const auto value = [&](double t) { return upper ? branches(t).back() : -branches(t).front(); };
                int best = 0;
                for (int i = 1; i <= samples; ++i) {
                    if (value(pi * i / samples) > value(pi * best / samples)) best = i;
                }
                double a = pi * std::max(0, best - 1) / samples;
                double b = pi * std::min(samples, best + 1) / samples;
                const double r = (std::sqrt(5.0) - 1.0) / 2.0;
                for (int it = 0; it < 80; ++it) {
                    const double c = b - r * (b - a);
                    const double d = a + r * (b - a);
                    if (value(c) > value(d)) b = d;
                    else a = c;
                }
                const double v = std::max({value(a), value(b), value(pi * best / samples)});
                return upper ? v : -v;
            };
            const double lo = extreme(false);
            const double hi = extreme(true);
            const auto s = family_spectrum(Family::K, 12, p, k).values;
            CHECK(s.front() >= lo - 1e-9);
            CHECK(s.back() <= hi + 1e-9);
        }
    }
}
