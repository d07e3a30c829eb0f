#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helpers.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "specdist/eig.hpp"
#include "specdist/errors.hpp"
#include "specdist/galerkin.hpp"
#include "specdist/symbols.hpp"

using namespace specdist;
constexpr double pi = std::numbers::pi;

TEST_CASE("eig_sym on a diagonal matrix") {
    Eigen::MatrixXd d = Eigen::Vector3d(3.0, 1.0, 2.0).asDiagonal();
    CHECK(eig_sym(d).values == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("eig_sym of T_8(2 - 2 cos)") {
    const auto lam = specdist::testing::toeplitz_spectrum(symbols::cosine(2.0, -2.0), 8);
    std::vector<double> expected;
    for (int i = 1; i <= 8; ++i) expected.push_back(2.0 - 2.0 * std::cos(i * pi / 9));
    CHECK(oracle::max_abs_diff(lam, oracle::sorted(expected)) <= 1e-12);
}

TEST_CASE("eigenpair residuals of a random symmetric 50 x 50 matrix") {
    specdist::testing::Gen g(50);
    const Eigen::MatrixXd a = g.symmetric(50);
    const double norm = oracle::sym_norm(a);
    const auto lam = eig_sym(a).values;
    REQUIRE(lam.size() == 50);
    for (std::size_t i = 1; i < lam.size(); ++i) REQUIRE(lam[i - 1] <= lam[i]);
    for (double l : lam) {
        // inverse iteration from a fixed start recovers an eigenvector
        const Eigen::MatrixXd shifted = a - (l + 1e-10 * norm) * Eigen::MatrixXd::Identity(50, 50);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(shifted);
        Eigen::VectorXd x = Eigen::VectorXd::Ones(50);
        for (int it = 0; it < 3; ++it) x = lu.solve(x).normalized();
        CHECK((a * x - l * x).norm() <= 1e-9 * norm);
    }
}

TEST_CASE("complex Hermitian input and rejection of non-Hermitian input") {
    Eigen::MatrixXcd h(2, 2);
    h << 2.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 2.0;
    const auto lam = eig_sym(h).values;
    CHECK(lam[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lam[1] == doctest::Approx(3.0).epsilon(1e-14));
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0 + 1e-8, 1.0;
    CHECK_THROWS_AS(eig_sym(bad), std::invalid_argument);
    h(0, 1) = cplx(0.0, 1.0 + 1e-8);
    CHECK_THROWS_AS(eig_sym(h), std::invalid_argument);
}

TEST_CASE("tridiagonal solver") {
    SUBCASE("classic 2, -1 stencil at n = 4") {
        const std::vector<double> d(4, 2.0);
        const std::vector<double> e(3, -1.0);
        std::vector<double> expected;
        for (int i = 1; i <= 4; ++i) expected.push_back(2.0 - 2.0 * std::cos(i * pi / 5));
        CHECK(oracle::max_abs_diff(eig_sym_tridiag(d, e).values, oracle::sorted(expected)) <= 1e-13);
    }
    SUBCASE("agrees with the dense solver and with Sturm bisection up to n = 200") {
        specdist::testing::Gen g(77);
        for (std::size_t n : {1u, 2u, 17u, 100u, 200u}) {
            const auto d = g.reals(n, -3.0, 3.0);
            const auto e = g.reals(n - 1, -1.0, 1.0);
            const Tridiagonal t{d, e};
            const auto fast = eig_sym_tridiag(d, e).values;
            CHECK(oracle::max_abs_diff(fast, eig_sym(t.dense()).values) <= 1e-10);
            CHECK(oracle::max_abs_diff(fast, oracle::tridiag_bisection(d, e)) <= 1e-10);
        }
    }
    SUBCASE("n = 10000 in well under a minute") {
        const auto t = fd_matrix(symbols::diffusion_coefficient("exp"), 10000);
        const auto start = std::chrono::steady_clock::now();
        const auto lam = eig_sym_tridiag(t.diag, t.offdiag).values;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        CHECK(lam.size() == 10000);
        CHECK(secs < 60.0);
    }
    SUBCASE("constant coefficient finite differences equal T_n(2 - 2 cos)") {
        const auto t = fd_matrix([](double) { return 1.0; }, 50);
        const auto fd = eig_sym_tridiag(t.diag, t.offdiag).values;
        CHECK(oracle::max_abs_diff(fd, specdist::testing::toeplitz_spectrum(symbols::cosine(2.0, -2.0), 50)) <= 1e-12);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(eig_sym_tridiag(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    }
}

TEST_CASE("generalized symmetric-definite problems") {
    specdist::testing::Gen g(8);
    const Eigen::MatrixXd k = g.symmetric(12);
    SUBCASE("identity mass matrix") {
        CHECK(oracle::max_abs_diff(eig_gen_sym_def(k, Eigen::MatrixXd::Identity(12, 12)).values, eig_sym(k).values) <= 1e-10);
    }
    SUBCASE("K = c M") {
        const Eigen::MatrixXd b = g.symmetric(12);
        const Eigen::MatrixXd m = b * b.transpose() + Eigen::MatrixXd::Identity(12, 12);
        for (double v : eig_gen_sym_def(Eigen::MatrixXd(2.5 * m), m).values) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("2 x 2 quadratic C0 pencil at theta = pi against its characteristic polynomial") {
        for (double t : {pi, 0.3, 2.0}) {
            const auto [lo, hi] = oracle::pencil_2x2(oracle::closed_form_f20(t), oracle::closed_form_h20(t));
            const Eigen::MatrixXcd kf = oracle::closed_form_f20(t);
            const Eigen::MatrixXcd mh = oracle::closed_form_h20(t);
            const auto lam = eig_gen_sym_def(kf, mh).values;
            CHECK(lam[0] == doctest::Approx(lo).epsilon(1e-12));
            CHECK(lam[1] == doctest::Approx(hi).epsilon(1e-12));
        }
    }
    SUBCASE("indefinite mass matrix") {
        CHECK_THROWS_AS(eig_gen_sym_def(k, Eigen::MatrixXd(-Eigen::MatrixXd::Identity(12, 12))), NotPositiveDefinite);
    }
}

TEST_CASE("Weyl perturbation bound") {
    const auto report = specdist::testing::weyl_stability(100, 4);
    CHECK_MESSAGE(report.ok(), report.first_failure);
}
