// Python bindings for the main specdist operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specdist/core.hpp"
#include "specdist/eig.hpp"
#include "specdist/errors.hpp"
#include "specdist/experiments.hpp"
#include "specdist/galerkin.hpp"
#include "specdist/match.hpp"
#include "specdist/rearrange.hpp"
#include "specdist/split.hpp"
#include "specdist/symbols.hpp"
#include "specdist/toeplitz.hpp"

namespace py = pybind11;
using namespace specdist;

namespace {

std::vector<double> spectrum_values(const Spectrum& s) { return s.values; }

Eigen::MatrixXcd toeplitz_matrix(const ScalarSymbol& f, std::size_t n) {
    return toeplitz_build(fourier_coeffs(f, n - 1), n);
}

}  // namespace

PYBIND11_MODULE(_specdist, m) {
    m.doc() = "Spectral distance between matrix sequences and their symbols";

    py::register_exception<UnsupportedSize>(m, "UnsupportedSize", PyExc_ValueError);
    py::register_exception<NoPreimage>(m, "NoPreimage", PyExc_ValueError);
    py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", PyExc_ValueError);
    py::register_exception<LemmaViolation>(m, "LemmaViolation", PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::class_<ScalarSymbol>(m, "ScalarSymbol")
        .def_static("univariate", &ScalarSymbol::univariate, py::arg("a"), py::arg("b"), py::arg("f"),
                    py::arg("inf"), py::arg("sup"), py::arg("breakpoints") = std::vector<double>{},
                    "Symbol on [a, b] from a Python callable with declared range [inf, sup].")
        .def("__call__", [](const ScalarSymbol& f, double x) { return f(x); })
        .def("__call__", [](const ScalarSymbol& f, std::vector<double> x) { return f(std::span<const double>(x)); })
        .def_property_readonly("inf", [](const ScalarSymbol& f) { return f.declared_inf; })
        .def_property_readonly("sup", [](const ScalarSymbol& f) { return f.declared_sup; })
        .def_property_readonly("lo", [](const ScalarSymbol& f) { return f.domain.lo(); })
        .def_property_readonly("hi", [](const ScalarSymbol& f) { return f.domain.hi(); });

    py::class_<MatchResult>(m, "MatchResult")
        .def_readonly("m_n", &MatchResult::m_n)
        .def_readonly("sigma", &MatchResult::sigma)
        .def_readonly("tau", &MatchResult::tau)
        .def_readonly("paired_diffs", &MatchResult::paired_diffs);

    m.def("sorted_match", [](std::vector<double> s, std::vector<double> l) { return sorted_match(s, l); },
          py::arg("samples"), py::arg("lambdas"), "Sorted pairing and its max deviation M_n.");
    m.def("min_perm_match", [](std::vector<double> s, std::vector<double> l) { return min_perm_match(s, l); },
          py::arg("samples"), py::arg("lambdas"));
    m.def("essential_range",
          [](const ScalarSymbol& f, std::size_t density) {
              std::vector<std::pair<double, double>> out;
              for (const auto& iv : resolved_essential_range(f, density).intervals()) out.emplace_back(iv.lo, iv.hi);
              return out;
          },
          py::arg("f"), py::arg("density") = 4096, "Essential range as a list of closed intervals.");
    m.def("quantile", [](const ScalarSymbol& f, std::size_t density, double y) { return quantile_oracle(f, density, y); },
          py::arg("f"), py::arg("density"), py::arg("y"));

    m.def("eig_sym", [](const Eigen::MatrixXd& a) { return spectrum_values(eig_sym(a)); }, py::arg("a"));
    m.def("eig_sym", [](const Eigen::MatrixXcd& a) { return spectrum_values(eig_sym(a)); }, py::arg("a"));
    m.def("eig_tridiag",
          [](std::vector<double> d, std::vector<double> e) { return spectrum_values(eig_sym_tridiag(d, e)); },
          py::arg("diag"), py::arg("offdiag"));
    m.def("eig_pencil",
          [](const Eigen::MatrixXd& k, const Eigen::MatrixXd& mm) { return spectrum_values(eig_gen_sym_def(k, mm)); },
          py::arg("k"), py::arg("m"), "Eigenvalues of K x = lambda M x with M positive definite.");

    m.def("fourier_coeff", [](const ScalarSymbol& f, long k) { return fourier_coeff(f, k); }, py::arg("f"), py::arg("k"));
    m.def("toeplitz_matrix", &toeplitz_matrix, py::arg("f"), py::arg("n"), "T_n(f) built from Fourier coefficients.");

    auto sym = m.def_submodule("symbols", "Built-in symbols");
    sym.def("cosine", &symbols::cosine, py::arg("a"), py::arg("b"));
    sym.def("plateau_ramp", &symbols::plateau_ramp);
    sym.def("cos_sum_ramp", &symbols::cos_sum_ramp);
    sym.def("diffusion", &symbols::diffusion_symbol, py::arg("name"));
    sym.def("iga_2d", &symbols::iga_2d_symbol);
    sym.def("indicator_of_one", &symbols::indicator_of_one);
    sym.def("quadratic_c0_value", &symbols::quadratic_c0_value, py::arg("theta"));
    sym.def("quadratic_c0_lower", &symbols::quadratic_c0_lower, py::arg("theta"));
    sym.def("quadratic_c0_upper", &symbols::quadratic_c0_upper, py::arg("theta"));

    py::enum_<GridKind>(m, "GridKind")
        .value("FULL", GridKind::Full)
        .value("NO_ZERO", GridKind::NoZero)
        .value("NO_PI", GridKind::NoPi)
        .value("INTERIOR", GridKind::Interior);
    py::enum_<Family>(m, "Family").value("K", Family::K).value("M", Family::M).value("L", Family::L);

    py::class_<FormulaCheck>(m, "FormulaCheck")
        .def_readonly("passed", &FormulaCheck::pass)
        .def_readonly("max_error", &FormulaCheck::max_error);

    m.def("spline_dim", &spline_dim, py::arg("p"), py::arg("k"), py::arg("n"));
    m.def("assemble_KM",
          [](std::size_t n, std::size_t p, std::size_t k) {
              auto km = assemble_KM(n, p, k);
              return py::make_tuple(km.K, km.M);
          },
          py::arg("n"), py::arg("p"), py::arg("k"), "Reduced stiffness and mass matrices (K, M).");
    m.def("symbol_f", py::overload_cast<std::size_t, std::size_t, double>(&symbol_f), py::arg("p"), py::arg("k"),
          py::arg("theta"));
    m.def("symbol_h", py::overload_cast<std::size_t, std::size_t, double>(&symbol_h), py::arg("p"), py::arg("k"),
          py::arg("theta"));
    m.def("symbol_e_branches", py::overload_cast<std::size_t, std::size_t, double>(&symbol_e_branches), py::arg("p"),
          py::arg("k"), py::arg("theta"));
    m.def("alpha", &alpha, py::arg("p"));
    m.def("mass_alpha", &mass_alpha, py::arg("p"));
    m.def("grid_points", &grid_points, py::arg("kind"), py::arg("n"));
    m.def("grid_assign_M", &grid_assign_M, py::arg("p"), py::arg("k"), py::arg("j"));
    m.def("grid_assign_L", &grid_assign_L, py::arg("p"), py::arg("k"), py::arg("j"));
    m.def("family_spectrum",
          [](Family f, std::size_t n, std::size_t p, std::size_t k) { return spectrum_values(family_spectrum(f, n, p, k)); },
          py::arg("family"), py::arg("n"), py::arg("p"), py::arg("k"));
    m.def("verify_eig_formula",
          [](Family f, std::size_t n, std::size_t p, std::size_t k, const std::vector<GridKind>& assignment, double tol) {
              return verify_eig_formula(family_spectrum(f, n, p, k), family_branches(f, p, k), assignment, n, tol);
          },
          py::arg("family"), py::arg("n"), py::arg("p"), py::arg("k"), py::arg("assignment"), py::arg("tol") = 1e-8);
    m.def("infer_grid_assignment",
          [](Family f, std::size_t n, std::size_t p, std::size_t k, double tol) {
              return infer_grid_assignment(family_spectrum(f, n, p, k), family_branches(f, p, k), p, k, n, tol);
          },
          py::arg("family"), py::arg("n"), py::arg("p"), py::arg("k"), py::arg("tol") = 1e-8);

    m.def("toeplitz_mn_table",
          [](const ScalarSymbol& f, const std::vector<std::size_t>& ns) {
              std::vector<std::pair<std::size_t, double>> out;
              for (const auto& r : toeplitz_mn_table(f, ns)) out.emplace_back(r.n, r.m_n);
              return out;
          },
          py::arg("f"), py::arg("ns"), "(n, M_n) rows for T_n(f) against the shifted uniform grid.");

    py::class_<SplitDemo>(m, "SplitDemo")
        .def_readonly("n", &SplitDemo::n)
        .def_readonly("cardinalities", &SplitDemo::cardinalities)
        .def_readonly("branch_mn", &SplitDemo::branch_mn)
        .def_readonly("initial_bad", &SplitDemo::initial_bad);
    m.def("quadratic_c0_split", &quadratic_c0_split, py::arg("n"));

    m.def("experiment_names", &experiment_names);
    m.def("run_experiment",
          [](const std::string& name, const std::map<std::string, std::string>& params) {
              auto r = run(ExperimentSpec{name, params});
              return py::make_tuple(r.exit_code, r.csv, r.messages);
          },
          py::arg("name"), py::arg("params") = std::map<std::string, std::string>{},
          "Run a registered experiment; returns (exit_code, csv, messages).");
}
