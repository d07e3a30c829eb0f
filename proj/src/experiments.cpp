#include "specdist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "specdist/parallel.hpp"
#include "specdist/symbols.hpp"
#include "specdist/toeplitz.hpp"

namespace specdist {

namespace {

constexpr double kPi = std::numbers::pi;

Spectrum hermitian_spectrum(const Eigen::MatrixXcd& t) {
    const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    if (t.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) return eig_sym(Eigen::MatrixXd(t.real()));
    return eig_sym(t);
}

std::size_t exact_sqrt(std::size_t n) {
    auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    while (m * m > n) --m;
    while ((m + 1) * (m + 1) <= n) ++m;
    if (m * m != n) throw std::invalid_argument("n = " + std::to_string(n) + " is not a perfect square");
    return m;
}

}  // namespace

std::vector<MnRow> toeplitz_mn_table(const ScalarSymbol& f, const std::vector<std::size_t>& ns) {
    if (ns.empty()) return {};
    const std::size_t nmax = *std::max_element(ns.begin(), ns.end());
    if (ns.front() == 0 || *std::min_element(ns.begin(), ns.end()) == 0) {
        throw std::invalid_argument("toeplitz_mn_table: n must be positive");
    }
    const FourierCoeffs coeffs = fourier_coeffs(f, nmax - 1);

    std::vector<std::vector<double>> spectra(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) { spectra[i] = hermitian_spectrum(toeplitz_build(coeffs, ns[i])).values; });
    std::map<std::size_t, RealMultiset> by_n;
    for (std::size_t i = 0; i < ns.size(); ++i) by_n.emplace(ns[i], RealMultiset(spectra[i]));

    const ScalarSymbol half = f.on(Rect::interval(0.0, kPi), f.declared_inf, f.declared_sup);
    const GridFamily grid = [](std::size_t n) {
        std::vector<double> pts(n);
        for (std::size_t i = 1; i <= n; ++i) pts[i - 1] = static_cast<double>(i) * kPi / static_cast<double>(n + 1);
        return make_grid_1d(0.0, kPi, std::move(pts));
    };
    return mn_curve(half, grid, by_n, ns);
}

std::vector<MnRow> fd_mn_table(const std::string& coef, const std::vector<std::size_t>& ns) {
    const auto a = symbols::diffusion_coefficient(coef);
    for (std::size_t n : ns) exact_sqrt(n);
    std::vector<std::vector<double>> spectra(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) {
        const Tridiagonal t = fd_matrix(a, ns[i]);
        spectra[i] = eig_sym_tridiag(t.diag, t.offdiag).values;
    });
    std::map<std::size_t, RealMultiset> by_n;
    for (std::size_t i = 0; i < ns.size(); ++i) by_n.emplace(ns[i], RealMultiset(spectra[i]));
    const auto dims = [](std::size_t n) {
        const std::size_t m = exact_sqrt(n);
        return Dims{m, m};
    };
    return mn_curve_2d(symbols::diffusion_symbol(coef), dims, by_n, ns);
}

double cosine_exactness(double a, double b, std::size_t n) {
    const FourierCoeffs c(1, {b / 2.0, a, b / 2.0});
    const Spectrum s = hermitian_spectrum(toeplitz_build(c, n, true));
    std::vector<double> samples(n);
    for (std::size_t i = 1; i <= n; ++i) {
        samples[i - 1] = a + b * std::cos(static_cast<double>(i) * kPi / static_cast<double>(n + 1));
    }
    return sorted_match(samples, s.values).m_n;
}

RangedError iga_2d_exactness(std::size_t n) {
    const Spectrum s = eig_sym(iga_2d_matrix(n));
    const ScalarSymbol f = symbols::iga_2d_symbol();
    const AUGrid g = make_uniform_grid(f.domain, {n, n});
    std::vector<double> samples;
    samples.reserve(g.size());
    for (const auto& p : g.points()) samples.push_back(f(p));
    return {sorted_match(samples, s.values).m_n, s.values.front(), s.values.back()};
}

Eigen::MatrixXd quadratic_c0_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("quadratic_c0_matrix: need n >= 1");
    Eigen::MatrixXcd b0(2, 2);
    b0 << 4.0, -2.0, -2.0, 8.0;
    Eigen::MatrixXcd b1(2, 2);
    b1 << 0.0, -2.0, 0.0, -2.0;
    const auto c = BlockFourierCoeffs::from_blocks({{0, b0 / 3.0}, {1, b1 / 3.0}, {-1, b1.adjoint() / 3.0}});
    const Eigen::MatrixXcd t = block_toeplitz_build(c, n, true);
    const auto m = static_cast<Eigen::Index>(2 * n - 1);
    return t.topLeftCorner(m, m).real();
}

double quadratic_c0_exactness(std::size_t n) {
    const Spectrum s = eig_sym(quadratic_c0_matrix(n));
    std::vector<double> samples;
    for (std::size_t i = 1; i <= n; ++i) {
        samples.push_back(symbols::quadratic_c0_lower(static_cast<double>(i) * kPi / static_cast<double>(n)));
    }
    for (std::size_t i = 1; i < n; ++i) {
        samples.push_back(symbols::quadratic_c0_upper(static_cast<double>(i) * kPi / static_cast<double>(n)));
    }
    return sorted_match(samples, s.values).m_n;
}

double indicator_mn(std::size_t n) {
    const ScalarSymbol f = symbols::indicator_of_one();
    const GridFamily grid = [](std::size_t m) { return make_uniform_grid(Rect::interval(0.0, 1.0), {m}); };
    const std::map<std::size_t, RealMultiset> by_n{{n, RealMultiset(std::vector<double>(n, 0.0))}};
    const std::vector<std::size_t> ns{n};
    return mn_curve(f, grid, by_n, ns).front().m_n;
}

SplitDemo quadratic_c0_split(std::size_t n) {
    if (n < 2) throw std::invalid_argument("quadratic_c0_split: need n >= 2");
    const Spectrum s = eig_sym(quadratic_c0_matrix(n));
    const RealMultiset lambdas(s.values);

    // Reference: the n smallest eigenvalues form the lower branch.
    std::vector<std::size_t> ref(s.size());
    const auto order = sort_permutation(s.values);
    for (std::size_t r = 0; r < order.size(); ++r) ref[order[r]] = r < n ? 0 : 1;
    const Partition reference(s.values, ref, 2);

    constexpr double delta = 1e-9;
    const std::vector<IntervalUnion> ranges{IntervalUnion::single(0.0, 4.0 / 3.0).expanded(delta),
                                            IntervalUnion::single(8.0 / 3.0, 4.0).expanded(delta)};
    std::vector<std::vector<double>> grids(2);
    for (std::size_t i = 1; i <= n; ++i) grids[0].push_back(static_cast<double>(i) * kPi / static_cast<double>(n));
    for (std::size_t i = 1; i < n; ++i) grids[1].push_back(static_cast<double>(i) * kPi / static_cast<double>(n));

    const MatrixSymbol ms = symbols::quadratic_c0();
    const Partition init = initial_split(lambdas, ms, reference.cardinalities());
    RefineStats stats;
    refine_split(init, ranges, reference, &stats);
    const SplitMatch sm = split_and_match(lambdas, ms, reference, ranges, grids);

    SplitDemo out;
    out.n = n;
    out.cardinalities = sm.partition.cardinalities();
    for (const auto& m : sm.branches) out.branch_mn.push_back(m.m_n);
    out.initial_bad = stats.initial_bad;
    return out;
}

std::string assignment_string(const std::vector<GridKind>& assignment) {
    if (assignment.empty()) return "none";
    std::string s;
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        if (j) s += ';';
        s += to_string(assignment[j]);
    }
    return s;
}

FamilyCheck check_family(Family family, std::size_t p, std::size_t k, std::size_t n, double tol) {
    FamilyCheck out{family, p, k, n, {}, {}};
    const Spectrum s = family_spectrum(family, n, p, k);
    const BranchFn branches = family_branches(family, p, k);
    if (family == Family::K) {
        if (auto a = infer_grid_assignment(s, branches, p, k, n, tol)) {
            out.assignment = *a;
        } else {
            out.check = {false, std::numeric_limits<double>::infinity()};
            return out;
        }
    } else {
        for (std::size_t j = 1; j <= p - k; ++j) {
            out.assignment.push_back(family == Family::M ? grid_assign_M(p, k, j) : grid_assign_L(p, k, j));
        }
    }
    out.check = verify_eig_formula(s, branches, out.assignment, n, tol);
    return out;
}

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

std::string sig12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class Params {
public:
    Params(const ExperimentSpec& spec, std::set<std::string> allowed) : params_(spec.params) {
        for (const auto& [key, value] : params_) {
            if (!allowed.count(key)) throw UsageError("unknown parameter '" + key + "' for " + spec.name);
        }
    }

    std::string str(const std::string& key, const std::string& fallback) const {
        const auto it = params_.find(key);
        return it == params_.end() ? fallback : it->second;
    }

    double real(const std::string& key, double fallback) const {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw UsageError("parameter '" + key + "' expects a number, got '" + it->second + "'");
        }
    }

    std::size_t count(const std::string& key, std::size_t fallback) const {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        return parse_count(key, it->second);
    }

    std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> fallback) const {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        std::vector<std::size_t> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_count(key, item));
        if (out.empty()) throw UsageError("parameter '" + key + "' is empty");
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    static std::size_t parse_count(const std::string& key, const std::string& text) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(text, &used);
            if (used != text.size() || v <= 0) throw std::invalid_argument("not positive");
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw UsageError("parameter '" + key + "' expects positive integers, got '" + text + "'");
        }
    }

    std::map<std::string, std::string> params_;
};

ExperimentResult mn_table(const ExperimentSpec& spec) {
    const Params p(spec, {"example", "ns"});
    const std::string example = p.str("example", "e2");
    ScalarSymbol f = example == "e2"   ? symbols::plateau_ramp()
                     : example == "e3" ? symbols::cos_sum_ramp()
                                       : throw UsageError("mn-table: --example must be e2 or e3");
    const auto ns = p.counts("ns", {8, 16, 32, 64, 128, 256, 512, 1024});
    ExperimentResult r;
    r.csv = "n,M_n,M_n_full\n";
    for (const auto& row : toeplitz_mn_table(f, ns)) {
        r.csv += std::to_string(row.n) + "," + fixed4(row.m_n) + "," + sig12(row.m_n) + "\n";
    }
    return r;
}

ExperimentResult mn_table2d(const ExperimentSpec& spec) {
    const Params p(spec, {"coef", "ns"});
    const std::string coef = p.str("coef", "exp");
    if (coef != "exp" && coef != "cos3" && coef != "xlog") throw UsageError("mn-table2d: --coef must be exp, cos3 or xlog");
    const auto ns = p.counts("ns", {900, 1600, 2500, 3600, 4900, 6400, 8100, 10000});
    for (std::size_t n : ns) {
        const auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (m * m != n) throw UsageError("mn-table2d: n = " + std::to_string(n) + " is not a perfect square");
    }
    ExperimentResult r;
    r.csv = "n,M_n,M_n_full\n";
    for (const auto& row : fd_mn_table(coef, ns)) {
        r.csv += std::to_string(row.n) + "," + fixed4(row.m_n) + "," + sig12(row.m_n) + "\n";
    }
    return r;
}

ExperimentResult exactness(const ExperimentSpec& spec) {
    const Params p(spec, {"example", "ns", "a", "b"});
    const std::string example = p.str("example", "e1");
    ExperimentResult r;
    r.csv = "n,max_error,pass\n";
    std::vector<std::size_t> ns;
    std::vector<double> errors;
    std::vector<bool> passes;
    if (example == "e1") {
        const double a = p.real("a", 2.0);
        const double b = p.real("b", -2.0);
        ns = p.counts("ns", {10, 50, 100, 200});
        const double tol = 1e-10 * std::max(1.0, std::abs(a) + std::abs(b));
        for (std::size_t n : ns) {
            errors.push_back(cosine_exactness(a, b, n));
            passes.push_back(errors.back() <= tol);
        }
    } else if (example == "e4p") {
        ns = p.counts("ns", {5, 10, 20, 30});
        for (std::size_t n : ns) {
            if (n < 3) throw UsageError("exactness e4p: n must be at least 3");
            const RangedError e = iga_2d_exactness(n);
            errors.push_back(e.max_error);
            passes.push_back(e.max_error <= 1e-8 && e.min_eig >= -1e-9 && e.max_eig <= 1.5 + 1e-9);
        }
    } else if (example == "e5") {
        ns = p.counts("ns", {20, 50, 100});
        for (std::size_t n : ns) {
            errors.push_back(quadratic_c0_exactness(n));
            passes.push_back(errors.back() <= 1e-8);
        }
    } else {
        throw UsageError("exactness: --example must be e1, e4p or e5");
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::string row = std::to_string(ns[i]) + "," + sig12(errors[i]) + "," + (passes[i] ? "1" : "0");
        r.csv += row + "\n";
        if (!passes[i]) r.messages.push_back(row);
    }
    r.exit_code = r.messages.empty() ? 0 : 1;
    return r;
}

ExperimentResult counterexample(const ExperimentSpec& spec) {
    const Params p(spec, {"ns"});
    const auto ns = p.counts("ns", {10, 100, 1000});
    ExperimentResult r;
    r.csv = "n,M_n,M_n_full\n";
    for (std::size_t n : ns) {
        const double m = indicator_mn(n);
        const std::string row = std::to_string(n) + "," + fixed4(m) + "," + sig12(m);
        r.csv += row + "\n";
        if (m != 1.0) r.messages.push_back(row);
    }
    r.exit_code = r.messages.empty() ? 0 : 1;
    return r;
}

ExperimentResult split_demo(const ExperimentSpec& spec) {
    const Params p(spec, {"example", "n", "tol"});
    if (p.str("example", "e5") != "e5") throw UsageError("split-demo: --example must be e5");
    const std::size_t n = p.count("n", 20);
    if (n < 2) throw UsageError("split-demo: n must be at least 2");
    const double tol = p.real("tol", 1e-8);
    const SplitDemo d = quadratic_c0_split(n);
    ExperimentResult r;
    r.csv = "branch,cardinality,M_n\n";
    for (std::size_t j = 0; j < d.cardinalities.size(); ++j) {
        const std::string row = std::to_string(j + 1) + "," + std::to_string(d.cardinalities[j]) + "," + sig12(d.branch_mn[j]);
        r.csv += row + "\n";
        if (!(d.branch_mn[j] <= tol)) r.messages.push_back(row);
    }
    r.exit_code = r.messages.empty() ? 0 : 1;
    return r;
}

std::vector<std::pair<std::size_t, std::size_t>> pk_pairs(std::size_t pmax) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k <= 1; ++k) {
        for (std::size_t p = k + 1; p <= pmax; ++p) out.emplace_back(p, k);
    }
    return out;
}

ExperimentResult bspline_verify(const ExperimentSpec& spec) {
    const Params p(spec, {"family", "pmax", "nmax", "tol"});
    const std::string name = p.str("family", "M");
    const Family family = name == "K"   ? Family::K
                          : name == "M" ? Family::M
                          : name == "L" ? Family::L
                                        : throw UsageError("bspline-verify: --family must be K, M or L");
    const std::size_t pmax = p.count("pmax", 8);
    const std::size_t nmax = p.count("nmax", 20);
    const double tol = p.real("tol", 1e-8);
    if (nmax < 2) throw UsageError("bspline-verify: nmax must be at least 2");

    struct Job {
        std::size_t p, k, n;
    };
    std::vector<Job> jobs;
    for (const auto& [pp, kk] : pk_pairs(pmax)) {
        for (std::size_t n = 2; n <= nmax; ++n) jobs.push_back({pp, kk, n});
    }
    std::vector<FamilyCheck> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { results[i] = check_family(family, jobs[i].p, jobs[i].k, jobs[i].n, tol); });

    ExperimentResult r;
    r.csv = "family,p,k,n,assignment,max_error,pass\n";
    for (const auto& c : results) {
        const std::string row = to_string(family) + "," + std::to_string(c.p) + "," + std::to_string(c.k) + "," +
                                std::to_string(c.n) + "," + assignment_string(c.assignment) + "," +
                                sig12(c.check.max_error) + "," + (c.check.pass ? "1" : "0");
        r.csv += row + "\n";
        if (!c.check.pass) r.messages.push_back(row);
    }
    r.exit_code = r.messages.empty() ? 0 : 1;
    return r;
}

ExperimentResult grid_infer(const ExperimentSpec& spec) {
    const Params p(spec, {"pmax", "nmax", "tol", "ns"});
    const std::size_t pmax = p.count("pmax", 5);
    const std::size_t nmax = p.count("nmax", 20);
    const double tol = p.real("tol", 1e-8);
    if (nmax < 2) throw UsageError("grid-infer: nmax must be at least 2");
    std::vector<std::size_t> fallback;
    for (std::size_t n : {std::size_t{5}, std::size_t{10}, std::size_t{20}}) {
        if (n <= nmax) fallback.push_back(n);
    }
    if (fallback.empty() || fallback.back() != nmax) fallback.push_back(nmax);
    const auto ns = p.counts("ns", fallback);
    for (std::size_t n : ns) {
        if (n < 2) throw UsageError("grid-infer: every n must be at least 2");
    }

    const auto pairs = pk_pairs(pmax);
    std::vector<FamilyCheck> results(pairs.size() * ns.size());
    parallel_for(results.size(), [&](std::size_t i) {
        const auto& [pp, kk] = pairs[i / ns.size()];
        results[i] = check_family(Family::K, pp, kk, ns[i % ns.size()], tol);
    });

    ExperimentResult r;
    r.csv = "p,k,n,assignment,max_error,stable\n";
    for (std::size_t q = 0; q < pairs.size(); ++q) {
        bool stable = true;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto& c = results[q * ns.size() + i];
            stable = stable && !c.assignment.empty() && c.assignment == results[q * ns.size()].assignment;
        }
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto& c = results[q * ns.size() + i];
            const std::string row = std::to_string(c.p) + "," + std::to_string(c.k) + "," + std::to_string(c.n) + "," +
                                    assignment_string(c.assignment) + "," + sig12(c.check.max_error) + "," +
                                    (stable ? "1" : "0");
            r.csv += row + "\n";
            if (!stable || !c.check.pass) r.messages.push_back(row);
        }
    }
    r.exit_code = r.messages.empty() ? 0 : 1;
    return r;
}

using Runner = ExperimentResult (*)(const ExperimentSpec&);

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> r{
        {"mn-table", mn_table},         {"mn-table2d", mn_table2d},         {"exactness", exactness},
        {"counterexample", counterexample}, {"split-demo", split_demo}, {"bspline-verify", bspline_verify},
        {"grid-infer", grid_infer},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

ExperimentResult run(const ExperimentSpec& spec) {
    const auto it = registry().find(spec.name);
    if (it == registry().end()) return {2, "", {"unknown experiment '" + spec.name + "'"}};
    try {
        return it->second(spec);
    } catch (const UsageError& e) {
        return {2, "", {e.what()}};
    }
}

}  // namespace specdist
