#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specdist/experiments.hpp"

namespace {

struct Flag {
    const char* name;
    const char* help;
};

// Flags each subcommand accepts; values are passed through as strings and
// validated by the experiment itself.
const std::map<std::string, std::pair<std::string, std::vector<Flag>>>& commands() {
    static const std::map<std::string, std::pair<std::string, std::vector<Flag>>> c{
        {"mn-table",
         {"M_n of T_n(f) against f(i pi/(n+1)) for the plateau-ramp (e2) or cosine-sum-ramp (e3) symbol",
          {{"example", "e2 or e3"}, {"ns", "comma-separated matrix sizes"}}}},
        {"mn-table2d",
         {"M_n of the variable-coefficient finite-difference matrix on the sqrt(n) x sqrt(n) grid",
          {{"coef", "exp, cos3 or xlog"}, {"ns", "comma-separated perfect squares"}}}},
        {"exactness",
         {"Exact eigenvalue formulas: cosine Toeplitz (e1), biquadratic IgA (e4p), quadratic C^0 Galerkin (e5)",
          {{"example", "e1, e4p or e5"}, {"ns", "comma-separated sizes"}, {"a", "e1 constant term"},
           {"b", "e1 cosine coefficient"}}}},
        {"counterexample", {"Indicator of {1} against zero eigenvalues; M_n should stay 1", {{"ns", "comma-separated sizes"}}}},
        {"split-demo",
         {"Split the quadratic C^0 spectrum into branches and match each one",
          {{"example", "e5"}, {"n", "number of elements"}, {"tol", "per-branch tolerance"}}}},
        {"bspline-verify",
         {"Check the Theta-grid eigenvalue formulas for n^-1 K, n M or n^-2 L",
          {{"family", "K, M or L"}, {"pmax", "largest degree"}, {"nmax", "largest n"}, {"tol", "tolerance"}}}},
        {"grid-infer",
         {"Infer the Theta-grid assignment of n^-1 K and check that it does not depend on n",
          {{"pmax", "largest degree"}, {"nmax", "largest n"}, {"ns", "explicit sizes"}, {"tol", "tolerance"}}}},
    };
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral distribution experiments: eigenvalues versus sorted symbol samples"};
    app.require_subcommand(1);

    std::string output;
    app.add_option("-o,--output", output, "write the CSV here instead of stdout");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands()) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        for (const Flag& f : entry.second) sub->add_option(std::string("--") + f.name, values[name][f.name], f.help);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    specdist::ExperimentSpec spec;
    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        spec.name = name;
        for (const Flag& f : commands().at(name).second) {
            if (sub->count(std::string("--") + f.name) > 0) spec.params[f.name] = values[name][f.name];
        }
    }

    const specdist::ExperimentResult result = specdist::run(spec);
    if (result.exit_code == 2) {
        for (const auto& m : result.messages) std::cerr << "usage error: " << m << "\n";
        return 2;
    }
    if (output.empty()) {
        std::cout << result.csv;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open " << output << "\n";
            return 2;
        }
        out << result.csv;
    }
    if (result.exit_code == 1) {
        std::cerr << "tolerance failures:\n";
        for (const auto& m : result.messages) std::cerr << "  " << m << "\n";
    }
    return result.exit_code;
}
