// Command-line front end: frequency sweeps with CSV/JSON output, the
// automatic tolerance-driven scheme, the iteration-count table, and node
// trajectory dumps.
//
// Exit codes: 0 success, 2 argument error, 3 non-convergence.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <regex>
#include <string>
#include <vector>

#include "oscquad/bench.hpp"
#include "oscquad/bench_json.hpp"
#include "oscquad/ef.hpp"
#include "oscquad/nodes.hpp"

namespace {

using oscquad::Cx;

std::vector<double> make_grid(double lo, double hi, int n, bool log_spacing) {
    oscquad::require(lo > 0.0, "omega range must be positive");
    oscquad::require(hi >= lo, "--omega-max must be >= --omega-min");
    oscquad::require(n >= 2, "--points must be >= 2");
    std::vector<double> g;
    g.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        const double t = double(i) / double(n - 1);
        g.push_back(log_spacing ? lo * std::pow(hi / lo, t)
                                : lo + t * (hi - lo));
    }
    return g;
}

int run_sweep(const std::string& rule, const std::string& problem, double lo,
              double hi, int points, bool log_spacing, const std::string& out,
              bool as_json) {
    const auto grid = make_grid(lo, hi, points, log_spacing);
    const auto recs = oscquad::sweep(rule, problem, grid);
    if (as_json)
        oscquad::write_sweep_json(recs, out);
    else
        oscquad::write_sweep_csv(recs, out);
    std::printf("wrote %zu records to %s (%s)\n", recs.size(), out.c_str(),
                as_json ? "json" : "csv");
    return 0;
}

int run_auto(const std::string& problem, double omega, int nu, double tol) {
    const oscquad::Problem prob = oscquad::find_problem(problem);
    oscquad::IntegrandSpec spec = prob.spec;
    spec.omega = omega;
    const oscquad::AutoResult res = oscquad::auto_integrate(spec, nu, tol);
    const double err = std::abs(res.value - prob.exact(omega));
    std::printf("problem    %s\n", problem.c_str());
    std::printf("omega      %.17g\n", omega);
    std::printf("nu         %d\n", nu);
    std::printf("tol        %.3e\n", tol);
    std::printf("value      %.17g %+.17gi\n", res.value.real(),
                res.value.imag());
    std::printf("est_error  %.3e\n", res.est_error);
    std::printf("abs_error  %.3e\n", err);
    std::printf("n_it       %d\n", res.n_it);
    std::printf("n_fev      %d\n", res.n_fev);
    std::printf("converged  %s\n", res.converged ? "yes" : "no");
    if (!res.converged) {
        std::fprintf(stderr,
                     "auto: estimate did not reach the requested tolerance\n");
        return 3;
    }
    return 0;
}

int run_table1(double tol) {
    const auto rows = oscquad::table1_replay(tol);
    std::printf("omega,nu,err,est_error,n_it,n_fev,converged\n");
    bool all_ok = true;
    for (const auto& r : rows) {
        std::printf("%g,%d,%.3e,%.3e,%d,%d,%d\n", r.omega, r.nu, r.err,
                    r.est_error, r.n_it, r.n_fev, int(r.converged));
        all_ok = all_ok && r.converged;
    }
    if (!all_ok) {
        std::fprintf(stderr, "table1: some cells did not converge\n");
        return 3;
    }
    return 0;
}

// Node trajectories. EF families dump real nodes and weights per omega;
// the complex Filon families dump one row per node with real and imaginary
// parts. A 400-point grid keeps the trajectories dense enough to plot.
int run_nodes(const std::string& family, double lo, double hi,
              const std::string& out) {
    oscquad::require(hi >= lo, "--omega-max must be >= --omega-min");
    oscquad::require(lo >= 0.0, "omega range must be non-negative");
    const int points = 400;
    std::vector<double> grid;
    grid.reserve(points);
    for (int i = 0; i < points; ++i)
        grid.push_back(lo + (hi - lo) * double(i) / double(points - 1));

    std::ofstream os(out);
    oscquad::require(bool(os), "cannot open output file: " + out);
    char buf[512];

    std::smatch m;
    if (std::regex_match(family, m, std::regex("^ef([1-4])$"))) {
        const int nu = std::stoi(m[1].str());
        os << "omega";
        for (int k = 1; k <= nu; ++k) os << ",c_" << k;
        for (int k = 1; k <= nu; ++k) os << ",w_" << k;
        os << "\n";
        for (double om : grid) {
            const oscquad::EFRule rule = oscquad::solve_ef(nu, om);
            std::snprintf(buf, sizeof(buf), "%.17g", om);
            os << buf;
            for (double c : rule.nodes) {
                std::snprintf(buf, sizeof(buf), ",%.17g", c);
                os << buf;
            }
            for (double w : rule.weights) {
                std::snprintf(buf, sizeof(buf), ",%.17g", w);
                os << buf;
            }
            os << "\n";
        }
        std::printf("wrote %d rows to %s\n", points, out.c_str());
        return 0;
    }

    std::function<oscquad::ComplexNodeSet(double)> build;
    bool needs_positive = false;
    if (std::regex_match(family, m, std::regex("^fa([2-4])$"))) {
        const int nu = std::stoi(m[1].str());
        build = [nu](double om) { return oscquad::nodes_fa(nu, om); };
    } else if (std::regex_match(family, m, std::regex("^fc([2-4])$"))) {
        const int nu = std::stoi(m[1].str());
        build = [nu](double om) { return oscquad::nodes_fc(nu, om); };
        needs_positive = true;
    } else if (family == "fca2") {
        build = [](double om) { return oscquad::nodes_fca(om); };
        needs_positive = true;
    } else if (family == "fcc_c2") {
        build = [](double om) { return oscquad::nodes_fcc_c2(om); };
        needs_positive = true;
    } else {
        throw std::invalid_argument("unknown node family: " + family);
    }
    if (needs_positive)
        oscquad::require(lo > 0.0,
                         "family " + family + " needs omega > 0");

    os << "omega,node_index,re,im\n";
    for (double om : grid) {
        const oscquad::ComplexNodeSet ns = build(om);
        for (std::size_t k = 0; k < ns.nodes.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g,%zu,%.17g,%.17g\n", om,
                          k + 1, ns.nodes[k].real(), ns.nodes[k].imag());
            os << buf;
        }
    }
    std::printf("wrote %d omega values to %s\n", points, out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "oscquad: interpolatory quadrature for oscillatory integrals "
        "int_{-1}^{1} f(x) exp(i omega x) dx"};
    app.require_subcommand(1);

    std::string rule, problem, family, out;
    double omega_min = 0.0, omega_max = 0.0, omega = 0.0, tol = 1e-9;
    int points = 0, nu = 0;
    bool log_spacing = false, as_json = false;

    CLI::App* sw = app.add_subcommand(
        "sweep", "Sweep a rule over a frequency range and write the errors");
    sw->add_option("--rule", rule, "rule id (e.g. ef2, fa2, fc3, fcc2_9)")
        ->required();
    sw->add_option("--problem", problem, "problem id")->required();
    sw->add_option("--omega-min", omega_min, "lowest frequency")->required();
    sw->add_option("--omega-max", omega_max, "highest frequency")->required();
    sw->add_option("--points", points, "number of grid points")->required();
    sw->add_flag("--log", log_spacing, "geometric instead of linear spacing");
    sw->add_option("--out", out, "output file path")->required();
    sw->add_flag("--json", as_json, "write JSON instead of CSV");

    CLI::App* au = app.add_subcommand(
        "auto", "Run the automatic tolerance-driven scheme once");
    au->add_option("--problem", problem, "problem id")->required();
    au->add_option("--omega", omega, "frequency")->required();
    au->add_option("--nu", nu, "number of frequency-dependent nodes")
        ->required()
        ->check(CLI::IsMember({0, 2, 4}));
    au->add_option("--tol", tol, "error tolerance")
        ->required()
        ->check(CLI::PositiveNumber);

    CLI::App* tb = app.add_subcommand(
        "table1", "Replay the iteration-count table for f=exp(x) on [-5,5]");
    tb->add_option("--tol", tol, "error tolerance")
        ->required()
        ->check(CLI::PositiveNumber);

    CLI::App* nd = app.add_subcommand(
        "nodes", "Dump node trajectories of a family over a frequency range");
    nd->add_option("--family", family,
                   "node family (ef1..ef4, fa2..fa4, fc2..fc4, fca2, fcc_c2)")
        ->required();
    nd->add_option("--omega-min", omega_min, "lowest frequency")->required();
    nd->add_option("--omega-max", omega_max, "highest frequency")->required();
    nd->add_option("--out", out, "output file path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sw->parsed())
            return run_sweep(rule, problem, omega_min, omega_max, points,
                             log_spacing, out, as_json);
        if (au->parsed()) return run_auto(problem, omega, nu, tol);
        if (tb->parsed()) return run_table1(tol);
        if (nd->parsed()) return run_nodes(family, omega_min, omega_max, out);
    } catch (const oscquad::EfContinuationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
