#pragma once

// Benchmark harness: a registry of problems with analytic references, a
// registry of quadrature rules addressable by string id, omega sweeps,
// error-envelope slope estimation, the integration-by-parts asymptotic
// expansion, and the iteration-count table replay. CSV/JSON emission
// lives here too so the CLI stays thin.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include "oscquad/autoquad.hpp"
#include "oscquad/common.hpp"
#include "oscquad/ef.hpp"
#include "oscquad/fcc.hpp"
#include "oscquad/filon.hpp"
#include "oscquad/gauss.hpp"
#include "oscquad/moments.hpp"
#include "oscquad/nodes.hpp"

namespace oscquad {

// ---------------------------------------------------------------- problems

struct Problem {
    std::string id;
    IntegrandSpec spec;                     // f, [a,b], derivatives
    std::function<Cx(double)> exact;        // omega -> integral over [a,b]
};

// Composite 16-point Gauss reference on [-1,1]; panel count scales with the
// frequency so the oscillation stays resolved. OSCQUAD_ORACLE_PANELS_PER_OMEGA
// overrides the density (default 0.5 panels per unit omega, floor 32).
inline Cx oracle_integral(const Integrand& f, double omega, int panels = -1) {
    if (panels <= 0) {
        double per_omega = 0.5;
        if (const char* env = std::getenv("OSCQUAD_ORACLE_PANELS_PER_OMEGA")) {
            const double v = std::atof(env);
            if (v > 0.0) per_omega = v;
        }
        panels = std::max(32, int(std::ceil(per_omega * std::abs(omega))));
    }
    static const GaussRule g16 = legendre_rule(16);
    Cx acc(0.0, 0.0);
    const double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = -1.0 + p * h, mid = lo + 0.5 * h;
        for (int i = 0; i < 16; ++i) {
            const double x = mid + 0.5 * h * g16.nodes[std::size_t(i)];
            acc += 0.5 * h * g16.weights[std::size_t(i)] * f(x) *
                   Cx(std::cos(omega * x), std::sin(omega * x));
        }
    }
    return acc;
}

namespace detail {

inline IntegrandSpec exp_spec_on(double a, double b) {
    IntegrandSpec spec;
    spec.f = make_analytic_integrand([](Cx z) { return std::exp(z); });
    spec.a = a;
    spec.b = b;
    spec.deriv_a.assign(8, std::exp(Cx(a, 0.0)));
    spec.deriv_b.assign(8, std::exp(Cx(b, 0.0)));
    return spec;
}

inline Cx exp_exact(double a, double b, double omega) {
    const Cx iw(1.0, omega);
    return (std::exp(iw * b) - std::exp(iw * a)) / iw;
}

}  // namespace detail

inline Problem find_problem(const std::string& id) {
    Problem p;
    p.id = id;
    if (id == "exp_on_unit") {
        p.spec = detail::exp_spec_on(-1.0, 1.0);
        p.exact = [](double om) { return detail::exp_exact(-1.0, 1.0, om); };
        return p;
    }
    if (id == "prob10") {
        p.spec = detail::exp_spec_on(0.0, 0.1);
        p.exact = [](double om) { return detail::exp_exact(0.0, 0.1, om); };
        return p;
    }
    if (id == "exp_table1") {
        p.spec = detail::exp_spec_on(-5.0, 5.0);
        p.exact = [](double om) { return detail::exp_exact(-5.0, 5.0, om); };
        return p;
    }
    if (id == "one_on_unit") {
        p.spec.f = make_analytic_integrand([](Cx) { return Cx(1.0, 0.0); });
        p.spec.a = -1.0;
        p.spec.b = 1.0;
        p.spec.deriv_a.assign(8, Cx(0.0, 0.0));
        p.spec.deriv_b.assign(8, Cx(0.0, 0.0));
        p.spec.deriv_a[0] = p.spec.deriv_b[0] = Cx(1.0, 0.0);
        p.exact = [](double om) {
            return om == 0.0 ? Cx(2.0, 0.0) : Cx(2.0 * std::sin(om) / om, 0.0);
        };
        return p;
    }
    throw std::invalid_argument("unknown problem id: " + id);
}

inline std::vector<std::string> problem_ids() {
    return {"exp_on_unit", "prob10", "exp_table1", "one_on_unit"};
}

// ------------------------------------------------------------------- rules

struct BenchRule {
    std::string id;     // canonical id
    int order = 0;      // declared asymptotic order (normalisation exponent)
    int n_fev = 0;      // integrand evaluations per application
    bool needs_analytic = false;
    std::function<Cx(const Integrand&, double)> apply;  // on [-1,1]
};

namespace detail {

// Q_2^{F-A} applied on k equal subintervals of [-1,1] (the subdivision
// experiment; each part is transformed to the reference interval).
inline Cx fa2_subdivided(const Integrand& f, double omega, int k) {
    Cx acc(0.0, 0.0);
    const double h = 2.0 / k;
    for (int p = 0; p < k; ++p) {
        const double mid = -1.0 + (p + 0.5) * h;
        const double scale = 0.5 * h;
        const Integrand g{[&f, scale, mid](Cx t) { return f(scale * t + mid); },
                          f.complex_ok};
        const double ohat = scale * omega;
        const double phase = omega * mid;
        acc += scale * Cx(std::cos(phase), std::sin(phase)) *
               filon_rule(nodes_fa(2, ohat), g, ohat);
    }
    return acc;
}

inline std::string canonical_rule_id(std::string id) {
    for (char& c : id) {
        if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    }
    std::string out;
    for (char c : id) {
        if (c == '_' && (out.empty() || out.back() == '_')) continue;
        out.push_back(c);
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    // notation aliases (Q1_EF, Q2_F-A, Q[2,5], ...)
    std::smatch m;
    if (std::regex_match(out, m, std::regex("^q([1-4])_ef$")))
        return "ef" + m[1].str();
    if (std::regex_match(out, m, std::regex("^q([2-4])_f_a$")))
        return "fa" + m[1].str();
    if (std::regex_match(out, m, std::regex("^q([2-4])_f_c$")))
        return "fc" + m[1].str();
    if (std::regex_match(out, m, std::regex("^q2_f_ca$"))) return "fca2";
    if (std::regex_match(out, m, std::regex("^q_([024])_([0-9]+)$")))
        return "fcc" + m[1].str() + "_" + m[2].str();
    return out;
}

}  // namespace detail

inline BenchRule find_rule(const std::string& raw_id) {
    const std::string id = detail::canonical_rule_id(raw_id);
    BenchRule r;
    r.id = id;
    std::smatch m;
    if (std::regex_match(id, m, std::regex("^gauss_([0-9]+)$"))) {
        const int n = std::stoi(m[1].str());
        require(n >= 1 && n <= 64, "gauss rule size must be in 1..64");
        const GaussRule g = legendre_rule(n);
        r.order = 0;
        r.n_fev = n;
        r.apply = [g](const Integrand& f, double om) {
            return gauss_oscillatory(g, f, om);
        };
        return r;
    }
    if (std::regex_match(id, m, std::regex("^ef([1-4])$"))) {
        const int nu = std::stoi(m[1].str());
        static const int ord[5] = {0, 1, 2, 2, 3};
        r.order = ord[nu];
        r.n_fev = nu;
        r.apply = [nu](const Integrand& f, double om) {
            return ef_quadrature(solve_ef(nu, om), f);
        };
        return r;
    }
    if (std::regex_match(id, m, std::regex("^fa([2-4])$"))) {
        const int nu = std::stoi(m[1].str());
        static const int ord[5] = {0, 0, 2, 2, 3};
        r.order = ord[nu];
        r.n_fev = nu;
        r.apply = [nu](const Integrand& f, double om) {
            return filon_rule(nodes_fa(nu, om), f, om);
        };
        return r;
    }
    if (std::regex_match(id, m, std::regex("^fc([2-4])$"))) {
        const int nu = std::stoi(m[1].str());
        static const int ord[5] = {0, 0, 3, 3, 5};
        r.order = ord[nu];
        r.n_fev = nu;
        r.needs_analytic = true;
        r.apply = [nu](const Integrand& f, double om) {
            return filon_rule(nodes_fc(nu, om), f, om);
        };
        return r;
    }
    if (id == "fca2") {
        r.order = 3;
        r.n_fev = 2;
        r.needs_analytic = true;
        r.apply = [](const Integrand& f, double om) {
            return filon_rule(nodes_fca(om), f, om);
        };
        return r;
    }
    if (id == "q2fc_closed") {
        r.order = 3;
        r.n_fev = 2;
        r.needs_analytic = true;
        r.apply = [](const Integrand& f, double om) {
            return closed_form_q2fc(f, om);
        };
        return r;
    }
    if (std::regex_match(id, m, std::regex("^fcc([024])_([0-9]+)$"))) {
        const int nu = std::stoi(m[1].str());
        const int n = std::stoi(m[2].str());
        require(n >= 2, "fcc rule needs n >= 2");
        static const int ord[5] = {2, 0, 3, 0, 4};
        r.order = ord[nu];
        r.n_fev = n + nu;
        r.apply = [nu, n](const Integrand& f, double om) {
            const ComplexNodeSet extra =
                nu > 0 ? nodes_fa(nu, om) : ComplexNodeSet{};
            return fcc_quadrature(f, n, extra, om);
        };
        return r;
    }
    if (std::regex_match(id, m, std::regex("^fcc_c2_([0-9]+)$"))) {
        const int n = std::stoi(m[1].str());
        require(n >= 2, "fcc rule needs n >= 2");
        r.order = 4;
        r.n_fev = n + 2;
        r.needs_analytic = true;
        r.apply = [n](const Integrand& f, double om) {
            return fcc_quadrature(f, n, nodes_fcc_c2(om), om);
        };
        return r;
    }
    if (std::regex_match(id, m, std::regex("^fa2_sub([0-9]+)$"))) {
        const int k = std::stoi(m[1].str());
        require(k >= 1 && k <= 64, "fa2_sub subdivision count must be 1..64");
        r.order = 2;
        r.n_fev = 2 * k;
        r.apply = [k](const Integrand& f, double om) {
            return detail::fa2_subdivided(f, om, k);
        };
        return r;
    }
    throw std::invalid_argument("unknown rule id: " + raw_id);
}

// ------------------------------------------------------------------ sweeps

struct SweepRecord {
    std::string rule_id;
    double omega = 0.0;
    double abs_error = 0.0;
    double norm_error = 0.0;  // omega^p * abs_error for the declared order p
    int n_fev = 0;
};

inline std::vector<SweepRecord> sweep(const std::string& rule_id,
                                      const std::string& problem_id,
                                      const std::vector<double>& omega_grid) {
    const BenchRule rule = find_rule(rule_id);
    const Problem prob = find_problem(problem_id);
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        require(omega_grid[i] > 0.0, "sweep: omega grid must be positive");
        if (i > 0)
            require(omega_grid[i] >= omega_grid[i - 1],
                    "sweep: omega grid must be sorted");
    }
    std::vector<SweepRecord> out;
    out.reserve(omega_grid.size());
    for (double om : omega_grid) {
        IntegrandSpec spec = prob.spec;
        spec.omega = om;
        const ReferenceForm ref = to_reference(spec);
        if (rule.needs_analytic)
            require(ref.g.complex_ok,
                    "sweep: rule " + rule.id + " needs an analytic integrand");
        const Cx val = ref.prefactor * rule.apply(ref.g, ref.omega_hat);
        SweepRecord rec;
        rec.rule_id = rule.id;
        rec.omega = om;
        rec.abs_error = std::abs(val - prob.exact(om));
        rec.norm_error = std::pow(om, rule.order) * rec.abs_error;
        rec.n_fev = rule.n_fev;
        out.push_back(rec);
    }
    return out;
}

// -------------------------------------------------------- order estimation

struct OrderEstimate {
    double slope = 0.0;
    double ci = 0.0;  // 95% half-width of the slope
};

// Envelope fit: the error curves oscillate through zeros near omega = k pi,
// so the records are bucketed into 10 logarithmic windows per decade, each
// window keeps its maximum error, and the slope comes from least squares on
// the log-log envelope.
inline OrderEstimate estimate_order(const std::vector<SweepRecord>& records) {
    require(records.size() >= 8, "estimate_order: need at least 8 records");
    double lo = records.front().omega, hi = records.front().omega;
    for (const auto& r : records) {
        require(r.omega > 0.0, "estimate_order: omega must be positive");
        lo = std::min(lo, r.omega);
        hi = std::max(hi, r.omega);
    }
    require(hi / lo >= std::pow(10.0, 1.5),
            "estimate_order: grid must span at least 1.5 decades");
    struct Window {
        double err = 0.0, omega = 0.0;
        bool used = false;
    };
    std::map<long, Window> windows;
    for (const auto& r : records) {
        if (!(r.abs_error > 1e-300)) continue;  // skip zeros for the log fit
        const long idx = long(std::floor(std::log10(r.omega) * 10.0));
        Window& w = windows[idx];
        if (!w.used || r.abs_error > w.err) {
            w.err = r.abs_error;
            w.omega = r.omega;
            w.used = true;
        }
    }
    std::vector<double> xs, ys;
    for (const auto& kv : windows) {
        xs.push_back(std::log10(kv.second.omega));
        ys.push_back(std::log10(kv.second.err));
    }
    require(xs.size() >= 4,
            "estimate_order: too few usable envelope windows");
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    OrderEstimate est;
    est.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - my - est.slope * (xs[i] - mx);
        rss += resid * resid;
    }
    if (n > 2) est.ci = 2.0 * std::sqrt(rss / double(n - 2) / sxx);
    return est;
}

// ------------------------------------------------- asymptotic expansion

// Partial sum of the integration-by-parts expansion, mapped from [a,b]:
// the m-th reference-interval derivative is scale^m f^(m) at the endpoint.
inline Cx asy_expansion(const Problem& prob, double omega, int M) {
    require(M >= 0, "asy_expansion: M must be >= 0");
    require(omega > 0.0, "asy_expansion: omega must be positive");
    if (M == 0) return Cx(0.0, 0.0);
    require(int(prob.spec.deriv_a.size()) >= M &&
                int(prob.spec.deriv_b.size()) >= M,
            "asy_expansion: problem lacks the required endpoint derivatives");
    const double scale = 0.5 * (prob.spec.b - prob.spec.a);
    const double mid = 0.5 * (prob.spec.b + prob.spec.a);
    const double ohat = scale * omega;
    const double phase = omega * mid;
    const Cx pref = scale * Cx(std::cos(phase), std::sin(phase));
    const Cx eplus(std::cos(ohat), std::sin(ohat));
    const Cx eminus = std::conj(eplus);
    const Cx miw(0.0, -ohat);  // -i omega_hat
    Cx acc(0.0, 0.0);
    Cx pw(1.0, 0.0);
    double scm = 1.0;
    for (int m = 0; m < M; ++m) {
        pw /= miw;  // (-i omega_hat)^{-(m+1)}
        acc -= pw * (eplus * scm * prob.spec.deriv_b[std::size_t(m)] -
                     eminus * scm * prob.spec.deriv_a[std::size_t(m)]);
        scm *= scale;
    }
    return pref * acc;
}

// ------------------------------------------------------------ table replay

struct Table1Row {
    double omega = 0.0;
    int nu = 0;
    double err = 0.0;        // true error against the analytic reference
    double est_error = 0.0;  // the scheme's own estimate
    int n_it = 0;
    int n_fev = 0;
    bool converged = false;
};

inline std::vector<Table1Row> table1_replay(double tol) {
    require(tol > 0.0, "table1_replay: tol must be > 0");
    const Problem prob = find_problem("exp_table1");
    std::vector<Table1Row> rows;
    for (double om : {10.0, 100.0, 500.0, 1000.0, 5000.0}) {
        for (int nu : {0, 2, 4}) {
            IntegrandSpec spec = prob.spec;
            spec.omega = om;
            const AutoResult res = auto_integrate(spec, nu, tol);
            Table1Row row;
            row.omega = om;
            row.nu = nu;
            row.err = std::abs(res.value - prob.exact(om));
            row.est_error = res.est_error;
            row.n_it = res.n_it;
            row.n_fev = res.n_fev;
            row.converged = res.converged;
            rows.push_back(row);
        }
    }
    return rows;
}

// ------------------------------------------------------------------ output

inline void write_sweep_csv(const std::vector<SweepRecord>& records,
                            std::ostream& os) {
    os << "rule,omega,abs_error,norm_error,n_fev\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%d\n",
                      r.rule_id.c_str(), r.omega, r.abs_error, r.norm_error,
                      r.n_fev);
        os << buf;
    }
}

inline void write_sweep_csv(const std::vector<SweepRecord>& records,
                            const std::string& path) {
    std::ofstream os(path);
    require(bool(os), "cannot open output file: " + path);
    write_sweep_csv(records, os);
}

}  // namespace oscquad
