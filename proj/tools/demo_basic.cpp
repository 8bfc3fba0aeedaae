// Minimal library walkthrough: integrate f(x) = exp(x) against exp(i omega x)
// on [-1, 1] with a few rule families and compare against the closed form,
// then let the automatic scheme pick the resolution on a wider interval.
//
// Build target: oscquad_demo. Run it without arguments.

#include <cmath>
#include <complex>
#include <cstdio>

#include "oscquad/autoquad.hpp"
#include "oscquad/ef.hpp"
#include "oscquad/fcc.hpp"
#include "oscquad/filon.hpp"
#include "oscquad/gauss.hpp"
#include "oscquad/nodes.hpp"

using oscquad::Cx;

int main() {
    // f as a plain real function; the analytic variant also accepts complex
    // arguments, which the complex-node rules require.
    const oscquad::Integrand f_real =
        oscquad::make_integrand([](double x) { return std::exp(x); });
    const oscquad::Integrand f_analytic =
        oscquad::make_analytic_integrand([](Cx z) { return std::exp(z); });

    auto exact = [](double om) {
        const Cx iw(1.0, om);
        return (std::exp(iw) - std::exp(-iw)) / iw;
    };

    std::printf("integral of exp(x) exp(i omega x) over [-1, 1]\n\n");
    std::printf("%8s  %12s  %12s  %12s  %12s\n", "omega", "gauss_4", "ef2",
                "fa2", "fcc2_9");
    const oscquad::GaussRule g4 = oscquad::legendre_rule(4);
    for (double om : {1.0, 10.0, 100.0, 1000.0}) {
        const Cx ref = exact(om);
        const double e_gauss =
            std::abs(oscquad::gauss_oscillatory(g4, f_real, om) - ref);
        const double e_ef =
            std::abs(oscquad::ef_quadrature(oscquad::solve_ef(2, om), f_real) -
                     ref);
        const double e_fa = std::abs(
            oscquad::filon_rule(oscquad::nodes_fa(2, om), f_real, om) - ref);
        const double e_fcc = std::abs(
            oscquad::fcc_quadrature(f_real, 9, oscquad::nodes_fa(2, om), om) -
            ref);
        std::printf("%8g  %12.2e  %12.2e  %12.2e  %12.2e\n", om, e_gauss, e_ef,
                    e_fa, e_fcc);
    }

    std::printf("\nautomatic scheme on [-5, 5] at omega = 500, tol = 1e-9\n");
    oscquad::IntegrandSpec spec;
    spec.f = f_analytic;
    spec.a = -5.0;
    spec.b = 5.0;
    spec.omega = 500.0;
    const oscquad::AutoResult res = oscquad::auto_integrate(spec, 4, 1e-9);
    std::printf("value     = %.15g %+.15gi\n", res.value.real(),
                res.value.imag());
    std::printf("est_error = %.2e, n_it = %d, n_fev = %d, converged = %s\n",
                res.est_error, res.n_it, res.n_fev,
                res.converged ? "yes" : "no");
    return res.converged ? 0 : 1;
}
