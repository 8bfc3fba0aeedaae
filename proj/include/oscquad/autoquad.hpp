#pragma once

// The automatic tolerance-driven scheme: transform [a,b] to the reference
// interval, build the frequency-dependent extra nodes once, then compare the
// Filon-type values at n and 2n-1 Chebyshev points, doubling until the
// estimated error |A_1 - A_2| (scaled back to [a,b]) drops below tol. The
// nested grids mean each doubling costs only n-1 new integrand evaluations;
// a memoising wrapper enforces that and counts the unique samples.

#include <cmath>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "oscquad/common.hpp"
#include "oscquad/fcc.hpp"
#include "oscquad/nodes.hpp"

namespace oscquad {

struct IntegrandSpec {
    Integrand f;
    double a = -1.0, b = 1.0;
    double omega = 0.0;
    std::function<Cx()> reference;  // optional exact value
    std::vector<Cx> deriv_a, deriv_b;  // optional endpoint derivatives f^(m)
};

struct ReferenceForm {
    double omega_hat = 0.0;
    Cx prefactor{1.0, 0.0};
    Integrand g;
};

struct AutoResult {
    Cx value{0.0, 0.0};        // finer approximation A_2, on [a,b] scale
    Cx value_coarse{0.0, 0.0}; // coarser approximation A_1, on [a,b] scale
    int n_it = 0;
    int n_fev = 0;
    double est_error = 0.0;    // |A_1 - A_2| scaled by |prefactor|
    bool converged = false;
};

inline ReferenceForm to_reference(const IntegrandSpec& spec) {
    require(spec.a < spec.b, "to_reference: interval must satisfy a < b");
    require_finite(spec.a, "to_reference: a");
    require_finite(spec.b, "to_reference: b");
    require(spec.omega >= 0.0, "to_reference: omega must be >= 0");
    const double scale = 0.5 * (spec.b - spec.a);
    const double mid = 0.5 * (spec.b + spec.a);
    ReferenceForm out;
    out.omega_hat = scale * spec.omega;
    const double phase = spec.omega * mid;
    out.prefactor = scale * Cx(std::cos(phase), std::sin(phase));
    const Integrand inner = spec.f;
    out.g = Integrand{[inner, scale, mid](Cx t) {
                          return inner(scale * t + mid);
                      },
                      inner.complex_ok};
    return out;
}

namespace detail {

struct EvalCache {
    std::map<std::pair<double, double>, Cx> values;
    long calls = 0;  // underlying integrand invocations (unique points)
};

inline Integrand memoised(const Integrand& inner,
                          const std::shared_ptr<EvalCache>& cache) {
    return Integrand{[inner, cache](Cx z) {
                         const std::pair<double, double> key(z.real(), z.imag());
                         const auto it = cache->values.find(key);
                         if (it != cache->values.end()) return it->second;
                         ++cache->calls;
                         const Cx v = inner(z);
                         cache->values.emplace(key, v);
                         return v;
                     },
                     inner.complex_ok};
}

inline ComplexNodeSet auto_extra_nodes(int nu, double omega_hat,
                                       NodeFamily family) {
    ComplexNodeSet ns;
    if (nu == 0) return ns;
    switch (family) {
        case NodeFamily::fa: ns = nodes_fa(nu, omega_hat); break;
        case NodeFamily::fc: ns = nodes_fc(nu, omega_hat); break;
        case NodeFamily::fca:
            require(nu == 2, "auto_integrate: F-CA provides nu=2 only");
            ns = nodes_fca(omega_hat);
            break;
        case NodeFamily::fcc_c2:
            require(nu == 2, "auto_integrate: FCC-C2 provides nu=2 only");
            ns = nodes_fcc_c2(omega_hat);
            break;
        default:
            require(false, "auto_integrate: unsupported node family");
    }
    // The grids in play are nested inside the finest allowed one, so one
    // guard against that grid keeps every iteration collision-free.
    return guard_nodes_against_grid(ns, cheb_points(4097));
}

}  // namespace detail

inline AutoResult auto_integrate(const IntegrandSpec& spec, int nu, double tol,
                                 NodeFamily family = NodeFamily::fa) {
    require(nu == 0 || nu == 2 || nu == 4,
            "auto_integrate: nu must be 0, 2, or 4");
    require(tol > 0.0, "auto_integrate: tol must be > 0");
    const ReferenceForm ref = to_reference(spec);
    const ComplexNodeSet extra =
        detail::auto_extra_nodes(nu, ref.omega_hat, family);
    auto cache = std::make_shared<detail::EvalCache>();
    const Integrand g = detail::memoised(ref.g, cache);
    const double pscale = std::abs(ref.prefactor);

    AutoResult res;
    int n = 3;
    Cx a1 = fcc_quadrature(g, n, extra, ref.omega_hat);
    for (;;) {
        const int n2 = 2 * n - 1;
        const Cx a2 = fcc_quadrature(g, n2, extra, ref.omega_hat);
        ++res.n_it;
        res.est_error = std::abs(a1 - a2) * pscale;
        res.value = ref.prefactor * a2;
        res.value_coarse = ref.prefactor * a1;
        if (res.est_error < tol) {
            res.converged = true;
            break;
        }
        if (n2 >= 4097) break;  // cap reached; converged stays false
        n = n2;
        a1 = a2;
    }
    res.n_fev = int(cache->calls);
    return res;
}

}  // namespace oscquad
