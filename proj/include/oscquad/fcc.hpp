#pragma once

// Adaptive Filon-type rule on n Chebyshev points plus nu in {0,2,4} extra
// frequency-dependent nodes. The interpolant is assembled entirely in the
// Chebyshev basis:
//   p_1 interpolates f at the Chebyshev points (DCT),
//   g = 2(f - p_1) / ((n-1)(T_n - T_{n-2})) sampled at the extra nodes,
//   p_2 interpolates g there (closed forms for nu=2 and nu=4),
//   p_3 = (n-1)(T_n - T_{n-2}) p_2 / 2 via the product identity
//         2 T_r T_s = T_{r+s} + T_{|r-s|},
// and the value is sum_k tau_k (p_1 + p_3)_k. Staying in the T basis is
// what keeps the large-n, large-omega regime free of cancellation; nothing
// here converts to the power basis.

#include <cmath>
#include <cstdlib>
#include <vector>

#include "oscquad/chebyshev.hpp"
#include "oscquad/common.hpp"
#include "oscquad/moments.hpp"
#include "oscquad/nodes.hpp"

namespace oscquad {

struct FCCRule {
    int n = 0;                  // Chebyshev point count, n >= 2
    int nu = 0;                 // extra node count: 0, 2, or 4
    ComplexNodeSet extra_nodes;
    double omega = 0.0;
};

// Nudge real extra nodes that fall within 1e-10 of a grid point inward by
// 1e-8 so the correction stays well-posed.
inline ComplexNodeSet guard_nodes_against_grid(ComplexNodeSet ns,
                                               const std::vector<double>& grid) {
    for (Cx& c : ns.nodes) {
        if (c.imag() != 0.0) continue;
        for (double xj : grid) {
            if (std::abs(c.real() - xj) < 1e-10) {
                const double shift = c.real() >= 0.0 ? -1e-8 : 1e-8;
                c = Cx(c.real() + shift, 0.0);
                break;
            }
        }
    }
    return ns;
}

namespace detail {

// (T_n - T_{n-2})(c): stable product form for real arguments, three-term
// recurrence for complex ones.
inline Cx tn_minus_tnm2(int n, Cx c) {
    if (c.imag() == 0.0 && std::abs(c.real()) <= 1.0) {
        const double theta = std::acos(c.real());
        return Cx(-2.0 * std::sin((n - 1) * theta) * std::sin(theta), 0.0);
    }
    Cx tkm1(1.0, 0.0), tk = c;  // T_0, T_1
    Cx keep(0.0, 0.0);
    for (int k = 2; k <= n; ++k) {
        const Cx tk1 = 2.0 * c * tk - tkm1;
        tkm1 = tk;
        tk = tk1;
        if (k == n - 2) keep = tk;
        if (n - 2 == 1 && k == 2) keep = tkm1;  // keep T_1 when n == 3
    }
    if (n - 2 == 0) keep = Cx(1.0, 0.0);
    return tk - keep;
}

}  // namespace detail

// p_2 in the Chebyshev basis through (c_m, g_m); closed forms for the two
// supported sizes.
inline ChebyshevExpansion fcc_p2(const std::vector<Cx>& c,
                                 const std::vector<Cx>& g) {
    require(c.size() == g.size(), "fcc_p2: node/value size mismatch");
    ChebyshevExpansion p2;
    if (c.size() == 2) {
        const Cx den = c[0] - c[1];
        require(std::abs(den) > 1e-13, "fcc_p2: coincident nodes");
        p2.coeffs = {(c[0] * g[1] - c[1] * g[0]) / den, (g[0] - g[1]) / den};
        return p2;
    }
    require(c.size() == 4, "fcc_p2: only 2 or 4 nodes supported");
    std::vector<Cx> sigma(4);
    for (int m = 0; m < 4; ++m) {
        Cx prod(1.0, 0.0);
        for (int s = 0; s < 4; ++s)
            if (s != m) prod *= c[std::size_t(m)] - c[std::size_t(s)];
        require(std::abs(prod) > 1e-30, "fcc_p2: coincident nodes");
        sigma[std::size_t(m)] = prod;
    }
    Cx s_lead(0.0, 0.0), s_e1(0.0, 0.0), s_e2(0.0, 0.0), s_e3(0.0, 0.0);
    for (int m = 0; m < 4; ++m) {
        std::vector<Cx> rest;
        for (int s = 0; s < 4; ++s)
            if (s != m) rest.push_back(c[std::size_t(s)]);
        const Cx e1 = rest[0] + rest[1] + rest[2];
        const Cx e2 = rest[0] * rest[1] + rest[0] * rest[2] + rest[1] * rest[2];
        const Cx e3 = rest[0] * rest[1] * rest[2];
        const Cx gm = g[std::size_t(m)] / sigma[std::size_t(m)];
        s_lead += gm;
        s_e1 += e1 * gm;
        s_e2 += e2 * gm;
        s_e3 += e3 * gm;
    }
    const Cx p24 = 0.25 * s_lead;
    const Cx p23 = -0.5 * s_e1;
    const Cx p22 = 3.0 * p24 + s_e2;
    const Cx p21 = p23 - s_e3;
    p2.coeffs = {p21, p22, p23, p24};
    return p2;
}

// p_3 = ((n-1)/4) sum_k p_{2,k+1} (-T_{n-2+k} - T_{|k-n+2|} + T_{n+k} + T_{|k-n|})
inline ChebyshevExpansion fcc_p3(const ChebyshevExpansion& p2, int n) {
    const int nu = int(p2.coeffs.size());
    ChebyshevExpansion p3;
    p3.coeffs.assign(std::size_t(n + nu), Cx(0.0, 0.0));
    const double fac = (n - 1) / 4.0;
    auto add = [&](int idx, Cx v) { p3.coeffs[std::size_t(idx)] += v; };
    for (int k = 0; k < nu; ++k) {
        const Cx a = fac * p2.coeffs[std::size_t(k)];
        add(n - 2 + k, -a);
        add(std::abs(k - n + 2), -a);
        add(n + k, a);
        add(std::abs(k - n), a);
    }
    return p3;
}

// The full correction polynomial for given samples of f at the extra nodes.
inline ChebyshevExpansion build_correction(const Integrand& f,
                                           const ChebyshevExpansion& p1,
                                           const ComplexNodeSet& extra_nodes,
                                           int n) {
    require(n >= 2, "build_correction: n must be >= 2");
    const std::size_t nu = extra_nodes.nodes.size();
    require(nu == 2 || nu == 4, "build_correction: nu must be 2 or 4");
    const std::vector<double> grid = cheb_points(n);
    std::vector<Cx> g(nu);
    for (std::size_t m = 0; m < nu; ++m) {
        const Cx c = extra_nodes.nodes[m];
        if (c.imag() != 0.0)
            require(f.complex_ok,
                    "build_correction: complex nodes require an analytic "
                    "integrand");
        for (double xj : grid)
            require(std::abs(c - Cx(xj, 0.0)) > 1e-12,
                    "build_correction: extra node collides with a Chebyshev "
                    "point");
        const Cx den = double(n - 1) * detail::tn_minus_tnm2(n, c);
        const Cx num = 2.0 * ((c.imag() == 0.0 ? f(c.real()) : f(c)) -
                              cheb_eval(p1, c));
        g[m] = num / den;
    }
    return fcc_p3(fcc_p2(extra_nodes.nodes, g), n);
}

inline Cx fcc_quadrature(const Integrand& f, int n,
                         const ComplexNodeSet& extra_nodes, double omega) {
    require(n >= 2, "fcc_quadrature: n must be >= 2");
    const std::size_t nu = extra_nodes.nodes.size();
    require(nu == 0 || nu == 2 || nu == 4,
            "fcc_quadrature: nu must be 0, 2, or 4");
    require_finite(omega, "fcc_quadrature: omega");
    const ChebyshevExpansion p1 = cheb_interpolate(f, n);
    std::vector<Cx> q(p1.coeffs);
    if (nu > 0) {
        const ComplexNodeSet guarded =
            guard_nodes_against_grid(extra_nodes, cheb_points(n));
        const ChebyshevExpansion p3 = build_correction(f, p1, guarded, n);
        q.resize(p3.coeffs.size(), Cx(0.0, 0.0));
        for (std::size_t k = 0; k < p3.coeffs.size(); ++k) q[k] += p3.coeffs[k];
    }
    const ChebMomentTable tau = cheb_moments(int(q.size()) - 1, omega);
    Cx acc(0.0, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) acc += tau.tau[k] * q[k];
    return acc;
}

inline Cx fcc_quadrature(const Integrand& f, const FCCRule& rule) {
    return fcc_quadrature(f, rule.n, rule.extra_nodes, rule.omega);
}

}  // namespace oscquad
