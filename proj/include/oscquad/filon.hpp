#pragma once

// Generic Filon-type rules: interpolate f at a small node set (real or
// complex), expand the interpolant in the power basis, and contract the
// coefficients with the exact moments mu_j. The interpolation goes through
// Newton divided differences; for clustered nodes at large omega this
// cancels heavily, which is precisely the regime the Chebyshev-based rules
// exist for. The interp_residual field reports how well the expanded
// polynomial still reproduces the data.

#include <algorithm>
#include <cmath>
#include <vector>

#include "oscquad/common.hpp"
#include "oscquad/moments.hpp"
#include "oscquad/nodes.hpp"

namespace oscquad {

struct PolyCoeffs {
    std::vector<Cx> coeffs;        // power basis, ascending degree
    double interp_residual = 0.0;  // max_l |p(c_l) - v_l| / (1 + |v_l|)
};

inline Cx eval_poly(const std::vector<Cx>& coeffs, Cx x) {
    Cx p(0.0, 0.0);
    for (std::size_t j = coeffs.size(); j-- > 0;) p = p * x + coeffs[j];
    return p;
}

inline PolyCoeffs lagrange_coeffs(const std::vector<Cx>& nodes,
                                  const std::vector<Cx>& values) {
    require(!nodes.empty(), "lagrange_coeffs: empty node set");
    require(nodes.size() == values.size(),
            "lagrange_coeffs: nodes/values size mismatch");
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            require(std::abs(nodes[i] - nodes[j]) > 1e-13,
                    "lagrange_coeffs: coincident nodes");

    // Newton divided differences, then expansion to the power basis.
    std::vector<Cx> dd = values;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);

    PolyCoeffs out;
    out.coeffs.assign(n, Cx(0.0, 0.0));
    out.coeffs[0] = dd[n - 1];
    std::size_t deg = 0;
    for (std::size_t i = n - 1; i-- > 0;) {
        // p <- p*(x - c_i) + dd[i]
        ++deg;
        for (std::size_t k = deg; k >= 1; --k)
            out.coeffs[k] = out.coeffs[k - 1] - nodes[i] * out.coeffs[k];
        out.coeffs[0] = dd[i] - nodes[i] * out.coeffs[0];
    }
    for (std::size_t l = 0; l < n; ++l) {
        const double r = std::abs(eval_poly(out.coeffs, nodes[l]) - values[l]) /
                         (1.0 + std::abs(values[l]));
        out.interp_residual = std::max(out.interp_residual, r);
    }
    return out;
}

inline Cx filon_rule(const ComplexNodeSet& nodes, const Integrand& f,
                     double omega) {
    require_finite(omega, "filon_rule: omega");
    require(!nodes.nodes.empty(), "filon_rule: empty node set");
    if (nodes.has_complex())
        require(f.complex_ok,
                "filon_rule: complex nodes require a complex-evaluable "
                "integrand");
    std::vector<Cx> values;
    values.reserve(nodes.nodes.size());
    for (const Cx& c : nodes.nodes) values.push_back(f(c));
    const PolyCoeffs p = lagrange_coeffs(nodes.nodes, values);
    const PowerMomentTable mu =
        power_moments(int(nodes.nodes.size()) - 1, omega);
    Cx acc(0.0, 0.0);
    for (std::size_t j = 0; j < p.coeffs.size(); ++j)
        acc += p.coeffs[j] * mu.mu[j];
    return acc;
}

// Two-node complex rule with nodes -1+i/w and 1+i/w, written directly in
// terms of the endpoint values:
//   Q = i [ e^{-iw} f(-1+i/w) - e^{iw} f(1+i/w) ] / w.
inline Cx closed_form_q2fc(const Integrand& f, double omega) {
    require(omega > 0.0, "closed_form_q2fc: omega must be > 0");
    require(f.complex_ok,
            "closed_form_q2fc: integrand must be complex-evaluable");
    const Cx shift(0.0, 1.0 / omega);
    const Cx em(std::cos(omega), -std::sin(omega));
    const Cx ep(std::cos(omega), std::sin(omega));
    return Cx(0.0, 1.0 / omega) *
           (em * f(Cx(-1.0, 0.0) + shift) - ep * f(Cx(1.0, 0.0) + shift));
}

}  // namespace oscquad
