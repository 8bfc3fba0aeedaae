#pragma once

// Classical Gauss-Legendre rules. Nodes are the zeros of P_nu found by
// Newton iteration on the three-term recurrence, seeded with the Chebyshev
// angle approximation; weights follow from the derivative. The rule is
// symmetrized exactly: only the upper half is computed and mirrored, and an
// odd-count centre node is pinned to zero.

#include <cmath>
#include <vector>

#include "oscquad/common.hpp"

namespace oscquad {

struct GaussRule {
    int nu = 0;
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // positive, sum 2
};

inline GaussRule legendre_rule(int nu) {
    require(nu >= 1 && nu <= 64, "legendre_rule: nu must be in [1, 64]");
    GaussRule rule;
    rule.nu = nu;
    rule.nodes.assign(std::size_t(nu), 0.0);
    rule.weights.assign(std::size_t(nu), 0.0);
    const int half = (nu + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(pi * (i + 0.75) / (nu + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < nu; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = nu * (z * p1 - p2) / (z * z - 1.0);
            const double zprev = z;
            z -= p1 / pp;
            if (z == zprev) break;
        }
        if (nu % 2 == 1 && i == half - 1) z = 0.0;  // centre of an odd rule
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.nodes[std::size_t(i)] = -z;
        rule.nodes[std::size_t(nu - 1 - i)] = z;
        rule.weights[std::size_t(i)] = w;
        rule.weights[std::size_t(nu - 1 - i)] = w;
    }
    return rule;
}

// Q[f] = sum_l w_l f(c_l) e^{i omega c_l}; the classical rule applied to the
// full oscillatory integrand.
inline Cx gauss_oscillatory(const GaussRule& rule, const Integrand& f,
                            double omega) {
    require_finite(omega, "gauss_oscillatory: omega");
    Cx acc(0.0, 0.0);
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
        const double c = rule.nodes[l];
        acc += rule.weights[l] * f(c) *
               Cx(std::cos(omega * c), std::sin(omega * c));
    }
    return acc;
}

}  // namespace oscquad
