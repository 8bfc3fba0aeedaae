#pragma once

// Frequency-dependent interpolation node families.
//
// The adaptive real families (fa) start at the Legendre nodes for omega=0
// and are pulled towards the nearest endpoint like 1/omega through an
// S-shaped blending curve. The complex families (fc) put nodes a fixed
// imaginary shift above the endpoints; the combined family (fca) blends
// real and imaginary parts separately so that the rule degrades gracefully
// at small omega. fcc_c2 is the two-node corrector set used by the
// Chebyshev-based rules.

#include <cmath>
#include <vector>

#include "oscquad/common.hpp"
#include "oscquad/gauss.hpp"

namespace oscquad {

enum class NodeFamily { custom, legendre, lobatto, ef, fa, fc, fca, fcc_c2 };

struct ComplexNodeSet {
    std::vector<Cx> nodes;
    NodeFamily family = NodeFamily::custom;
    double omega = 0.0;  // frequency the set was generated for

    bool has_complex() const {
        for (const Cx& c : nodes)
            if (c.imag() != 0.0) return true;
        return false;
    }
};

struct SShapeParams {
    double r = 2.0 * pi;
    int n = 1;
};

// S(w;r;n) = (1 - d/(1+|d|)) / (1 + r^n/(1+r^n)),  d = w^n - r^n.
// Equals 1 at w=0 and decays to 0 like r^n/w^n.
inline double s_shape(double omega, const SShapeParams& p) {
    require(omega >= 0.0, "s_shape: omega must be >= 0");
    require(p.r > 0.0 && p.n >= 1, "s_shape: need r > 0 and n >= 1");
    const double rn = std::pow(p.r, p.n);
    const double d = std::pow(omega, p.n) - rn;
    return (1.0 - d / (1.0 + std::abs(d))) / (1.0 + rn / (1.0 + rn));
}

inline ComplexNodeSet nodes_fa(int nu, double omega) {
    require(nu == 2 || nu == 3 || nu == 4, "nodes_fa: nu must be 2, 3 or 4");
    require(omega >= 0.0, "nodes_fa: omega must be >= 0");
    const double s = s_shape(omega, SShapeParams{2.0 * pi, 1});
    const GaussRule base = legendre_rule(nu);
    ComplexNodeSet set;
    set.family = NodeFamily::fa;
    set.omega = omega;
    set.nodes.resize(std::size_t(nu));
    for (int k = 0; k < nu; ++k) {
        const double cb = base.nodes[std::size_t(k)];
        double c = cb;
        if (cb > 0.0) c = 1.0 - (1.0 - cb) * s;
        if (cb < 0.0) c = -1.0 + (1.0 + cb) * s;
        set.nodes[std::size_t(k)] = Cx(c, 0.0);
    }
    return set;
}

inline ComplexNodeSet nodes_fc(int nu, double omega) {
    require(nu == 2 || nu == 3 || nu == 4, "nodes_fc: nu must be 2, 3 or 4");
    require(omega > 0.0, "nodes_fc: omega must be > 0");
    ComplexNodeSet set;
    set.family = NodeFamily::fc;
    set.omega = omega;
    if (nu == 2) {
        set.nodes = {Cx(-1.0, 1.0 / omega), Cx(1.0, 1.0 / omega)};
    } else if (nu == 3) {
        set.nodes = {Cx(-1.0, 1.0 / omega), Cx(0.0, 0.0), Cx(1.0, 1.0 / omega)};
    } else {
        const double lo = (2.0 - std::sqrt(2.0)) / omega;
        const double hi = (2.0 + std::sqrt(2.0)) / omega;
        set.nodes = {Cx(-1.0, lo), Cx(-1.0, hi), Cx(1.0, lo), Cx(1.0, hi)};
    }
    return set;
}

inline ComplexNodeSet nodes_fca(double omega) {
    require(omega > 0.0, "nodes_fca: omega must be > 0");
    const double cb = 1.0 / std::sqrt(3.0);
    const double re = (cb - 1.0) * s_shape(omega, SShapeParams{pi, 2}) + 1.0;
    const double im = (1.0 - s_shape(omega, SShapeParams{pi, 1})) / omega;
    ComplexNodeSet set;
    set.family = NodeFamily::fca;
    set.omega = omega;
    set.nodes = {Cx(-re, im), Cx(re, im)};
    return set;
}

inline ComplexNodeSet nodes_fcc_c2(double omega) {
    require(omega > 0.0, "nodes_fcc_c2: omega must be > 0");
    ComplexNodeSet set;
    set.family = NodeFamily::fcc_c2;
    set.omega = omega;
    set.nodes = {Cx(-1.0, 2.0 / omega), Cx(1.0, 2.0 / omega)};
    return set;
}

// Fixed classical sets, usable as Filon nodes.
inline ComplexNodeSet nodes_legendre(int nu) {
    const GaussRule base = legendre_rule(nu);
    ComplexNodeSet set;
    set.family = NodeFamily::legendre;
    for (double c : base.nodes) set.nodes.push_back(Cx(c, 0.0));
    return set;
}

inline ComplexNodeSet nodes_lobatto2() {
    ComplexNodeSet set;
    set.family = NodeFamily::lobatto;
    set.nodes = {Cx(-1.0, 0.0), Cx(1.0, 0.0)};
    return set;
}

}  // namespace oscquad
