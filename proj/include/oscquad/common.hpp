#pragma once

// Shared basics for the oscillatory quadrature library: the complex alias,
// the integrand wrapper, and a couple of argument-check helpers.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace oscquad {

using Cx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Integrands are callables on complex arguments. Rules with complex nodes
// refuse integrands that are not marked complex_ok; real-node rules only
// ever evaluate on the real axis.
struct Integrand {
    std::function<Cx(Cx)> fn;
    bool complex_ok = false;

    Cx operator()(Cx x) const { return fn(x); }
    Cx operator()(double x) const { return fn(Cx(x, 0.0)); }
};

// Real-axis integrand; evaluation off the axis is not meaningful.
inline Integrand make_integrand(std::function<Cx(double)> f) {
    return Integrand{[f = std::move(f)](Cx z) { return f(z.real()); }, false};
}

// Integrand backed by a function analytic in a neighbourhood of [-1,1],
// safe to sample at complex nodes.
inline Integrand make_analytic_integrand(std::function<Cx(Cx)> f) {
    return Integrand{std::move(f), true};
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void require_finite(double x, const std::string& name) {
    require(std::isfinite(x), name + " must be finite");
}

}  // namespace oscquad
