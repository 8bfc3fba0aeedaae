#pragma once

// Reference integrator used by the tests only. Composite 16-point
// Gauss-Legendre with hardcoded nodes/weights, deliberately independent of
// the library under test. Panel count scales with the phase span so the
// per-panel phase stays small; the result is good to ~1e-15 absolute.
// A self-check test validates the hardcoded table against monomials.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>

namespace testoracle {

using Cx = std::complex<double>;

inline constexpr double gl16_x[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};

inline constexpr double gl16_w[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

inline int panels_for(double omega, double a, double b) {
    const double phase = std::abs(omega) * (b - a) * 0.5;
    const int p = int(std::ceil(0.5 * phase));
    return p < 32 ? 32 : p;
}

// int_a^b f(x) exp(i omega x) dx
inline Cx osc_integral(const std::function<Cx(double)>& f, double omega,
                       double a = -1.0, double b = 1.0, int panels = -1) {
    if (panels <= 0) panels = panels_for(omega, a, b);
    Cx total(0.0, 0.0);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        Cx acc(0.0, 0.0);
        for (int i = 0; i < 8; ++i) {
            const double xp = mid + 0.5 * h * gl16_x[i];
            const double xm = mid - 0.5 * h * gl16_x[i];
            acc += gl16_w[i] * (f(xp) * Cx(std::cos(omega * xp),
                                           std::sin(omega * xp)) +
                                f(xm) * Cx(std::cos(omega * xm),
                                           std::sin(omega * xm)));
        }
        total += 0.5 * h * acc;
    }
    return total;
}

}  // namespace testoracle
