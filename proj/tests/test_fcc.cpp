#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oscquad/chebyshev.hpp"
#include "oscquad/fcc.hpp"
#include "oscquad/filon.hpp"
#include "oscquad/moments.hpp"
#include "oscquad/nodes.hpp"
#include "oracle.hpp"

using oscquad::Cx;

namespace {

oscquad::Integrand exp_real() {
    return oscquad::make_integrand([](double x) { return Cx(std::exp(x), 0.0); });
}

oscquad::Integrand exp_analytic() {
    return oscquad::make_analytic_integrand([](Cx z) { return std::exp(z); });
}

// Direct sum of a Chebyshev expansion through the three-term recurrence,
// evaluated independently of Clenshaw.
Cx direct_cheb_sum(const oscquad::ChebyshevExpansion& p, Cx x) {
    Cx acc(0.0, 0.0), tkm1(1.0, 0.0), tk = x;
    if (!p.coeffs.empty()) acc += p.coeffs[0];
    if (p.coeffs.size() > 1) acc += p.coeffs[1] * x;
    for (std::size_t k = 2; k < p.coeffs.size(); ++k) {
        const Cx t = 2.0 * x * tk - tkm1;
        tkm1 = tk;
        tk = t;
        acc += p.coeffs[k] * t;
    }
    return acc;
}

}  // namespace

TEST_CASE("cheb points: endpoints, symmetry, nesting", "[cheb]") {
    const auto x5 = oscquad::cheb_points(5);
    REQUIRE(x5.size() == 5);
    CHECK(x5[0] == 1.0);
    CHECK(x5[4] == -1.0);
    CHECK(x5[2] == 0.0);
    CHECK(x5[1] == -x5[3]);  // exact antisymmetry
    const auto x9 = oscquad::cheb_points(9);
    for (int j = 0; j < 5; ++j) CHECK(x9[std::size_t(2 * j)] == x5[std::size_t(j)]);
    for (int j = 0; j < 4; ++j) CHECK(x5[std::size_t(j)] > x5[std::size_t(j + 1)]);
    const auto x33 = oscquad::cheb_points(33);
    for (int j = 0; j < 9; ++j)
        CHECK(x33[std::size_t(4 * j)] == x9[std::size_t(j)]);
}

TEST_CASE("cheb interpolate: basis reproduction", "[cheb]") {
    const auto t3 = oscquad::make_integrand(
        [](double x) { return Cx(4.0 * x * x * x - 3.0 * x, 0.0); });
    const auto p = oscquad::cheb_interpolate(t3, 5);
    REQUIRE(p.coeffs.size() == 5);
    for (int k = 0; k < 5; ++k) {
        const double want = (k == 3) ? 1.0 : 0.0;
        CHECK(std::abs(p.coeffs[std::size_t(k)] - Cx(want, 0.0)) <= 1e-14);
    }
    const auto one = oscquad::make_integrand([](double) { return Cx(1.0, 0.0); });
    for (int n : {2, 6, 9}) {
        const auto q = oscquad::cheb_interpolate(one, n);
        CHECK(std::abs(q.coeffs[0] - Cx(1.0, 0.0)) <= 1e-14);
        for (std::size_t k = 1; k < q.coeffs.size(); ++k)
            CHECK(std::abs(q.coeffs[k]) <= 1e-14);
    }
}

TEST_CASE("cheb interpolate: exp residual and coefficient decay", "[cheb]") {
    const auto p = oscquad::cheb_interpolate(exp_real(), 9);
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double x = U(rng);
        worst = std::max(worst,
                         std::abs(oscquad::cheb_eval(p, x) - Cx(std::exp(x), 0.0)));
    }
    CHECK(worst <= 1e-6);
    for (std::size_t k = 1; k + 1 < p.coeffs.size(); ++k)
        CHECK(std::abs(p.coeffs[k + 1]) < 0.5 * std::abs(p.coeffs[k]));
}

TEST_CASE("cheb interpolate: FFT path agrees with a direct DCT", "[cheb]") {
    // n-1 = 8 takes the FFT branch; recompute the same coefficients by the
    // plain double-prime cosine sum.
    const int n = 9, N = n - 1;
    const auto x = oscquad::cheb_points(n);
    const auto f = [](double t) { return Cx(std::exp(t), std::sin(2.0 * t)); };
    const auto p = oscquad::cheb_interpolate(
        oscquad::make_integrand([&](double t) { return f(t); }), n);
    for (int k = 0; k <= N; ++k) {
        Cx acc = 0.5 * (f(x[0]) + (k % 2 == 0 ? 1.0 : -1.0) * f(x[std::size_t(N)]));
        for (int j = 1; j < N; ++j)
            acc += f(x[std::size_t(j)]) * std::cos(oscquad::pi * j * k / double(N));
        Cx want = 2.0 * acc / double(N);
        if (k == 0 || k == N) want *= 0.5;
        CHECK(std::abs(p.coeffs[std::size_t(k)] - want) <= 1e-13);
    }
    // Interpolation property on a non-power-of-two grid (direct branch).
    const auto q = oscquad::cheb_interpolate(exp_real(), 7);
    for (double xj : oscquad::cheb_points(7))
        CHECK(std::abs(oscquad::cheb_eval(q, xj) - Cx(std::exp(xj), 0.0)) <= 1e-13);
}

TEST_CASE("clenshaw matches the direct Chebyshev sum", "[cheb]") {
    std::mt19937 rng(515151u);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    oscquad::ChebyshevExpansion p;
    for (int k = 0; k < 12; ++k) p.coeffs.emplace_back(U(rng), U(rng));
    for (int t = 0; t < 20; ++t) {
        const Cx xr(U(rng), 0.0);
        const Cx xc(U(rng), 0.05 * U(rng));
        CHECK(std::abs(oscquad::cheb_eval(p, xr.real()) - direct_cheb_sum(p, xr)) <=
              1e-12);
        CHECK(std::abs(oscquad::cheb_eval(p, xc) - direct_cheb_sum(p, xc)) <= 1e-12);
    }
}

TEST_CASE("tn - tnm2: trig form and recurrence agree", "[cheb]") {
    for (int n : {2, 3, 5, 12, 33}) {
        for (double c : {-0.93, -0.4, 0.11, 0.707, 0.99}) {
            const Cx trig = oscquad::detail::tn_minus_tnm2(n, Cx(c, 0.0));
            // Force the recurrence branch with a vanishing imaginary part.
            const Cx rec = oscquad::detail::tn_minus_tnm2(n, Cx(c, 1e-300));
            CHECK(std::abs(trig - rec) <= 1e-12 * (1.0 + std::abs(trig)));
        }
    }
}

TEST_CASE("fcc correction: p_3 vanishes when f is already resolved", "[fcc]") {
    const auto poly = oscquad::make_integrand(
        [](double x) { return Cx(x * x * x - 0.3 * x + 1.0, 0.0); });
    const int n = 5;
    const auto p1 = oscquad::cheb_interpolate(poly, n);
    const auto ns = oscquad::nodes_fa(2, 50.0);
    const auto p3 = oscquad::build_correction(poly, p1, ns, n);
    for (const Cx& a : p3.coeffs) CHECK(std::abs(a) <= 1e-12);
}

TEST_CASE("fcc correction: interpolation identity at n=5, omega=50", "[fcc]") {
    const auto f = exp_real();
    const int n = 5;
    const auto p1 = oscquad::cheb_interpolate(f, n);
    const auto ns = oscquad::nodes_fa(2, 50.0);
    const auto p3 = oscquad::build_correction(f, p1, ns, n);
    REQUIRE(p3.coeffs.size() == std::size_t(n + 2));
    for (double xj : oscquad::cheb_points(n))
        CHECK(std::abs(oscquad::cheb_eval(p3, xj)) <= 1e-12);
    for (const Cx& c : ns.nodes) {
        const Cx pc = oscquad::cheb_eval(p1, c.real()) +
                      oscquad::cheb_eval(p3, c.real());
        CHECK(std::abs(pc - Cx(std::exp(c.real()), 0.0)) <= 1e-12);
    }
}

TEST_CASE("fcc correction: combined interpolant matches f everywhere tested",
          "[fcc]") {
    const auto f = exp_real();
    for (int n : {5, 9, 17, 33, 65}) {
        for (int nu : {2, 4}) {
            for (double omega : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
                const auto ns = oscquad::guard_nodes_against_grid(
                    oscquad::nodes_fa(nu, omega), oscquad::cheb_points(n));
                const auto p1 = oscquad::cheb_interpolate(f, n);
                const auto p3 = oscquad::build_correction(f, p1, ns, n);
                for (double xj : oscquad::cheb_points(n)) {
                    const double fx = std::exp(xj);
                    CHECK(std::abs(oscquad::cheb_eval(p3, xj)) <= 1e-12 * (1.0 + fx));
                    const Cx px = oscquad::cheb_eval(p1, xj) +
                                  oscquad::cheb_eval(p3, xj);
                    CHECK(std::abs(px - Cx(fx, 0.0)) <= 1e-9 * (1.0 + fx));
                }
                for (const Cx& c : ns.nodes) {
                    const double fx = std::exp(c.real());
                    const Cx px = oscquad::cheb_eval(p1, c.real()) +
                                  oscquad::cheb_eval(p3, c.real());
                    CHECK(std::abs(px - Cx(fx, 0.0)) <= 1e-9 * (1.0 + fx));
                }
            }
        }
    }
}

TEST_CASE("fcc p2 (nu=4) agrees with the generic interpolator", "[fcc]") {
    const auto ns = oscquad::nodes_fa(4, 30.0);
    std::vector<Cx> g;
    for (const Cx& c : ns.nodes)
        g.emplace_back(std::cos(2.0 * c.real()), std::sin(c.real()));
    const auto p2 = oscquad::fcc_p2(ns.nodes, g);
    REQUIRE(p2.coeffs.size() == 4);
    // Interpolation property at the nodes.
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(std::abs(oscquad::cheb_eval(p2, ns.nodes[m]) - g[m]) <= 1e-12);
    // Cross-check against the power-basis interpolator, converted to the
    // Chebyshev basis: T_3 = 4x^3 - 3x, T_2 = 2x^2 - 1.
    const auto pc = oscquad::lagrange_coeffs(ns.nodes, g);
    const Cx b0 = pc.coeffs[0], b1 = pc.coeffs[1], b2 = pc.coeffs[2],
             b3 = pc.coeffs[3];
    CHECK(std::abs(p2.coeffs[3] - b3 / 4.0) <= 1e-10);
    CHECK(std::abs(p2.coeffs[2] - b2 / 2.0) <= 1e-10);
    CHECK(std::abs(p2.coeffs[1] - (b1 + 0.75 * b3)) <= 1e-10);
    CHECK(std::abs(p2.coeffs[0] - (b0 + 0.5 * b2)) <= 1e-10);
}

TEST_CASE("fcc quadrature: polynomial exactness", "[fcc]") {
    // f of degree 3 <= n-1: the rule must return sum b_k mu_k exactly.
    const auto f = oscquad::make_integrand(
        [](double x) { return Cx((1.0 - x) * (1.0 - x) * (1.0 - x), 0.0); });
    const std::vector<double> b{1.0, -3.0, 3.0, -1.0};  // power coefficients
    for (double omega : {0.0, 5.0, 50.0}) {
        const auto mu = oscquad::power_moments(3, omega);
        Cx exact(0.0, 0.0);
        for (int k = 0; k < 4; ++k) exact += b[std::size_t(k)] * mu.mu[std::size_t(k)];
        oscquad::ComplexNodeSet empty;
        const Cx q0 = oscquad::fcc_quadrature(f, 5, empty, omega);
        CHECK(std::abs(q0 - exact) <= 1e-11 * (1.0 + std::abs(exact)));
        if (omega > 0.0) {
            const Cx q2 =
                oscquad::fcc_quadrature(f, 5, oscquad::nodes_fa(2, omega), omega);
            CHECK(std::abs(q2 - exact) <= 1e-11 * (1.0 + std::abs(exact)));
        }
    }
}

TEST_CASE("fcc quadrature: nu=0 is plain Filon-Clenshaw-Curtis", "[fcc]") {
    const auto f = exp_real();
    const double omega = 20.0;
    oscquad::ComplexNodeSet empty;
    const Cx q = oscquad::fcc_quadrature(f, 33, empty, omega);
    const Cx exact = testoracle::osc_integral(
        [](double x) { return Cx(std::exp(x), 0.0); }, omega);
    CHECK(std::abs(q - exact) <= 1e-10 * (1.0 + std::abs(exact)));
}

TEST_CASE("fcc quadrature: extra nodes beat plain FCC at omega=500", "[fcc]") {
    const auto f = exp_real();
    const double omega = 500.0;
    const Cx exact = testoracle::osc_integral(
        [](double x) { return Cx(std::exp(x), 0.0); }, omega);
    oscquad::ComplexNodeSet empty;
    const double e0 = std::abs(oscquad::fcc_quadrature(f, 5, empty, omega) - exact);
    const double e2 = std::abs(
        oscquad::fcc_quadrature(f, 5, oscquad::nodes_fa(2, omega), omega) - exact);
    CHECK(e2 < e0);
}

TEST_CASE("fcc quadrature: equals the generic Filon rule on union nodes",
          "[fcc]") {
    const auto f = exp_real();
    const double omega = 7.0;
    const Cx exact = testoracle::osc_integral(
        [](double x) { return Cx(std::exp(x), 0.0); }, omega);
    struct Case {
        int n, nu;
    };
    for (const Case cs : {Case{5, 2}, Case{3, 4}}) {
        const auto extra = oscquad::nodes_fa(cs.nu, omega);
        const Cx q_fcc = oscquad::fcc_quadrature(f, cs.n, extra, omega);
        oscquad::ComplexNodeSet uni;
        uni.family = oscquad::NodeFamily::custom;
        uni.omega = omega;
        for (double xj : oscquad::cheb_points(cs.n)) uni.nodes.emplace_back(xj, 0.0);
        for (const Cx& c : extra.nodes) uni.nodes.push_back(c);
        const Cx q_filon = oscquad::filon_rule(uni, f, omega);
        CHECK(std::abs(q_fcc - q_filon) <= 1e-9 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("fcc quadrature: complex extra nodes", "[fcc]") {
    const double omega = 100.0;
    const auto f = exp_analytic();
    const Cx exact = testoracle::osc_integral(
        [](double x) { return Cx(std::exp(x), 0.0); }, omega);
    const Cx q = oscquad::fcc_quadrature(f, 9, oscquad::nodes_fcc_c2(omega), omega);
    CHECK(std::abs(q - exact) <= 1e-8 * (1.0 + std::abs(exact)));
    // Real-only integrands must be rejected for genuinely complex nodes.
    CHECK_THROWS_AS(
        oscquad::fcc_quadrature(exp_real(), 9, oscquad::nodes_fcc_c2(omega), omega),
        std::invalid_argument);
}

TEST_CASE("fcc collision guard", "[fcc]") {
    const int n = 5;
    const auto grid = oscquad::cheb_points(n);
    oscquad::ComplexNodeSet ns;
    ns.family = oscquad::NodeFamily::custom;
    ns.omega = 10.0;
    ns.nodes = {Cx(grid[1], 0.0), Cx(-grid[1], 0.0)};  // exact collisions
    const auto moved = oscquad::guard_nodes_against_grid(ns, grid);
    CHECK(std::abs(moved.nodes[0].real() - (grid[1] - 1e-8)) <= 1e-15);
    CHECK(std::abs(moved.nodes[1].real() - (-grid[1] + 1e-8)) <= 1e-15);
    // The public entry point guards internally and must not throw.
    const auto f = exp_real();
    CHECK_NOTHROW(oscquad::fcc_quadrature(f, n, ns, 10.0));
    // Direct correction with an unguarded collision is an argument error.
    const auto p1 = oscquad::cheb_interpolate(f, n);
    CHECK_THROWS_AS(oscquad::build_correction(f, p1, ns, n),
                    std::invalid_argument);
}

TEST_CASE("fcc validation", "[fcc]") {
    const auto f = exp_real();
    oscquad::ComplexNodeSet empty;
    CHECK_THROWS_AS(oscquad::fcc_quadrature(f, 1, empty, 10.0),
                    std::invalid_argument);
    oscquad::ComplexNodeSet three;
    three.nodes = {Cx(0.1, 0.0), Cx(0.2, 0.0), Cx(0.3, 0.0)};
    CHECK_THROWS_AS(oscquad::fcc_quadrature(f, 5, three, 10.0),
                    std::invalid_argument);
}
