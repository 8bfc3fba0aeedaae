#pragma once

// Oscillatory moments on [-1,1]:
//   mu_k(omega)  = int x^k     exp(i omega x) dx
//   tau_k(omega) = int T_k(x)  exp(i omega x) dx
//
// Both integrals admit three regimes. For small |omega| the power moments
// follow from a rapidly convergent series. For k <= |omega| forward
// recurrences are stable. For k > |omega| the forward direction blows up,
// so the Chebyshev moments are obtained from a tridiagonal boundary-value
// solve whose right-hand closure uses the leading asymptotic tail; power
// moments in that regime are contracted from the Chebyshev table through
// the (all nonnegative) Chebyshev expansion coefficients of x^k.

#include <algorithm>
#include <cmath>
#include <vector>

#include "oscquad/common.hpp"

namespace oscquad {

struct PowerMomentTable {
    double omega = 0.0;
    std::vector<Cx> mu;  // mu[k], k = 0..K
};

struct ChebMomentTable {
    double omega = 0.0;
    std::vector<Cx> tau;  // tau[k], k = 0..K
};

namespace detail {

// B_k = e^{i w} + (-1)^k e^{-i w}; the boundary combination that appears in
// the Chebyshev recurrences. Built componentwise so parity stays exact.
inline Cx bnd_b(int k, double omega) {
    if (k % 2 == 0) return Cx(2.0 * std::cos(omega), 0.0);
    return Cx(0.0, 2.0 * std::sin(omega));
}

// Series branch, |omega| < 1:
//   mu_k = 2 sum_{m >= 0, m == k (mod 2)} (i w)^m / (m! (k+m+1)).
inline Cx mu_series(int k, double omega) {
    Cx acc(0.0, 0.0);
    Cx t(1.0, 0.0);  // (i w)^m / m!
    for (int m = 0; m <= 400; ++m) {
        if (m > 0) t *= Cx(0.0, omega) / double(m);
        if ((m & 1) == (k & 1)) acc += 2.0 * t / double(k + m + 1);
        if (m >= 1 && 2.0 * std::abs(t) < 1e-18) break;
    }
    return acc;
}

// mu_0..mu_2 for any omega >= 0, without touching the Chebyshev path.
// One or two integration-by-parts steps past |omega| cost at most a factor
// ~k/omega in roundoff, harmless here.
inline void mu_low(double omega, Cx out[3]) {
    if (omega < 1.0) {
        for (int k = 0; k < 3; ++k) out[k] = mu_series(k, omega);
        return;
    }
    const double s = std::sin(omega), c = std::cos(omega);
    out[0] = Cx(2.0 * s / omega, 0.0);
    out[1] = Cx(0.0, 2.0 * (s / (omega * omega) - c / omega));
    out[2] = Cx(2.0 * s / omega - 4.0 * s / (omega * omega * omega) +
                    4.0 * c / (omega * omega),
                0.0);
}

// Chebyshev moments for omega >= 0.
inline std::vector<Cx> tau_core(int K, double omega) {
    Cx mu3[3];
    mu_low(omega, mu3);
    std::vector<Cx> tau(std::size_t(K) + 1);
    tau[0] = mu3[0];
    if (K >= 1) tau[1] = mu3[1];
    if (K >= 2) tau[2] = 2.0 * mu3[2] - mu3[0];
    if (K <= 2) return tau;

    // Phase 1: forward recurrence, stable while the index stays below omega.
    //   tau_{k+1} = (k+1)/(k-1) tau_{k-1} + 2i(k+1)/w [tau_k + B_k/(k^2-1)]
    const int kswitch = std::max(2, std::min(K, int(std::floor(omega))));
    for (int j = 3; j <= kswitch; ++j) {
        const int k = j - 1;
        tau[std::size_t(j)] =
            (double(j) / double(k - 1)) * tau[std::size_t(k - 1)] +
            Cx(0.0, 2.0 * j / omega) *
                (tau[std::size_t(k)] + bnd_b(k, omega) / double(k * k - 1));
    }
    if (kswitch >= K) return tau;

    // Phase 2: boundary-value solve on omega-scaled rows
    //   w/(k-1) tau_{k-1} + 2i tau_k - w/(k+1) tau_{k+1} = -2i B_k/(k^2-1),
    // left boundary from phase 1, right closure from the asymptotic tail
    // tau_M ~ -B_M/(M^2-1). Errors in the closure damp like prod(w/2j)
    // per backward step, and the guard band keeps the closure index well
    // past the transition zone.
    const int jlo = kswitch + 1;
    const int kmax =
        std::max(K + 10, int(std::ceil(1.5 * omega)) + 20);
    const int m = kmax - jlo + 1;  // unknowns tau_jlo..tau_kmax
    const std::size_t msz = std::size_t(m);
    std::vector<Cx> diag(msz), upper(msz), rhs(msz);
    for (int i = 0; i < m - 1; ++i) {
        const int k = jlo + i;
        diag[std::size_t(i)] = Cx(0.0, 2.0);
        upper[std::size_t(i)] = Cx(-omega / double(k + 1), 0.0);
        rhs[std::size_t(i)] =
            Cx(0.0, -2.0) * bnd_b(k, omega) / double(k * k - 1);
    }
    rhs[0] -= (omega / double(jlo - 1)) * tau[std::size_t(jlo - 1)];
    diag[std::size_t(m - 1)] = Cx(1.0, 0.0);
    upper[std::size_t(m - 1)] = Cx(0.0, 0.0);
    rhs[std::size_t(m - 1)] =
        -bnd_b(kmax, omega) / double(kmax * kmax - 1);

    // Thomas sweep; sub-diagonal of row i (i >= 1) is w/(k-1).
    for (int i = 1; i < m; ++i) {
        const int k = jlo + i;
        const Cx sub = (i == m - 1) ? Cx(0.0, 0.0)
                                    : Cx(omega / double(k - 1), 0.0);
        const Cx l = sub / diag[std::size_t(i - 1)];
        diag[std::size_t(i)] -= l * upper[std::size_t(i - 1)];
        rhs[std::size_t(i)] -= l * rhs[std::size_t(i - 1)];
    }
    std::vector<Cx> x(msz);
    x[std::size_t(m - 1)] = rhs[std::size_t(m - 1)] / diag[std::size_t(m - 1)];
    for (int i = m - 2; i >= 0; --i)
        x[std::size_t(i)] = (rhs[std::size_t(i)] -
                             upper[std::size_t(i)] * x[std::size_t(i + 1)]) /
                            diag[std::size_t(i)];
    for (int j = jlo; j <= K; ++j) tau[std::size_t(j)] = x[std::size_t(j - jlo)];
    return tau;
}

// Power moments for omega >= 0.
inline std::vector<Cx> mu_core(int K, double omega) {
    std::vector<Cx> mu(std::size_t(K) + 1);
    if (omega < 1.0) {
        for (int k = 0; k <= K; ++k) mu[std::size_t(k)] = mu_series(k, omega);
        return mu;
    }
    // Forward integration by parts: mu_k = A_k - (k/(i w)) mu_{k-1}.
    const double s = std::sin(omega), c = std::cos(omega);
    const Cx a_even(2.0 * s / omega, 0.0), a_odd(0.0, -2.0 * c / omega);
    const int kswitch = std::min(K, int(std::floor(omega)));
    mu[0] = a_even;
    for (int k = 1; k <= kswitch; ++k) {
        const Cx a = (k % 2 == 0) ? a_even : a_odd;
        mu[std::size_t(k)] =
            a + Cx(0.0, double(k) / omega) * mu[std::size_t(k - 1)];
    }
    if (kswitch >= K) return mu;

    // Contraction x^k = sum_j c_j T_j with the c_j generated by repeated
    // multiplication by x (x T_j = (T_{j+1} + T_{j-1})/2); all c_j >= 0,
    // so no cancellation enters the contraction.
    const std::vector<Cx> tau = tau_core(K, omega);
    std::vector<double> cj{1.0};
    for (int k = 1; k <= K; ++k) {
        std::vector<double> nxt(std::size_t(k) + 1, 0.0);
        nxt[1] += cj[0];
        for (int j = 1; j < int(cj.size()); ++j) {
            nxt[std::size_t(j) + 1] += 0.5 * cj[std::size_t(j)];
            nxt[std::size_t(j) - 1] += 0.5 * cj[std::size_t(j)];
        }
        cj.swap(nxt);
        if (k > kswitch) {
            Cx acc(0.0, 0.0);
            for (int j = k & 1; j <= k; j += 2)
                acc += cj[std::size_t(j)] * tau[std::size_t(j)];
            mu[std::size_t(k)] = acc;
        }
    }
    return mu;
}

inline std::vector<Cx> conj_all(std::vector<Cx> v) {
    for (Cx& z : v) z = std::conj(z);
    return v;
}

}  // namespace detail

inline PowerMomentTable power_moments(int K, double omega) {
    require(K >= 0, "power_moments: K must be >= 0");
    require_finite(omega, "power_moments: omega");
    if (omega < 0.0)
        return {omega, detail::conj_all(detail::mu_core(K, -omega))};
    return {omega, detail::mu_core(K, omega)};
}

inline ChebMomentTable cheb_moments(int K, double omega) {
    require(K >= 0, "cheb_moments: K must be >= 0");
    require_finite(omega, "cheb_moments: omega");
    if (omega < 0.0)
        return {omega, detail::conj_all(detail::tau_core(K, -omega))};
    return {omega, detail::tau_core(K, omega)};
}

}  // namespace oscquad
