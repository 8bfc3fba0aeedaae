#pragma once

// Chebyshev-basis machinery: the extreme-point grid of T_{n-1}, degree-(n-1)
// interpolation through it via a type-I DCT (FFT-accelerated when n-1 is a
// power of two), and Clenshaw evaluation for real and complex arguments.

#include <cmath>
#include <cstddef>
#include <vector>

#include "oscquad/common.hpp"

namespace oscquad {

struct ChebyshevExpansion {
    std::vector<Cx> coeffs;  // index k corresponds to T_k
    int degree() const { return int(coeffs.size()) - 1; }
};

// x_j = cos(j pi/(n-1)), j = 0..n-1, descending from +1 to -1. The sine form
// makes the grid exactly antisymmetric and exactly nested: the points for n
// all reappear, bit for bit, among the points for 2n-1.
inline std::vector<double> cheb_points(int n) {
    require(n >= 2, "cheb_points: n must be >= 2");
    const std::size_t sz = std::size_t(n);
    std::vector<double> x(sz);
    const int N = n - 1;
    for (int j = 0; j < n; ++j)
        x[std::size_t(j)] = std::sin(pi * (N - 2 * j) / (2.0 * N));
    return x;
}

template <class X>
inline Cx cheb_eval(const ChebyshevExpansion& p, X x) {
    if (p.coeffs.empty()) return Cx(0.0, 0.0);
    Cx b1(0.0, 0.0), b2(0.0, 0.0);
    for (std::size_t k = p.coeffs.size(); k-- > 1;) {
        const Cx b = p.coeffs[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    return p.coeffs[0] + x * b1 - b2;
}

namespace detail {

inline bool is_pow2(int m) { return m >= 1 && (m & (m - 1)) == 0; }

// In-place iterative radix-2 FFT, length a power of two.
inline void fft_pow2(std::vector<Cx>& a) {
    const std::size_t L = a.size();
    for (std::size_t i = 1, j = 0; i < L; ++i) {
        std::size_t bit = L >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= L; len <<= 1) {
        const double ang = -2.0 * pi / double(len);
        const Cx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < L; i += len) {
            Cx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Cx u = a[i + k];
                const Cx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Type-I DCT of the sample vector f_0..f_N (N = n-1): returns
// d_k = (2/N) * sum''_j f_j cos(jk pi/N), the double prime halving the
// j=0 and j=N terms.
inline std::vector<Cx> dct1(const std::vector<Cx>& f) {
    const int N = int(f.size()) - 1;
    std::vector<Cx> d(f.size());
    if (N == 0) {
        d[0] = f[0];
        return d;
    }
    if (is_pow2(N)) {
        // Even extension of length 2N; the FFT of the extension evaluates
        // N*d_k in its first N+1 bins.
        std::vector<Cx> v(std::size_t(2 * N));
        for (int j = 0; j <= N; ++j) v[std::size_t(j)] = f[std::size_t(j)];
        for (int j = 1; j < N; ++j)
            v[std::size_t(2 * N - j)] = f[std::size_t(j)];
        fft_pow2(v);
        for (int k = 0; k <= N; ++k) d[std::size_t(k)] = v[std::size_t(k)] / double(N);
        return d;
    }
    // Direct evaluation with an exact periodic cosine table.
    std::vector<double> cs(std::size_t(2 * N));
    for (int r = 0; r < 2 * N; ++r) cs[std::size_t(r)] = std::cos(pi * r / double(N));
    for (int k = 0; k <= N; ++k) {
        Cx acc = 0.5 * (f[0] + (k % 2 == 0 ? f[std::size_t(N)] : -f[std::size_t(N)]));
        for (int j = 1; j < N; ++j)
            acc += f[std::size_t(j)] * cs[std::size_t((j * k) % (2 * N))];
        d[std::size_t(k)] = 2.0 * acc / double(N);
    }
    return d;
}

}  // namespace detail

// Degree-(n-1) expansion interpolating f at the n Chebyshev points.
inline ChebyshevExpansion cheb_interpolate(const Integrand& f, int n) {
    require(n >= 2, "cheb_interpolate: n must be >= 2");
    const std::vector<double> x = cheb_points(n);
    const std::size_t sz = std::size_t(n);
    std::vector<Cx> samples(sz);
    for (int j = 0; j < n; ++j) samples[std::size_t(j)] = f(x[std::size_t(j)]);
    std::vector<Cx> d = detail::dct1(samples);
    ChebyshevExpansion p;
    p.coeffs = std::move(d);
    p.coeffs.front() *= 0.5;
    if (n >= 2) p.coeffs.back() *= 0.5;
    return p;
}

}  // namespace oscquad
