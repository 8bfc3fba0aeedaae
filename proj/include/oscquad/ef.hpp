#pragma once

// Pure exponentially fitted Gauss rules with antisymmetric nodes and
// symmetric weights. The defining residual system is
//   H_0 = 2 sin w - w sum_k w_k cos(w c_k),   H_i = d/dw H_{i-1},
// solved for the independent half of the nodes/weights by damped Newton.
// The "classical" solution branch is the one passing through the Legendre
// rule at w=0; it is traced by continuation in w and cached per nu, so a
// query interpolates the stored table and polishes locally. Beyond the
// last frequency the continuation can reach, a diagnostic error carrying
// the last converged w is thrown; the branch is never extrapolated.

#include <array>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oscquad/common.hpp"
#include "oscquad/gauss.hpp"

namespace oscquad {

struct EFRule {
    int nu = 0;
    double omega = 0.0;
    std::vector<double> nodes;    // antisymmetric, ascending
    std::vector<double> weights;  // symmetric
    double residual_norm = 0.0;
};

struct EfBranchRow {
    double omega = 0.0;
    std::vector<double> nodes, weights;
};

class EfContinuationError : public std::runtime_error {
  public:
    double last_converged_omega;
    EfContinuationError(const std::string& what, double w)
        : std::runtime_error(what), last_converged_omega(w) {}
};

namespace detail {

inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// cos(theta + j pi/2) and sin(theta + j pi/2) through exact quadrant shifts.
inline double cos_shift(double ct, double st, int j) {
    switch (((j % 4) + 4) % 4) {
        case 0: return ct;
        case 1: return -st;
        case 2: return -ct;
        default: return st;
    }
}
inline double sin_shift(double ct, double st, int j) {
    return cos_shift(ct, st, j - 1);
}

// Per-node contribution t_m(c, w) = w [w c^m cos(wc + m pi/2)
//   + m c^{m-1} cos(wc + (m-1) pi/2)] and its c-derivative.
inline double ef_term(double omega, double c, double m_w, int m) {
    const double ct = std::cos(omega * c), st = std::sin(omega * c);
    double t = omega * ipow(c, m) * cos_shift(ct, st, m);
    if (m >= 1) t += m * ipow(c, m - 1) * cos_shift(ct, st, m - 1);
    return m_w * t;
}
inline double ef_term_dc(double omega, double c, double m_w, int m) {
    const double ct = std::cos(omega * c), st = std::sin(omega * c);
    double t = -omega * omega * ipow(c, m) * sin_shift(ct, st, m);
    if (m >= 1) {
        t += omega * m * ipow(c, m - 1) * cos_shift(ct, st, m);
        t -= m * omega * ipow(c, m - 1) * sin_shift(ct, st, m - 1);
    }
    if (m >= 2) t += m * (m - 1) * ipow(c, m - 2) * cos_shift(ct, st, m - 1);
    return m_w * t;
}

}  // namespace detail

// H_0..H_{nu-1} for the given full node/weight sets. The derivatives with
// respect to omega are evaluated in closed trigonometric form.
inline std::vector<double> ef_residual(int nu, double omega,
                                       const std::vector<double>& nodes,
                                       const std::vector<double>& weights) {
    require(nu >= 1 && nu <= 4, "ef_residual: nu must be in 1..4");
    require(int(nodes.size()) == nu && int(weights.size()) == nu,
            "ef_residual: nodes/weights must have length nu");
    require_finite(omega, "ef_residual: omega");
    const std::size_t nun = std::size_t(nu);
    std::vector<double> H(nun);
    const double cw = std::cos(omega), sw = std::sin(omega);
    for (int m = 0; m < nu; ++m) {
        double h = 2.0 * detail::sin_shift(cw, sw, m);  // 2 sin(w + m pi/2)
        for (int k = 0; k < nu; ++k)
            h -= detail::ef_term(omega, nodes[std::size_t(k)],
                                 weights[std::size_t(k)], m);
        H[std::size_t(m)] = h;
    }
    return H;
}

namespace detail {

// The independent unknowns u per nu, and the full sets they expand to:
//   nu=2: u = (c, w)            ->  nodes {-c, c},        weights {w, w}
//   nu=3: u = (c, w_out, w_mid) ->  {-c, 0, c},           {w_out, w_mid, w_out}
//   nu=4: u = (c1, c2, w1, w2)  ->  {-c2, -c1, c1, c2},   {w2, w1, w1, w2}
inline void ef_expand(int nu, const std::vector<double>& u,
                      std::vector<double>& c, std::vector<double>& w) {
    if (nu == 2) {
        c = {-u[0], u[0]};
        w = {u[1], u[1]};
    } else if (nu == 3) {
        c = {-u[0], 0.0, u[0]};
        w = {u[1], u[2], u[1]};
    } else {
        c = {-u[1], -u[0], u[0], u[1]};
        w = {u[3], u[2], u[2], u[3]};
    }
}

inline bool ef_u_valid(int nu, const std::vector<double>& u) {
    if (nu == 2 || nu == 3) return u[0] > 0.0 && u[0] < 1.5;
    return u[0] > 0.0 && u[0] < u[1] && u[1] < 1.5;
}

inline std::vector<double> ef_residual_u(int nu, double omega,
                                         const std::vector<double>& u) {
    std::vector<double> c, w;
    ef_expand(nu, u, c, w);
    return ef_residual(nu, omega, c, w);
}

// Jacobian dH_m/du assembled from the analytic per-node partials.
inline std::vector<std::vector<double>> ef_jacobian_u(
    int nu, double omega, const std::vector<double>& u) {
    std::vector<double> c, w;
    ef_expand(nu, u, c, w);
    const int n = nu;
    const std::size_t nn = std::size_t(n);
    // Partials of H_m with respect to each full node and weight.
    std::vector<std::vector<double>> dc(nn), dw(nn);
    for (int m = 0; m < n; ++m) {
        dc[std::size_t(m)].resize(std::size_t(n));
        dw[std::size_t(m)].resize(std::size_t(n));
        for (int k = 0; k < n; ++k) {
            dc[std::size_t(m)][std::size_t(k)] =
                -ef_term_dc(omega, c[std::size_t(k)], w[std::size_t(k)], m);
            dw[std::size_t(m)][std::size_t(k)] =
                -ef_term(omega, c[std::size_t(k)], 1.0, m);
        }
    }
    std::vector<std::vector<double>> J(std::size_t(n),
                                       std::vector<double>(u.size(), 0.0));
    for (int m = 0; m < n; ++m) {
        auto& row = J[std::size_t(m)];
        const auto& dcm = dc[std::size_t(m)];
        const auto& dwm = dw[std::size_t(m)];
        if (nu == 2) {
            row[0] = -dcm[0] + dcm[1];
            row[1] = dwm[0] + dwm[1];
        } else if (nu == 3) {
            row[0] = -dcm[0] + dcm[2];
            row[1] = dwm[0] + dwm[2];
            row[2] = dwm[1];
        } else {
            row[0] = -dcm[1] + dcm[2];
            row[1] = -dcm[0] + dcm[3];
            row[2] = dwm[1] + dwm[2];
            row[3] = dwm[0] + dwm[3];
        }
    }
    return J;
}

// Gaussian elimination with partial pivoting; n <= 4.
inline bool solve_dense(std::vector<std::vector<double>> A,
                        std::vector<double> b, std::vector<double>& x) {
    const int n = int(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[std::size_t(r)][std::size_t(col)]) >
                std::abs(A[std::size_t(piv)][std::size_t(col)]))
                piv = r;
        if (A[std::size_t(piv)][std::size_t(col)] == 0.0) return false;
        std::swap(A[std::size_t(col)], A[std::size_t(piv)]);
        std::swap(b[std::size_t(col)], b[std::size_t(piv)]);
        for (int r = col + 1; r < n; ++r) {
            const double l = A[std::size_t(r)][std::size_t(col)] /
                             A[std::size_t(col)][std::size_t(col)];
            if (l == 0.0) continue;
            for (int cc = col; cc < n; ++cc)
                A[std::size_t(r)][std::size_t(cc)] -=
                    l * A[std::size_t(col)][std::size_t(cc)];
            b[std::size_t(r)] -= l * b[std::size_t(col)];
        }
    }
    x.assign(std::size_t(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[std::size_t(r)];
        for (int cc = r + 1; cc < n; ++cc)
            s -= A[std::size_t(r)][std::size_t(cc)] * x[std::size_t(cc)];
        x[std::size_t(r)] = s / A[std::size_t(r)][std::size_t(r)];
    }
    return true;
}

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Damped Newton at fixed omega. Returns the achieved residual norm, or
// nullopt on failure.
inline std::optional<double> ef_newton(int nu, double omega,
                                       std::vector<double>& u) {
    const double tol = 3e-14 * std::max(1.0, omega);
    const double accept = 1e-12 * std::max(1.0, omega);
    std::vector<double> H = ef_residual_u(nu, omega, u);
    double nH = inf_norm(H);
    for (int it = 0; it < 60; ++it) {
        if (nH <= tol) return nH;
        const auto J = ef_jacobian_u(nu, omega, u);
        std::vector<double> d, negH(H);
        for (double& h : negH) h = -h;
        if (!solve_dense(J, negH, d)) return std::nullopt;
        double lambda = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 45; ++ls) {
            std::vector<double> ut(u);
            for (std::size_t i = 0; i < u.size(); ++i) ut[i] += lambda * d[i];
            if (ef_u_valid(nu, ut)) {
                const std::vector<double> Ht = ef_residual_u(nu, omega, ut);
                const double nT = inf_norm(Ht);
                if (nT < nH) {
                    u = ut;
                    H = Ht;
                    nH = nT;
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!moved) break;
    }
    if (nH <= accept) return nH;
    return std::nullopt;
}

struct EfBranch {
    std::mutex mtx;
    std::vector<EfBranchRow> rows;  // ascending omega
    std::vector<std::vector<double>> us;  // unknown vectors per row
};

inline EfBranch& ef_branch(int nu) {
    static std::array<EfBranch, 5> branches;
    return branches[std::size_t(nu)];
}

inline std::vector<double> ef_anchor_u(int nu) {
    const GaussRule g = legendre_rule(nu);
    if (nu == 2) return {g.nodes[1], g.weights[1]};
    if (nu == 3) return {g.nodes[2], g.weights[2], g.weights[1]};
    return {g.nodes[2], g.nodes[3], g.weights[2], g.weights[3]};
}

inline double ef_next_grid(double cur) {
    if (cur < 10.0 - 1e-12) return std::min(10.0, cur + 0.1);
    return cur * 1.05;
}

// Extend the cached branch to at least omega_target. Caller holds the lock.
inline void ef_extend_locked(int nu, EfBranch& br, double omega_target) {
    if (br.rows.empty()) {
        EfBranchRow row;
        row.omega = 0.0;
        const GaussRule g = legendre_rule(nu);
        row.nodes = g.nodes;
        row.weights = g.weights;
        br.rows.push_back(row);
        br.us.push_back(ef_anchor_u(nu));
    }
    while (br.rows.back().omega < omega_target) {
        const double cur = br.rows.back().omega;
        const double goal = std::min(ef_next_grid(cur), omega_target);
        double at = cur;
        std::vector<double> u = br.us.back();
        double step = goal - cur;
        while (at < goal) {
            const double next = std::min(goal, at + step);
            std::vector<double> guess = u;
            if (br.rows.size() >= 2) {
                const auto& u1 = br.us[br.us.size() - 1];
                const auto& u0 = br.us[br.us.size() - 2];
                const double d1 = br.rows.back().omega -
                                  br.rows[br.rows.size() - 2].omega;
                if (d1 > 0 && at == br.rows.back().omega) {
                    const double scale = (next - at) / d1;
                    for (std::size_t i = 0; i < guess.size(); ++i)
                        guess[i] = u1[i] + scale * (u1[i] - u0[i]);
                    if (!ef_u_valid(nu, guess)) guess = u;
                }
            }
            const auto res = ef_newton(nu, next, guess);
            if (res) {
                EfBranchRow row;
                row.omega = next;
                ef_expand(nu, guess, row.nodes, row.weights);
                br.rows.push_back(row);
                br.us.push_back(guess);
                u = guess;
                at = next;
            } else {
                step *= 0.5;
                if (step < 1e-6 * std::max(1.0, at))
                    throw EfContinuationError(
                        "ef continuation stalled (ill-conditioned regime)", at);
            }
        }
    }
}

}  // namespace detail

// Rows of the cached classical branch up to omega_max (extending if needed).
inline std::vector<EfBranchRow> ef_branch_rows(int nu, double omega_max) {
    require(nu >= 2 && nu <= 4, "ef_branch_rows: nu must be in 2..4");
    require(omega_max >= 0.0, "ef_branch_rows: omega_max must be >= 0");
    auto& br = detail::ef_branch(nu);
    std::lock_guard<std::mutex> lock(br.mtx);
    detail::ef_extend_locked(nu, br, omega_max);
    std::vector<EfBranchRow> out;
    for (const auto& r : br.rows) {
        if (r.omega <= omega_max * (1.0 + 1e-12)) out.push_back(r);
    }
    return out;
}

inline EFRule solve_ef(int nu, double omega) {
    require(nu >= 1 && nu <= 4, "solve_ef: nu must be in 1..4");
    require(omega >= 0.0, "solve_ef: omega must be >= 0");
    require_finite(omega, "solve_ef: omega");
    EFRule rule;
    rule.nu = nu;
    rule.omega = omega;
    if (nu == 1) {
        rule.nodes = {0.0};
        rule.weights = {omega == 0.0 ? 2.0 : 2.0 * std::sin(omega) / omega};
        rule.residual_norm =
            std::abs(ef_residual(1, omega, rule.nodes, rule.weights)[0]);
        return rule;
    }
    auto& br = detail::ef_branch(nu);
    std::lock_guard<std::mutex> lock(br.mtx);
    detail::ef_extend_locked(nu, br, omega);
    if (omega == 0.0) {
        rule.nodes = br.rows[0].nodes;
        rule.weights = br.rows[0].weights;
        rule.residual_norm = 0.0;
        return rule;
    }
    // Bracket omega in the table and polish an interpolated guess.
    std::size_t lo = 0, hi = br.rows.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (br.rows[mid].omega <= omega) lo = mid;
        else hi = mid;
    }
    std::vector<double> u = br.us[lo];
    if (br.rows[hi].omega > br.rows[lo].omega) {
        const double t = (omega - br.rows[lo].omega) /
                         (br.rows[hi].omega - br.rows[lo].omega);
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] = (1.0 - t) * br.us[lo][i] + t * br.us[hi][i];
    }
    const auto res = detail::ef_newton(nu, omega, u);
    if (!res)
        throw EfContinuationError("ef polish failed between branch rows",
                                  br.rows[lo].omega);
    detail::ef_expand(nu, u, rule.nodes, rule.weights);
    rule.residual_norm = *res;
    return rule;
}

inline Cx ef_quadrature(const EFRule& rule, const Integrand& f) {
    Cx acc(0.0, 0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double c = rule.nodes[k];
        acc += rule.weights[k] * f(c) *
               Cx(std::cos(rule.omega * c), std::sin(rule.omega * c));
    }
    return acc;
}

}  // namespace oscquad
