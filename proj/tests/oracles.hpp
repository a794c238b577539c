#pragma once

// Test-only independent oracles. Everything here is deliberately naive
// (adaptive Simpson quadrature, dense finite differences, series sums) and
// shares no code path with the implementations it checks.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "esg/core.hpp"

namespace oracle {

using esg::cplx;

// adaptive Simpson on [a, b] for complex integrands of a real variable
inline cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                        cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f(lm), frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline cplx integrate(const std::function<cplx(double)>& f, double a, double b,
                      double tol = 1e-12, int depth = 48) {
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Born-level b_1 for side-1 data q(x,L) = 0, q_y(x,L) = eps e^{-x}:
// direct quadrature of -(eps/4) int_0^inf e^{-Omega xi} e^{-xi} dxi
inline cplx born_b1(double eps, const cplx& lambda, double x_max = 60.0) {
    const cplx om = esg::omega_big(lambda);
    return integrate([&](double xi) { return -(eps / 4.0) * std::exp(-om * xi - xi); }, 0.0,
                     x_max, 1e-14);
}

// brute-force H(lambda): the constant-subtracted Cauchy integral, summed
// panel by panel out to a huge window (forcing the quadrature to resolve the
// structure near |lambda'| ~ 1), plus the exact whole-line constant term
// c_inf * i pi sign(Im lambda).
inline cplx brute_H(const cplx& lambda, double d, double L, double R = 2.5e4) {
    const double tau = std::tan(0.5 * d);
    const double c_inf = std::log1p(tau * tau);
    auto c_of = [&](double t) {
        if (t == 0.0) return c_inf;
        const double w = 0.5 * (t + 1.0 / t);
        const double th = std::abs(0.5 * w * L) > 20.0 ? (w > 0 ? 1.0 : -1.0)
                                                       : std::tanh(0.5 * w * L);
        const double g = (1.0 - t * t) / (1.0 + t * t) * th * tau;
        return std::log1p(g * g);
    };
    auto f = [&](double t) { return (c_of(t) - c_inf) / (cplx(t, 0.0) - lambda); };
    const double edges[] = {0.0, 0.1, 0.3, 0.7, 1.0, 1.5, 2.5, 5.0, 15.0, 50.0, 200.0,
                            2000.0, R};
    cplx sum(0.0, 0.0);
    for (std::size_t i = 1; i < sizeof(edges) / sizeof(edges[0]); ++i) {
        sum += integrate(f, edges[i - 1], edges[i], 1e-13, 48);
        sum += integrate(f, -edges[i], -edges[i - 1], 1e-13, 48);
    }
    sum += cplx(0.0, (lambda.imag() > 0.0) ? esg::pi : -esg::pi) * c_inf;
    return sum / cplx(0.0, 2.0 * esg::pi);
}

// dense 5-point finite-difference solve of the linearized problem
//   q_xx + q_yy = q, q(0,y) = d, q(x,0) = q(x,L) = 0, q(X,y) ~ 0,
// via a sine transform in y (each y-mode is a tridiagonal system in x).
// Returns the solution on the interior grid (nx-1) x (ny-1).
inline std::vector<double> fd_linear_solve(double d, double L, double X, int nx, int ny,
                                           std::vector<double>& xs, std::vector<double>& ys) {
    const double hx = X / nx, hy = L / ny;
    const int mx = nx - 1, my = ny - 1;
    xs.resize(mx);
    ys.resize(my);
    for (int i = 0; i < mx; ++i) xs[i] = (i + 1) * hx;
    for (int j = 0; j < my; ++j) ys[j] = (j + 1) * hy;

    std::vector<double> q(std::size_t(mx) * my, 0.0);
    // mode m: sin(m pi y / L); FD eigenvalue of -d2/dy2 is
    // (2 - 2 cos(m pi hy / L)) / hy^2
    for (int m = 1; m <= my; ++m) {
        const double mu = (2.0 - 2.0 * std::cos(m * esg::pi * hy / L)) / (hy * hy);
        // boundary coefficient: q(0, y_j) = d has sine coefficient
        // (2/ny) sum_j d sin(m pi j / ny)
        double bc = 0.0;
        for (int j = 1; j <= my; ++j) bc += d * std::sin(m * esg::pi * j / double(ny));
        bc *= 2.0 / ny;
        // tridiagonal: (-v_{i-1} + 2 v_i - v_{i+1})/hx^2 + (mu + 1) v_i = rhs
        std::vector<double> a(mx, -1.0 / (hx * hx)), b(mx, 2.0 / (hx * hx) + mu + 1.0),
            c(mx, -1.0 / (hx * hx)), r(mx, 0.0);
        r[0] = bc / (hx * hx);
        for (int i = 1; i < mx; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            r[i] -= w * r[i - 1];
        }
        std::vector<double> v(mx);
        v[mx - 1] = r[mx - 1] / b[mx - 1];
        for (int i = mx - 2; i >= 0; --i) v[i] = (r[i] - c[i] * v[i + 1]) / b[i];
        for (int j = 0; j < my; ++j) {
            const double s = std::sin(m * esg::pi * (j + 1) / double(ny));
            for (int i = 0; i < mx; ++i) q[std::size_t(j) * mx + i] += v[i] * s;
        }
    }
    return q;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234u);
    return gen;
}

inline double uniform(double a, double b) {
    std::uniform_real_distribution<double> dist(a, b);
    return dist(rng());
}

inline cplx random_cplx(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale)};
}

}  // namespace oracle
