#include "esg/reconstruct.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace esg {

cplx q_derivative_combo(const RHSolution& sol) { return 2.0 * sol.psi_star.e21; }

namespace {

// Neville extrapolation to r = 0 of complex samples (r_i, f_i)
cplx neville_at_zero(const std::vector<double>& r, std::vector<cplx> f) {
    const std::size_t m = r.size();
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = 0; i + level < m; ++i)
            f[i] = (r[i + level] * f[i] - r[i] * f[i + 1]) / (r[i + level] - r[i]);
    return f[0];
}

}  // namespace

double q_from_lambda_zero(const ContourDiscretization& disc, const RHSolution& sol,
                          const ProbeConfig& probe, double* imag_leak) {
    if (probe.radii.size() < 2)
        throw config_error("q_from_lambda_zero: need at least two probe radii");
    for (double r : probe.radii)
        if (!(r > disc.config().r_min))
            throw resolution_error("q_from_lambda_zero: probe radius below r_min");

    const cplx dir = std::polar(1.0, probe.arg);
    std::vector<cplx> cos_half, sin_half;
    for (double r : probe.radii) {
        const Matrix2 psi = psi_at(sol, disc, r * dir);
        cos_half.push_back(0.5 * (psi.e11 + psi.e22));
        // Psi_21 -> i sin(q/2), so -i Psi_21 -> sin(q/2)
        sin_half.push_back(cplx(0.0, -0.5) * (psi.e21 + psi.e12));
    }
    const cplx ch = neville_at_zero(probe.radii, cos_half);
    const cplx sh = neville_at_zero(probe.radii, sin_half);
    if (imag_leak)
        *imag_leak = std::max({*imag_leak, std::abs(ch.imag()), std::abs(sh.imag())});
    return 2.0 * std::atan2(sh.real(), ch.real());
}

std::vector<double> q_from_psistar(const std::vector<RHSolution>& row,
                                   const std::vector<double>& sign_source, double dx,
                                   double cos_tol, double* imag_leak) {
    const std::size_t m = row.size();
    if (m < 3) throw domain_error("q_from_psistar: need >= 3 consecutive x-samples");
    if (sign_source.size() != m)
        throw domain_error("q_from_psistar: sign source size mismatch");

    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        cplx d11;
        if (i == 0)
            d11 = (-3.0 * row[0].psi_star.e11 + 4.0 * row[1].psi_star.e11 -
                   row[2].psi_star.e11) /
                  (2.0 * dx);
        else if (i + 1 == m)
            d11 = (3.0 * row[m - 1].psi_star.e11 - 4.0 * row[m - 2].psi_star.e11 +
                   row[m - 3].psi_star.e11) /
                  (2.0 * dx);
        else
            d11 = (row[i + 1].psi_star.e11 - row[i - 1].psi_star.e11) / (2.0 * dx);

        const cplx p21 = row[i].psi_star.e21;
        // cos q = 1 + 4i (psi*_x)_11 + 2 (psi*_21)^2: from the lambda^-1
        // coefficient of the x-part of the Lax pair,
        //   (psi*_x)_11 = (i/8)(q_x - i q_y)^2 + (i/4)(1 - cos q)
        const cplx cos_q = 1.0 + cplx(0.0, 4.0) * d11 + 2.0 * p21 * p21;
        if (imag_leak) *imag_leak = std::max(*imag_leak, std::abs(cos_q.imag()));
        const double c = cos_q.real();
        if (std::abs(c) > 1.0 + cos_tol)
            throw solver_error("q_from_psistar: |cos q| > 1 + tol, solve under-resolved");
        out[i] = std::copysign(std::acos(std::clamp(c, -1.0, 1.0)), sign_source[i]);
    }
    return out;
}

void GridSpec::validate(double L) const {
    if (!(nx >= 1 && ny >= 1)) throw config_error("grid: nx, ny must be >= 1");
    if (!(x_min > 0.0 && x_max >= x_min)) throw config_error("grid: require 0 < x_min <= x_max");
    if (!(y_margin > 0.0 && 2.0 * y_margin < L))
        throw config_error("grid: require 0 < y_margin < L/2");
}

std::vector<double> GridSpec::xs() const {
    std::vector<double> v(nx);
    const double dx = (nx > 1) ? (x_max - x_min) / (nx - 1) : 0.0;
    for (int i = 0; i < nx; ++i) v[i] = x_min + i * dx;
    return v;
}

std::vector<double> GridSpec::ys(double L) const {
    std::vector<double> v(ny);
    const double y_max = L - y_margin;
    const double dy = (ny > 1) ? (y_max - y_margin) / (ny - 1) : 0.0;
    for (int i = 0; i < ny; ++i) v[i] = y_margin + i * dy;
    return v;
}

SolutionField field_sweep(const GridSpec& grid, const ContourDiscretization& disc,
                          const SweepConfig& cfg) {
    const ProblemParams& params = disc.params();
    grid.validate(params.L);

    SolutionField field;
    field.grid = grid;
    field.params = params;
    field.xs = grid.xs();
    field.ys = grid.ys(params.L);
    const std::size_t total = field.xs.size() * field.ys.size();
    field.q.assign(total, 0.0);
    field.q_alt.assign(total, 0.0);
    field.iterations.assign(total, 0);
    field.residuals.assign(total, 0.0);
    field.has_alt = cfg.cross_check;

    std::vector<double> leaks(total, 0.0);
    std::vector<char> failed(total, 0);

    const double ddx = std::min(cfg.cross_check_dx, 0.5 * grid.x_min);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            const int ix = int(idx % field.xs.size());
            const int iy = int(idx / field.xs.size());
            const double x = field.xs[ix], y = field.ys[iy];
            try {
                double leak = 0.0;
                if (cfg.cross_check) {
                    std::vector<RHSolution> row;
                    row.reserve(3);
                    for (int s = -1; s <= 1; ++s)
                        row.push_back(solve_rh({x + s * ddx, y}, disc, cfg.solver));
                    const RHSolution& center = row[1];
                    const double q0 = q_from_lambda_zero(disc, center, cfg.probe, &leak);
                    // sign source for the full triplet: q varies slowly over ddx
                    std::vector<double> signs(3, q0);
                    const std::vector<double> alt = q_from_psistar(row, signs, ddx, 1e-6, &leak);
                    field.q[idx] = q0;
                    field.q_alt[idx] = alt[1];
                    field.iterations[idx] = center.iterations;
                    field.residuals[idx] = center.residual;
                } else {
                    const RHSolution sol = solve_rh({x, y}, disc, cfg.solver);
                    const double q0 = q_from_lambda_zero(disc, sol, cfg.probe, &leak);
                    field.q[idx] = q0;
                    field.q_alt[idx] = q0;
                    field.iterations[idx] = sol.iterations;
                    field.residuals[idx] = sol.residual;
                }
                leaks[idx] = leak;
            } catch (const error&) {
                failed[idx] = 1;
            }
        }
    };

    int n_threads = cfg.threads > 0 ? cfg.threads : int(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, int(total)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < total; ++i) {
        field.imag_leak = std::max(field.imag_leak, leaks[i]);
        if (failed[i]) {
            field.partial = true;
            field.failed_points.emplace_back(int(i % field.xs.size()),
                                             int(i / field.xs.size()));
        }
    }
    return field;
}

}  // namespace esg
