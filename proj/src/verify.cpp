#include "esg/verify.hpp"

#include <algorithm>
#include <cmath>

namespace esg {

double linear_oracle(const PhysicalPoint& p, const OracleSeries& oracle) {
    double sum = 0.0;
    for (int n = 1; n <= oracle.n_terms; n += 2) {
        const double ky = n * pi / oracle.L;
        const double kappa = std::sqrt(1.0 + ky * ky);
        sum += (4.0 * oracle.d / (n * pi)) * std::sin(ky * p.y) * std::exp(-kappa * p.x);
    }
    return sum;
}

double linear_oracle_dx(const PhysicalPoint& p, const OracleSeries& oracle) {
    double sum = 0.0;
    for (int n = 1; n <= oracle.n_terms; n += 2) {
        const double ky = n * pi / oracle.L;
        const double kappa = std::sqrt(1.0 + ky * ky);
        sum -= kappa * (4.0 * oracle.d / (n * pi)) * std::sin(ky * p.y) * std::exp(-kappa * p.x);
    }
    return sum;
}

double linear_oracle_dy(const PhysicalPoint& p, const OracleSeries& oracle) {
    double sum = 0.0;
    for (int n = 1; n <= oracle.n_terms; n += 2) {
        const double ky = n * pi / oracle.L;
        const double kappa = std::sqrt(1.0 + ky * ky);
        sum += ky * (4.0 * oracle.d / (n * pi)) * std::cos(ky * p.y) * std::exp(-kappa * p.x);
    }
    return sum;
}

namespace {

void require_uniform(const std::vector<double>& v, double& h, const char* what) {
    if (v.size() < 2) throw grid_error(std::string(what) + ": need >= 2 points");
    h = v[1] - v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs((v[i] - v[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw grid_error(std::string(what) + ": grid must be uniform");
}

// value at 0 of the quadratic through (t1,f1),(t2,f2),(t3,f3)
double extrapolate_to_zero(double t1, double f1, double t2, double f2, double t3, double f3) {
    const double w1 = t2 * t3 / ((t1 - t2) * (t1 - t3));
    const double w2 = t1 * t3 / ((t2 - t1) * (t2 - t3));
    const double w3 = t1 * t2 / ((t3 - t1) * (t3 - t2));
    return w1 * f1 + w2 * f2 + w3 * f3;
}

}  // namespace

double pde_residual(const SolutionField& field) {
    double hx, hy;
    require_uniform(field.xs, hx, "pde_residual x");
    require_uniform(field.ys, hy, "pde_residual y");
    const int nx = int(field.xs.size()), ny = int(field.ys.size());
    if (nx < 3 || ny < 3) throw grid_error("pde_residual: need >= 3 points per direction");

    double worst = 0.0;
    for (int iy = 1; iy + 1 < ny; ++iy) {
        for (int ix = 1; ix + 1 < nx; ++ix) {
            const double qc = field.at(ix, iy);
            const double lap = (field.at(ix + 1, iy) - 2.0 * qc + field.at(ix - 1, iy)) / (hx * hx) +
                               (field.at(ix, iy + 1) - 2.0 * qc + field.at(ix, iy - 1)) / (hy * hy);
            worst = std::max(worst, std::abs(lap - std::sin(qc)));
        }
    }
    return worst;
}

BcRecovery bc_recovery(const SolutionField& field, const ProblemParams& params) {
    const int nx = int(field.xs.size()), ny = int(field.ys.size());
    if (nx < 3 || ny < 3) throw grid_error("bc_recovery: need >= 3 points per direction");
    double hx, hy;
    require_uniform(field.xs, hx, "bc_recovery x");
    require_uniform(field.ys, hy, "bc_recovery y");
    if (field.grid.y_margin > 3.0 * hy + 1e-12)
        throw grid_error("bc_recovery: grid too far from the y walls (> 3 spacings)");
    if (field.grid.x_min > 3.0 * hx + 1e-12)
        throw grid_error("bc_recovery: grid too far from the x = 0 wall (> 3 spacings)");

    BcRecovery rec;
    const double L = params.L;
    // sides 1/3: skip the two columns next to the x = 0 corners
    for (int ix = 2; ix < nx; ++ix) {
        const double x = field.xs[ix];
        (void)x;
        const double y1 = field.ys[0], y2 = field.ys[1], y3 = field.ys[2];
        const double v0 = extrapolate_to_zero(y1, field.at(ix, 0), y2, field.at(ix, 1), y3,
                                              field.at(ix, 2));
        rec.side3 = std::max(rec.side3, std::abs(v0));
        const double u1 = L - field.ys[ny - 1], u2 = L - field.ys[ny - 2],
                     u3 = L - field.ys[ny - 3];
        const double vL = extrapolate_to_zero(u1, field.at(ix, ny - 1), u2,
                                              field.at(ix, ny - 2), u3, field.at(ix, ny - 3));
        rec.side1 = std::max(rec.side1, std::abs(vL));
    }
    // side 2: skip two rows at each corner
    for (int iy = 2; iy + 2 < ny; ++iy) {
        const double x1 = field.xs[0], x2 = field.xs[1], x3 = field.xs[2];
        const double v = extrapolate_to_zero(x1, field.at(0, iy), x2, field.at(1, iy), x3,
                                             field.at(2, iy));
        rec.side2 = std::max(rec.side2, std::abs(v - params.d));
    }
    return rec;
}

std::vector<BoundarySideData> extract_side_traces(const SolutionField& field,
                                                  const ProblemParams& params) {
    const int nx = int(field.xs.size()), ny = int(field.ys.size());
    if (nx < 5 || ny < 5)
        throw grid_error("spectral_roundtrip: need >= 5 points per direction");
    double hx, hy;
    require_uniform(field.xs, hx, "roundtrip x");
    require_uniform(field.ys, hy, "roundtrip y");
    // the stencils assume the first interior line sits one spacing off the wall
    if (std::abs(field.xs[0] - hx) > 1e-9 || std::abs(field.ys[0] - hy) > 1e-9 ||
        std::abs((params.L - field.ys[ny - 1]) - hy) > 1e-9)
        throw grid_error("spectral_roundtrip: grid must include the wall-adjacent lines");

    // 4th-order one-sided normal derivatives, wall value from the boundary data
    std::vector<double> qy0(nx), qyL(nx), qx0(ny);
    for (int ix = 0; ix < nx; ++ix) {
        qy0[ix] = (48.0 * field.at(ix, 0) - 36.0 * field.at(ix, 1) + 16.0 * field.at(ix, 2) -
                   3.0 * field.at(ix, 3)) /
                  (12.0 * hy);
        qyL[ix] = (-48.0 * field.at(ix, ny - 1) + 36.0 * field.at(ix, ny - 2) -
                   16.0 * field.at(ix, ny - 3) + 3.0 * field.at(ix, ny - 4)) /
                  (12.0 * hy);
    }
    for (int iy = 0; iy < ny; ++iy) {
        qx0[iy] = (-25.0 * params.d + 48.0 * field.at(0, iy) - 36.0 * field.at(1, iy) +
                   16.0 * field.at(2, iy) - 3.0 * field.at(3, iy)) /
                  (12.0 * hx);
    }

    auto corner_extrap = [](double t1, double f1, double t2, double f2, double t3, double f3,
                            double t4, double f4, double t) {
        double out = 0.0;
        const double ts[4] = {t1, t2, t3, t4};
        const double fs[4] = {f1, f2, f3, f4};
        for (int a = 0; a < 4; ++a) {
            double w = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) w *= (t - ts[b]) / (ts[a] - ts[b]);
            out += w * fs[a];
        }
        return out;
    };

    // sides 1/3: nodes {0, x_1, ..., x_nx}; corner value extrapolated
    std::vector<double> xn(nx + 1);
    xn[0] = 0.0;
    for (int i = 0; i < nx; ++i) xn[i + 1] = field.xs[i];
    std::vector<double> s3n(nx + 1), s1n(nx + 1), zero1(nx + 1, 0.0);
    for (int i = 0; i < nx; ++i) {
        s3n[i + 1] = qy0[i];
        s1n[i + 1] = qyL[i];
    }
    s3n[0] = corner_extrap(xn[1], s3n[1], xn[2], s3n[2], xn[3], s3n[3], xn[4], s3n[4], 0.0);
    s1n[0] = corner_extrap(xn[1], s1n[1], xn[2], s1n[2], xn[3], s1n[3], xn[4], s1n[4], 0.0);

    // side 2: nodes {0, y_1, ..., y_ny, L}; corner values extrapolated
    std::vector<double> yn(ny + 2);
    yn[0] = 0.0;
    for (int i = 0; i < ny; ++i) yn[i + 1] = field.ys[i];
    yn[ny + 1] = params.L;
    std::vector<double> s2n(ny + 2), dval(ny + 2, params.d);
    for (int i = 0; i < ny; ++i) s2n[i + 1] = qx0[i];
    s2n[0] = corner_extrap(yn[1], s2n[1], yn[2], s2n[2], yn[3], s2n[3], yn[4], s2n[4], 0.0);
    s2n[ny + 1] = corner_extrap(yn[ny], s2n[ny], yn[ny - 1], s2n[ny - 1], yn[ny - 2],
                                s2n[ny - 2], yn[ny - 3], s2n[ny - 3], params.L);

    std::vector<BoundarySideData> sides;
    sides.emplace_back(Side::One, xn, zero1, s1n, 1e-2);
    sides.emplace_back(Side::Two, yn, dval, s2n, 1e-2);
    sides.emplace_back(Side::Three, xn, zero1, s3n, 1e-2);
    return sides;
}

double RoundtripReport::worst() const {
    double m = std::max(grab1, grab2);
    m = std::max(m, audit.max());
    m = std::max(m, std::max(unit_det1, std::max(unit_det2, unit_det3)));
    return m;
}

RoundtripReport spectral_roundtrip(const SolutionField& field,
                                   const LinearizableSpectrum& spec,
                                   const ProblemParams& params,
                                   const RoundtripOptions& opts) {
    const auto sides = extract_side_traces(field, params);
    const SpectralPair s1(sides[0], params, opts.volterra_steps);
    const SpectralPair s2(sides[1], params, opts.volterra_steps);
    const SpectralPair s3(sides[2], params, opts.volterra_steps);

    RoundtripReport rep;
    rep.tail_side1 = s1.tail_magnitude();
    rep.tail_side3 = s3.tail_magnitude();

    const auto [r1, r2] = global_relation_residual(s1, s2, s3, params, opts.upper_samples);
    rep.grab1 = r1;
    rep.grab2 = r2;
    rep.audit = relation_audit(s1, s3, spec, opts.real_samples);

    std::vector<cplx> real_cplx;
    for (double t : opts.real_samples) real_cplx.emplace_back(t, 0.0);
    rep.unit_det1 = unit_determinant_residual(s1, real_cplx);
    rep.unit_det3 = unit_determinant_residual(s3, real_cplx);
    std::vector<cplx> side2_samples = real_cplx;
    for (const cplx& l : opts.upper_samples) side2_samples.push_back(l);
    rep.unit_det2 = unit_determinant_residual(s2, side2_samples);
    return rep;
}

}  // namespace esg
