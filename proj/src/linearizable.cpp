#include "esg/linearizable.hpp"

#include <algorithm>
#include <cmath>

namespace esg {

namespace {

// 12-point Gauss-Legendre rule on [-1, 1] (nodes symmetric; positive half listed)
constexpr int kGL = 12;
constexpr double kGLx[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                            0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGLw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                            0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

void gl_nodes(double a, double b, double* t, double* w) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 6; ++i) {
        t[i] = mid - half * kGLx[5 - i];
        w[i] = half * kGLw[5 - i];
        t[6 + i] = mid + half * kGLx[i];
        w[6 + i] = half * kGLw[i];
    }
}

cplx tanh_saturated(const cplx& z) {
    if (z.real() > 20.0) return cplx(1.0, 0.0);
    if (z.real() < -20.0) return cplx(-1.0, 0.0);
    return std::tanh(z);
}

double tanh_saturated(double z) {
    if (z > 20.0) return 1.0;
    if (z < -20.0) return -1.0;
    return std::tanh(z);
}

// em1(w) = (e^w - 1)/w, continuous at 0
cplx em1(const cplx& w) {
    if (std::abs(w) < 1e-6) return 1.0 + w * (0.5 + w / 6.0);
    return (std::exp(w) - 1.0) / w;
}

}  // namespace

cplx f_sym(const cplx& lambda, double d) {
    const cplx denom = 1.0 + lambda * lambda;
    if (std::abs(denom) < 1e-6)
        throw pole_error("f_sym: lambda too close to the poles at +-i");
    return cplx(0.0, 1.0) * (1.0 - lambda * lambda) / denom * std::tan(0.5 * d);
}

cplx g_fn(const cplx& lambda, const ProblemParams& params) {
    require_nonzero_lambda(lambda);
    const cplx denom = 1.0 + lambda * lambda;
    if (std::abs(denom) < 1e-6)
        throw pole_error("g_fn: lambda too close to +-i; use g_times_one_plus_exp");
    const cplx z = 0.5 * omega(lambda) * params.L;
    if (std::abs(z.real()) < 20.0 && std::abs(std::cosh(z)) < 1e-8)
        throw pole_error("g_fn: lambda at a pole of tanh(omega L / 2)");
    return cplx(0.0, 1.0) * (1.0 - lambda * lambda) / denom * tanh_saturated(z) *
           std::tan(0.5 * params.d);
}

cplx g_times_one_plus_exp(const cplx& lambda, int sign, const ProblemParams& params) {
    require_nonzero_lambda(lambda);
    if (sign != 1 && sign != -1)
        throw domain_error("g_times_one_plus_exp: sign must be +-1");
    const cplx z = omega(lambda) * params.L;
    return cplx(0.0, 1.0) * std::tan(0.5 * params.d) * (1.0 - lambda * lambda) *
           (params.L / (2.0 * lambda)) * em1(double(sign) * z);
}

LinearizableSpectrum::LinearizableSpectrum(ProblemParams params, double R_cut, int nodes_per_panel)
    : params_(params), per_panel_(nodes_per_panel) {
    params_.validate();
    if (per_panel_ != 12)
        throw config_error("LinearizableSpectrum: only the 12-point panel rule is built in");
    R_cut_ = (R_cut > 0.0) ? R_cut : std::max(50.0, 50.0 / params_.L);
    tan_half_d_ = std::tan(0.5 * params_.d);
    c_inf_ = std::log1p(tan_half_d_ * tan_half_d_);
    const double sh = std::sin(0.5 * params_.d);
    beta_ = -4.0 * sh * sh;

    // graded edges: resolve the dip of c at lambda' = 1 (scale shrinks with L)
    // then grow geometrically to the window edge
    const double fine = 0.25 / std::max(1.0, 0.5 * params_.L);
    base_edges_.push_back(0.0);
    double e = fine;
    while (e < R_cut_) {
        base_edges_.push_back(e);
        e = std::max(e * 1.45, e + fine);
    }
    base_edges_.push_back(R_cut_);

    // sanity of the real-axis data: G = i g with real g, so 1 - G^2 >= 1
    for (std::size_t i = 1; i < base_edges_.size(); ++i) {
        const double t = 0.5 * (base_edges_[i - 1] + base_edges_[i]);
        if (!(log_one_minus_g2(t) >= 0.0))
            throw domain_error("LinearizableSpectrum: ln(1-G^2) < 0 on the real axis");
    }
}

double LinearizableSpectrum::g_imag_part(double t) const {
    // real-arithmetic G/i on the axis; omega(t) real there
    const double t2 = t * t;
    const double w = 0.5 * (t + 1.0 / t);
    return (1.0 - t2) / (1.0 + t2) * tanh_saturated(0.5 * w * params_.L) * tan_half_d_;
}

double LinearizableSpectrum::log_one_minus_g2(double t) const {
    if (t == 0.0) return c_inf_;  // continuous (flat) limit at the origin
    const double g = g_imag_part(t);
    return std::log1p(g * g);
}

namespace {

// Recursively accumulate a Gauss-Legendre panel integral over [a, b],
// splitting panels that sit close to x0 relative to the resolution "eta".
template <typename Acc>
void refined_panels(double a, double b, double x0, double eta, double floor_w, int depth,
                    Acc& acc) {
    const double w = b - a;
    const bool near = (x0 > a - 1.5 * w) && (x0 < b + 1.5 * w);
    if (near && w > std::max(4.0 * eta, floor_w) && depth < 48) {
        const double m = 0.5 * (a + b);
        refined_panels(a, m, x0, eta, floor_w, depth + 1, acc);
        refined_panels(m, b, x0, eta, floor_w, depth + 1, acc);
        return;
    }
    double t[kGL], wq[kGL];
    gl_nodes(a, b, t, wq);
    for (int i = 0; i < kGL; ++i) acc(t[i], wq[i]);
}

}  // namespace

cplx LinearizableSpectrum::window_quadrature(const cplx& lambda) const {
    const double x0 = lambda.real();
    const double eta = std::abs(lambda.imag());
    cplx sum(0.0, 0.0);
    auto acc = [&](double t, double w) {
        sum += w * (log_one_minus_g2(t) - c_inf_) / (cplx(t, 0.0) - lambda);
    };
    for (std::size_t i = 1; i < base_edges_.size(); ++i) {
        const double a = base_edges_[i - 1], b = base_edges_[i];
        // positive half and its mirror
        refined_panels(a, b, x0, eta, 1e-7, 0, acc);
        refined_panels(-b, -a, x0, eta, 1e-7, 0, acc);
    }
    return sum;
}

cplx LinearizableSpectrum::tail_term(const cplx& lambda) const {
    // beta * int_{|l'|>R} l'^{-2}/(l'-lambda) dl'
    //   = beta [ (1/lambda^2) ln((R+lambda)/(R-lambda)) - 2/(lambda R) ]
    const double R = R_cut_;
    if (std::abs(lambda) < 1e-3 * R) {
        // series: 2 lambda/(3 R^3) + 2 lambda^3/(5 R^5)
        return beta_ * (2.0 * lambda / (3.0 * R * R * R) +
                        2.0 * lambda * lambda * lambda / (5.0 * std::pow(R, 5)));
    }
    const cplx l2 = lambda * lambda;
    return beta_ * (std::log((R + lambda) / (R - lambda)) / l2 - 2.0 / (lambda * R));
}

double LinearizableSpectrum::tail_term_pv(double t) const {
    // real (principal-value) version of tail_term; |R -+ t| clamped away from 0
    const double R = R_cut_;
    if (std::abs(t) < 1e-3 * R)
        return beta_ * (2.0 * t / (3.0 * R * R * R));
    const double num = std::max(std::abs(R + t), 1e-12 * R);
    const double den = std::max(std::abs(R - t), 1e-12 * R);
    return beta_ * (std::log(num / den) / (t * t) - 2.0 / (t * R));
}

cplx LinearizableSpectrum::H(const cplx& lambda) const {
    if (lambda.imag() == 0.0)
        throw domain_error("cauchy_log_transform: boundary value on R; use h_boundary_pair");
    const cplx window = window_quadrature(lambda);
    // The constant c_inf lives on all of R, not just the window: its window
    // log ln((R-l)/(-R-l)) plus its own tail combine to the closed form
    // i pi sign(Im l) c_inf. Dropping the constant's tail would leave an
    // O(c_inf lambda / R) error in H.
    const cplx const_part =
        cplx(0.0, (lambda.imag() > 0.0) ? pi : -pi) * c_inf_;
    return (window + const_part + tail_term(lambda)) / cplx(0.0, 2.0 * pi);
}

cplx LinearizableSpectrum::h(const cplx& lambda) const { return std::exp(H(lambda)); }

double LinearizableSpectrum::pv_window_quadrature(double t) const {
    // int_{-R}^{R} (c(l') - c(t))/(l' - t) dl'; smooth integrand, panels split at t
    const double ct = log_one_minus_g2(t);
    double sum = 0.0;
    auto acc = [&](double u, double w) {
        const double du = u - t;
        // u never coincides with t: panels are split exactly at t
        sum += w * (log_one_minus_g2(u) - ct) / du;
    };
    const double floor_w = std::min(0.05, 0.02 * (std::abs(t) + 0.1));
    std::vector<double> edges;
    for (double e : base_edges_) edges.push_back(e);
    for (double e : base_edges_) edges.push_back(-e);
    edges.push_back(t);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i - 1] < -R_cut_ - 1e-12 || edges[i] > R_cut_ + 1e-12) continue;
        refined_panels(edges[i - 1], edges[i], t, 0.0, floor_w, 0, acc);
    }
    return sum;
}

cplx LinearizableSpectrum::log_h_plus(double t) const {
    if (t == 0.0 || std::abs(t) < lambda_min_abs)
        throw domain_error("h_boundary_pair: lambda = 0 is the essential singularity");
    const double ct = log_one_minus_g2(t);
    double pv = pv_window_quadrature(t);
    // window log of the local subtraction plus the constant's own tail: the
    // whole-line PV of c_inf/(t'-t) vanishes by symmetry, leaving the
    // coefficient ct - c_inf (which also decays like 1/t^2 near the window
    // edge, killing the artificial |t| = R_cut log)
    const double num = std::max(std::abs(R_cut_ - t), 1e-12 * R_cut_);
    const double den = std::max(std::abs(R_cut_ + t), 1e-12 * R_cut_);
    pv += (ct - c_inf_) * std::log(num / den);
    pv += tail_term_pv(t);
    // H_plus = PV/(2 pi i) + c/2; the PV part is real, so it lands in Im H
    return cplx(0.5 * ct, -pv / (2.0 * pi));
}

std::pair<cplx, cplx> LinearizableSpectrum::h_boundary(double t) const {
    const cplx lh = log_h_plus(t);
    const cplx h_plus = std::exp(lh);
    const double g = g_imag_part(t);
    const double one_minus_g2 = 1.0 + g * g;
    // partner enforcing h(l) h(-l) = 1 - G^2 exactly on the axis
    return {h_plus, one_minus_g2 / h_plus};
}

std::pair<cplx, cplx> a2b2_from_sides(const SpectralPair& s1, const SpectralPair& s3,
                                      const cplx& lambda, const ProblemParams& params) {
    s1.check_region(lambda);
    s1.check_region(-lambda);
    s3.check_region(lambda);
    s3.check_region(-lambda);
    const SpectralEval e1p = s1.eval(lambda), e1m = s1.eval(-lambda);
    const SpectralEval e3p = s3.eval(lambda), e3m = s3.eval(-lambda);
    const cplx emw = std::exp(-omega(lambda) * params.L);
    return {e1m.a * e3p.a - emw * e1p.b * e3m.b, e1m.a * e3p.b - emw * e1p.b * e3m.a};
}

double RelationAuditReport::max() const {
    double m = rel1;
    for (double v : {rel2, fact0, sol2_a, sol2_b, sol2a3_a, sol2a3_b, finid}) m = std::max(m, v);
    return m;
}

RelationAuditReport relation_audit(const SpectralPair& s1, const SpectralPair& s3,
                                   const LinearizableSpectrum& spec,
                                   const std::vector<double>& real_samples) {
    RelationAuditReport rep;
    const ProblemParams& params = spec.params();
    for (double t : real_samples) {
        const cplx l(t, 0.0);
        const SpectralEval e1 = s1.eval(l), e1m = s1.eval(-l);
        const SpectralEval e3 = s3.eval(l), e3m = s3.eval(-l);
        const cplx G = g_fn(l, params);
        const cplx F = f_sym(l, params.d);
        const cplx hp = spec.h_boundary(t).first;

        rep.rel1 = std::max(rep.rel1, std::abs(e1.a * e1m.b - e1m.a * e1.b - G));
        rep.rel2 = std::max(rep.rel2, std::abs(e3.a * e3m.b - e3m.a * e3.b + G));

        const cplx y_plus = e1.a * e1.a - e1.b * e1.b;
        const cplx y_minus = e1m.a * e1m.a - e1m.b * e1m.b;
        rep.fact0 = std::max(rep.fact0, std::abs(y_plus * y_minus - (1.0 - G * G)));

        rep.sol2_a = std::max(rep.sol2_a, std::abs(e1m.a - (e1.a + G * e1.b) / hp));
        rep.sol2_b = std::max(rep.sol2_b, std::abs(e1m.b - (e1.b + G * e1.a) / hp));
        rep.sol2a3_a = std::max(rep.sol2a3_a, std::abs(e3m.a - (e3.a - G * e3.b) / hp));
        rep.sol2a3_b = std::max(rep.sol2a3_b, std::abs(e3m.b - (e3.b - G * e3.a) / hp));

        const cplx epw = std::exp(omega(l) * params.L);
        const cplx emw = 1.0 / epw;
        rep.finid = std::max(
            rep.finid, std::abs(epw * y_plus + emw * y_minus -
                                (epw + emw) * (1.0 - F * F) - 2.0 * F * F));
    }
    return rep;
}

}  // namespace esg
