#include "esg/volterra.hpp"

#include <algorithm>
#include <cmath>

namespace esg {

Matrix2 q_matrix(double q, const cplx& deriv_combo, const cplx& lambda) {
    require_nonzero_lambda(lambda);
    const cplx i4(0.0, 0.25);
    const cplx diag = (1.0 - std::cos(q)) / lambda;
    const cplx sin_term = cplx(0.0, 1.0) * std::sin(q) / lambda;
    return {i4 * diag, i4 * (deriv_combo + sin_term),
            i4 * (deriv_combo - sin_term), -i4 * diag};
}

namespace {

// exp(N) for 2x2 complex N, via N = p I + D with tr D = 0, D^2 = mu^2 I:
// exp(N) = e^p (cosh(mu) I + sinhc(mu) D). Exponents are combined before
// exponentiation so decaying modes never produce inf * 0.
Matrix2 expm2(const Matrix2& n) {
    const cplx p = 0.5 * (n.e11 + n.e22);
    const cplx d11 = n.e11 - p;  // = -(n.e22 - p)
    const cplx mu2 = d11 * d11 + n.e12 * n.e21;
    const cplx mu = std::sqrt(mu2);

    cplx ep_cosh, ep_sinhc;
    if (std::abs(mu) < 1e-4) {
        const cplx ep = std::exp(p);
        ep_cosh = ep * (1.0 + mu2 * (0.5 + mu2 / 24.0));
        ep_sinhc = ep * (1.0 + mu2 * (1.0 / 6.0 + mu2 / 120.0));
    } else {
        const cplx e_plus = std::exp(p + mu);
        const cplx e_minus = std::exp(p - mu);
        ep_cosh = 0.5 * (e_plus + e_minus);
        ep_sinhc = 0.5 * (e_plus - e_minus) / mu;
    }
    return {ep_cosh + ep_sinhc * d11, ep_sinhc * n.e12,
            ep_sinhc * n.e21, ep_cosh - ep_sinhc * d11};
}

constexpr double gauss_c1 = 0.5 - 0.28867513459481288225;  // 1/2 -+ sqrt(3)/6
constexpr double gauss_c2 = 0.5 + 0.28867513459481288225;

}  // namespace

SpectralPair::SpectralPair(BoundarySideData data, ProblemParams params, int n_steps)
    : data_(std::move(data)), params_(params), n_steps_(n_steps) {
    params_.validate();
    if (n_steps_ < 8) throw config_error("SpectralPair: n_steps must be >= 8");
    t_end_ = (data_.side == Side::Two) ? params_.L : data_.domain_end();
    if (data_.side == Side::Two && std::abs(data_.domain_end() - params_.L) > 1e-9 * params_.L)
        throw domain_error("SpectralPair: side-2 nodes must span [0, L]");

    // cache trace values at the two Gauss points of every backward step
    gauss_t_.resize(2 * n_steps_);
    gauss_q_.resize(2 * n_steps_);
    gauss_combo_.resize(2 * n_steps_);
    const double h = t_end_ / n_steps_;
    for (int k = 0; k < n_steps_; ++k) {
        // step k runs from t_end - k h down to t_end - (k+1) h
        const double t_hi = t_end_ - k * h;
        const double t1 = t_hi - gauss_c1 * h;
        const double t2 = t_hi - gauss_c2 * h;
        gauss_t_[2 * k] = t1;
        gauss_t_[2 * k + 1] = t2;
        gauss_q_[2 * k] = data_.q_at(t1);
        gauss_q_[2 * k + 1] = data_.q_at(t2);
        gauss_combo_[2 * k] = data_.deriv_combo_at(t1);
        gauss_combo_[2 * k + 1] = data_.deriv_combo_at(t2);
    }
}

void SpectralPair::check_region(const cplx& lambda) const {
    require_nonzero_lambda(lambda);
    if (data_.side != Side::Two && lambda.imag() < -1e-12)
        throw region_error("spectral functions for sides 1/3 require Im(lambda) >= 0");
}

SpectralEval SpectralPair::eval(const cplx& lambda) const {
    check_region(lambda);

    const bool vertical = (data_.side == Side::Two);
    const cplx rho = vertical ? omega(lambda) : omega_big(lambda);
    const cplx gen_lambda = vertical ? -lambda : lambda;
    const cplx gen_scale = vertical ? cplx(0.0, 1.0) : cplx(1.0, 0.0);

    const double h = t_end_ / n_steps_;
    cplx A(1.0, 0.0), B(0.0, 0.0);

    for (int k = 0; k < n_steps_; ++k) {
        // coefficient matrix K(t) = M(t) + diag(0, rho) at the Gauss points
        Matrix2 K[2];
        for (int g = 0; g < 2; ++g) {
            Matrix2 m = q_matrix(gauss_q_[2 * k + g], gauss_combo_[2 * k + g], gen_lambda);
            m = gen_scale * m;
            m.e22 += rho;
            K[g] = m;
        }
        // backward step: z(t-h) = exp(Omega) z(t) with the 4th-order
        // two-point Gauss Magnus exponent for the reversed flow
        const Matrix2 sum = K[0] + K[1];
        const Matrix2 comm = K[1] * K[0] - K[0] * K[1];  // [K(t2), K(t1)]
        const double s3 = 1.7320508075688772;
        // two-point Gauss Magnus for the reversed flow y' = -K(t_hi - s) y:
        // Omega = -(h/2)(K1 + K2) + (sqrt(3) h^2/12) [K2, K1]
        const Matrix2 mag = (-0.5 * h) * sum + (s3 * h * h / 12.0) * comm;
        const Matrix2 P = expm2(mag);
        const cplx An = P.e11 * A + P.e12 * B;
        const cplx Bn = P.e21 * A + P.e22 * B;
        A = An;
        B = Bn;
    }
    return {A, B, (data_.side == Side::Two) ? 0.0 : tail_magnitude()};
}

SpectralEval spectral_functions(const BoundarySideData& data, const cplx& lambda,
                                const ProblemParams& params, int n_steps) {
    return SpectralPair(data, params, n_steps).eval(lambda);
}

double unit_determinant_residual(const SpectralPair& pair, const std::vector<cplx>& samples) {
    double worst = 0.0;
    for (const cplx& l : samples) {
        pair.check_region(l);
        pair.check_region(-l);
        const SpectralEval plus = pair.eval(l);
        const SpectralEval minus = pair.eval(-l);
        worst = std::max(worst, std::abs(plus.a * minus.a - plus.b * minus.b - 1.0));
    }
    return worst;
}

std::pair<double, double> global_relation_residual(const SpectralPair& s1,
                                                   const SpectralPair& s2,
                                                   const SpectralPair& s3,
                                                   const ProblemParams& params,
                                                   const std::vector<cplx>& samples) {
    double r1 = 0.0, r2 = 0.0;
    for (const cplx& l : samples) {
        s1.check_region(l);
        s3.check_region(l);
        const SpectralEval e1 = s1.eval(l);
        const SpectralEval e3 = s3.eval(l);
        const SpectralEval e2p = s2.eval(l);
        const SpectralEval e2m = s2.eval(-l);
        r1 = std::max(r1, std::abs(e1.a - e2m.a * e3.a + e2m.b * e3.b));
        r2 = std::max(r2, std::abs(e1.b * std::exp(-omega(l) * params.L) - e2p.a * e3.b +
                                   e3.a * e2p.b));
    }
    return {r1, r2};
}

}  // namespace esg
