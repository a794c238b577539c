#pragma once

// Explicit spectral objects for the constant-Dirichlet boundary conditions:
// F(lambda), G(lambda), the scalar Riemann-Hilbert solution h = e^H with
//   H(lambda) = (1/2{pi}i) int_R ln(1 - G^2) d{lambda'}/({lambda'} - lambda),
// and validators for the algebraic relations tying the three sides together.
//
// ln(1 - G^2) tends to the nonzero constant c_inf = ln sec^2(d/2) both at
// lambda' -> +-inf and at lambda' -> 0, so the integral is computed with
// constant subtraction over a symmetric window [-R, R]: quadrature of
// (c - c_inf)/(lambda' - lambda), the closed-form contribution of c_inf over
// the window, and an analytic tail using c - c_inf ~ beta/lambda'^2 with
// beta = -4 sin^2(d/2). (The rational prefactor of G approaches -1 only
// algebraically, so the subtracted integrand decays like 1/lambda'^2, not
// exponentially; the tail term matters.)

#include <utility>
#include <vector>

#include "esg/core.hpp"
#include "esg/volterra.hpp"

namespace esg {

// F(lambda) = i (1-lambda^2)/(1+lambda^2) tan(d/2)
cplx f_sym(const cplx& lambda, double d);

// G(lambda) = i (1-lambda^2)/(1+lambda^2) tanh(omega L / 2) tan(d/2),
// the tanh closed form of the exponential ratio (overflow-free).
cplx g_fn(const cplx& lambda, const ProblemParams& params);

// G(lambda) (1 + e^{sign omega L}) through the cancellation-free form
// i tan(d/2) (1-lambda^2) (L/(2 lambda)) em1(sign omega L), finite at
// lambda = +-i with value L tan(d/2) (sign +1, lambda = i).
cplx g_times_one_plus_exp(const cplx& lambda, int sign, const ProblemParams& params);

class LinearizableSpectrum {
public:
    // R_cut <= 0 selects the default window max(50, 50/L).
    explicit LinearizableSpectrum(ProblemParams params, double R_cut = 0.0,
                                  int nodes_per_panel = 12);

    const ProblemParams& params() const { return params_; }
    double window() const { return R_cut_; }

    // ln(1 - G(t)^2) for real t; real and >= 0 there.
    double log_one_minus_g2(double t) const;
    // G = i g on the real axis; returns the real g(t).
    double g_imag_part(double t) const;

    cplx H(const cplx& lambda) const;            // Im lambda != 0
    cplx h(const cplx& lambda) const;            // e^{H}
    std::pair<cplx, cplx> h_boundary(double t) const;  // (h_plus, h(-t) partner)

    // Plemelj boundary exponent on R: PV part + (1/2) c(t)
    cplx log_h_plus(double t) const;

private:
    friend struct SpectrumTestAccess;
    ProblemParams params_;
    double R_cut_;
    int per_panel_;
    double tan_half_d_;
    double c_inf_;
    double beta_;  // -4 sin^2(d/2)

    std::vector<double> base_edges_;  // positive-side panel edges, 0 .. R_cut

    cplx window_quadrature(const cplx& lambda) const;  // int (c-c_inf)/(l'-lambda)
    double pv_window_quadrature(double t) const;       // smooth part of the PV form
    cplx tail_term(const cplx& lambda) const;
    double tail_term_pv(double t) const;
};

// Spec-facing wrappers.
inline cplx cauchy_log_transform(const cplx& lambda, const LinearizableSpectrum& spec) {
    return spec.H(lambda);
}
inline cplx h_fn(const cplx& lambda, const LinearizableSpectrum& spec) { return spec.h(lambda); }
inline std::pair<cplx, cplx> h_boundary_pair(double lambda, const LinearizableSpectrum& spec) {
    return spec.h_boundary(lambda);
}

// a2, b2 reconstructed from the sides' pairs through the global relation:
//   a2 = a1(-l) a3(l) - e^{-omega L} b1(l) b3(-l)
//   b2 = a1(-l) b3(l) - e^{-omega L} b1(l) a3(-l)
std::pair<cplx, cplx> a2b2_from_sides(const SpectralPair& s1, const SpectralPair& s3,
                                      const cplx& lambda, const ProblemParams& params);

struct RelationAuditReport {
    double rel1 = 0.0;      // a1 b1(-l) - a1(-l) b1 - G
    double rel2 = 0.0;      // a3 b3(-l) - a3(-l) b3 + G
    double fact0 = 0.0;     // (a1^2-b1^2)(a1(-l)^2-b1(-l)^2) - (1-G^2)
    double sol2_a = 0.0;    // a1(-l) - (a1 + G b1)/h
    double sol2_b = 0.0;    // b1(-l) - (b1 + G a1)/h
    double sol2a3_a = 0.0;  // a3(-l) - (a3 - G b3)/h
    double sol2a3_b = 0.0;  // b3(-l) - (b3 - G a3)/h
    double finid = 0.0;     // two-exponential identity with F

    double max() const;
};

RelationAuditReport relation_audit(const SpectralPair& s1, const SpectralPair& s3,
                                   const LinearizableSpectrum& spec,
                                   const std::vector<double>& real_samples);

}  // namespace esg
