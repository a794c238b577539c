#pragma once

// Spectral functions {a_j, b_j} from one side's boundary traces.
//
// The defining Volterra integral equation is solved in its equivalent ODE
// form: the first column (A, B) of the side eigenfunction satisfies
//     A' = M11 A + M12 B
//     B' = rho B + M21 A + M22 B
// with (A, B) -> (1, 0) at the far end of the side, where rho = Omega(lambda)
// for the horizontal sides and omega(lambda) for the vertical side, and M is
// the side generator (Q for sides 1/3, i*Q(.,-lambda) for side 2). The system
// is integrated backward from the decayed end with a fourth-order two-point
// Gauss Magnus step whose 2x2 exponential is evaluated in closed form, so the
// stiff factor exp(rho*h) is applied analytically and large |rho| does not
// force small steps.

#include <utility>
#include <vector>

#include "esg/boundary.hpp"
#include "esg/core.hpp"

namespace esg {

// Q(x,y,lambda) assembled from cos q, sin q and the derivative combination
// q_x - i q_y.
Matrix2 q_matrix(double q, const cplx& deriv_combo, const cplx& lambda);

struct SpectralEval {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    double tail = 0.0;  // |trace| left at the truncation point (sides 1/3)
};

// One side's (a, b) pair, evaluable at arbitrary lambda in its validity
// region (Im lambda >= 0 for sides 1/3, all lambda != 0 for side 2).
// Immutable after construction; eval() is pure and thread-safe.
class SpectralPair {
public:
    SpectralPair(BoundarySideData data, ProblemParams params, int n_steps = 4000);

    SpectralEval eval(const cplx& lambda) const;
    cplx a(const cplx& lambda) const { return eval(lambda).a; }
    cplx b(const cplx& lambda) const { return eval(lambda).b; }

    Side side() const { return data_.side; }
    double tail_magnitude() const { return data_.tail_magnitude(); }
    bool tail_decayed() const { return tail_magnitude() <= data_.tail_tolerance; }
    const BoundarySideData& data() const { return data_; }
    int steps() const { return n_steps_; }

    void check_region(const cplx& lambda) const;

private:
    BoundarySideData data_;
    ProblemParams params_;
    int n_steps_;
    double t_end_;
    // trace values cached at the Gauss points of every step
    std::vector<double> gauss_t_, gauss_q_;
    std::vector<cplx> gauss_combo_;
};

// Convenience one-shot form of SpectralPair::eval.
SpectralEval spectral_functions(const BoundarySideData& data, const cplx& lambda,
                                const ProblemParams& params, int n_steps = 4000);

// max over samples of |a(l)a(-l) - b(l)b(-l) - 1|
double unit_determinant_residual(const SpectralPair& pair, const std::vector<cplx>& samples);

// Global-relation residuals over samples in the closed upper half plane:
//   r1 = max |a1(l) - a2(-l) a3(l) + b2(-l) b3(l)|
//   r2 = max |b1(l) e^{-omega(l) L} - a2(l) b3(l) + a3(l) b2(l)|
std::pair<double, double> global_relation_residual(const SpectralPair& s1,
                                                   const SpectralPair& s2,
                                                   const SpectralPair& s3,
                                                   const ProblemParams& params,
                                                   const std::vector<cplx>& samples);

}  // namespace esg
