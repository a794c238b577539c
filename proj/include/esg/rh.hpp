#pragma once

// Matrix Riemann-Hilbert solver on the cross contour Gamma = R u iR.
//
// Jump data comes from the closed-form linearizable coefficients (G, h). The
// unknown mu = Psi_+ lives at quadrature nodes on the four rays; the singular
// integral equation mu = I + C+[mu (I - J)] is collocated at the nodes with a
// principal-value rule (difference quotient + closed-form ray log + Plemelj
// half term). Orientation: Psi_+ is the limit from quadrants 1 and 3, so the
// real rays point outward from 0 and the imaginary rays point inward.
//
// Ray integrals are truncated at [r_min, r_max]; for output functionals
// (psi_star and off-contour Cauchy evaluations) the missing ends are restored
// by per-term analytic tails f(r_end) * exp(s (r - r_end)) with the exact
// exponent rate s, which matters for points close to the strip walls where
// the jump decay e^{-omega y} is slow.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "esg/core.hpp"
#include "esg/kernels.hpp"
#include "esg/linearizable.hpp"

namespace esg {

enum class Ray : int { ArgZero = 0, ArgHalfPi = 1, ArgPi = 2, ArgThreeHalfPi = 3 };

struct ContourConfig {
    double r_min = 1e-2;
    double r_max = 1e2;
    int n_per_ray = 200;
    std::string grading = "hybrid";  // "hybrid" (3-zone) or "log"
    double r_lin = 4.0;              // hybrid zone boundary

    void validate() const;
};

struct ContourNode {
    Ray ray = Ray::ArgZero;
    double r = 0.0;
    cplx lambda;
    cplx wtilde;     // radial weight * direction * orientation / (2 pi i)
    double w_r = 0.0;
    double spacing = 0.0;  // local node spacing (resolution guard)
    cplx om;         // omega(lambda)
    cplx om_big;     // Omega(lambda)

    // Theorem 5.1 coefficient table (only the ray-relevant fields are used)
    cplx g_over_h;       // G/h(lambda)
    cplx g_over_hminus;  // G/h(-lambda)
    cplx exp_mwl;        // e^{-omega L} on ray 0 / e^{+omega L} on ray pi
    cplx combo_pi2;      // -(G/h)(1 + e^{omega L})
    cplx combo_3pi2;     // (G/h(-lambda))(1 + e^{-omega L})
    cplx split_coef;     // i (1-l^2)/(1+l^2) tan(d/2) / h(.), for the tail split
    cplx diag_term;      // constant diagonal entry of I - J on the real rays
};

class ContourDiscretization {
public:
    ContourDiscretization(const LinearizableSpectrum& spectrum, const ContourConfig& cfg);

    std::size_t size() const { return nodes_.size(); }
    const ContourNode& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<ContourNode>& nodes() const { return nodes_; }
    const ContourConfig& config() const { return cfg_; }
    const LinearizableSpectrum& spectrum() const { return spectrum_; }
    const ProblemParams& params() const { return spectrum_.params(); }

    // W = I - J(x,y,.) at every node, as four split-complex streams
    void jump_deviation(const PhysicalPoint& p, kernels::ValueStreams& w) const;
    Matrix2 jump_deviation_at(std::size_t idx, const PhysicalPoint& p) const;

    // collocated C+ apply: out_j = sum_k A_jk phi_k (Plemelj half term included)
    void cplus_apply(const kernels::ValueStreams& phi, kernels::ValueStreams& out) const;

    // row j of the collocated C+ matrix A_jk (split layout, length size())
    const double* collocation_row_re(std::size_t j) const { return &a_re_[j * size()]; }
    const double* collocation_row_im(std::size_t j) const { return &a_im_[j * size()]; }

    // plain quadrature of (1/2 pi i) int phi/(l - target) dl; target off the
    // node set. Targets on Gamma between nodes get the +side Plemelj value.
    Matrix2 cauchy_apply(const kernels::ValueStreams& phi, const cplx& target) const;

    // analytic end corrections for the functionals; kernel_target applies the
    // extra 1/(lambda - target) factor when with_kernel is true
    Matrix2 functional_tails(const PhysicalPoint& p, const kernels::ValueStreams& mu,
                             bool with_kernel, const cplx& kernel_target) const;

    double max_jump_deviation(const PhysicalPoint& p) const;

private:
    LinearizableSpectrum spectrum_;
    ContourConfig cfg_;
    std::vector<ContourNode> nodes_;
    std::array<std::size_t, 4> ray_begin_{};
    std::array<std::size_t, 4> ray_end_{};
    std::vector<std::pair<std::size_t, std::size_t>> panels_;  // [begin, end) node index
    std::vector<double> a_re_, a_im_;  // collocation matrix, row-major split

    void build_nodes();
    void fill_coefficients();
    void assemble_collocation();
    void exponent_entries(const ContourNode& n, const PhysicalPoint& p, cplx& w12,
                          cplx& w21) const;
    friend struct RhTestAccess;
};

// Spec-facing wrappers
ContourDiscretization discretize_contour(const LinearizableSpectrum& spectrum, double r_min,
                                         double r_max, int n_per_ray,
                                         const std::string& grading = "hybrid");

// J-tilde at a node for an interior point (domain error at y in {0, L})
Matrix2 assemble_jump(const ContourDiscretization& disc, std::size_t node_idx,
                      const PhysicalPoint& p);

enum class Backend { Neumann, Direct };

Backend backend_from_string(const std::string& s);
std::string to_string(Backend b);

struct SolverOptions {
    Backend backend = Backend::Neumann;
    double tol = 1e-10;
    int max_iter = 60;
};

struct RHSolution {
    PhysicalPoint point;
    kernels::ValueStreams mu;  // Psi_+ boundary values at the nodes
    Matrix2 psi_star;
    int iterations = 0;
    double residual = 0.0;
    std::string backend;
};

RHSolution solve_rh(const PhysicalPoint& p, const ContourDiscretization& disc,
                    const SolverOptions& opts = {});

// Psi(target) = I + C[mu W](target) + end tails; target off the contour
Matrix2 psi_at(const RHSolution& sol, const ContourDiscretization& disc, const cplx& target);

}  // namespace esg
