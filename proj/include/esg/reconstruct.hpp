#pragma once

// Recover q(x,y) from RH solutions. Primary route: the lambda -> 0 limit,
// where Psi approaches [[cos(q/2), i sin(q/2)], [i sin(q/2), cos(q/2)]]; a
// probe point just off the contour on the first-quadrant diagonal gives both
// half-angle components and the branch via atan2. Richardson extrapolation
// over a few probe radii removes the O(lambda) error. Cross-check route: the
// 1/lambda moment, q_x - i q_y = 2 (psi*)_21 and
// cos q = 1 + 4i (d/dx psi*)_11 - 2 ((psi*)_21)^2 with central differences.

#include <vector>

#include "esg/rh.hpp"

namespace esg {

// q_x - i q_y at the solution's point
cplx q_derivative_combo(const RHSolution& sol);

struct ProbeConfig {
    std::vector<double> radii = {0.12, 0.07, 0.04};  // must stay above r_min
    double arg = 0.25 * pi;
};

// q via the lambda->0 limit; *imag_leak (optional) receives the size of the
// discarded imaginary parts after extrapolation
double q_from_lambda_zero(const ContourDiscretization& disc, const RHSolution& sol,
                          const ProbeConfig& probe = {}, double* imag_leak = nullptr);

// q per point of a row of solutions along x at fixed y (uniform spacing,
// >= 3 entries). sign_source supplies the sign of q (cos alone is blind);
// cos_tol flags |cos q| > 1 + cos_tol as an under-resolved solve.
std::vector<double> q_from_psistar(const std::vector<RHSolution>& row,
                                   const std::vector<double>& sign_source, double dx,
                                   double cos_tol = 1e-6, double* imag_leak = nullptr);

struct GridSpec {
    double x_min = 0.2, x_max = 2.0;
    int nx = 10;
    double y_margin = 0.1;
    int ny = 9;

    void validate(double L) const;
    std::vector<double> xs() const;
    std::vector<double> ys(double L) const;
};

struct SolutionField {
    GridSpec grid;
    ProblemParams params;
    std::vector<double> xs, ys;
    std::vector<double> q;      // row-major: [iy * nx + ix]
    std::vector<double> q_alt;  // psi* route (equals q when the sweep skipped it)
    std::vector<int> iterations;
    std::vector<double> residuals;
    double imag_leak = 0.0;
    bool has_alt = true;
    bool partial = false;
    std::vector<std::pair<int, int>> failed_points;  // (ix, iy)

    double at(int ix, int iy) const { return q[std::size_t(iy) * xs.size() + ix]; }
    double alt_at(int ix, int iy) const { return q_alt[std::size_t(iy) * xs.size() + ix]; }
};

struct SweepConfig {
    SolverOptions solver;
    ProbeConfig probe;
    double cross_check_dx = 0.02;  // spacing of the x-triplet for the psi* route
    bool cross_check = true;       // false: skip the psi* route (1 solve per point)
    int threads = 0;               // 0: hardware concurrency
};

SolutionField field_sweep(const GridSpec& grid, const ContourDiscretization& disc,
                          const SweepConfig& cfg = {});

}  // namespace esg
