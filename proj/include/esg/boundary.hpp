#pragma once

// Sampled boundary traces for one side of the semistrip, with the
// piecewise-cubic interpolation rule used by the spectral-function solver.

#include <cstddef>
#include <vector>

#include "esg/core.hpp"

namespace esg {

enum class Side : int {
    One = 1,    // y = L, 0 < x < inf; Neumann trace is q_y(x, L)
    Two = 2,    // x = 0, 0 < y < L; Neumann trace is q_x(0, y)
    Three = 3,  // y = 0, 0 < x < inf; Neumann trace is q_y(x, 0)
};

// Natural cubic spline through (t_i, f_i); evaluations outside [t_0, t_n]
// continue the end cubics.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(const std::vector<double>& t, const std::vector<double>& f);

    double value(double x) const;
    double derivative(double x) const;
    bool empty() const { return t_.empty(); }

private:
    std::size_t segment(double x) const;
    std::vector<double> t_, a_, b_, c_, d_;  // segment i: a+b*dx+c*dx^2+d*dx^3
};

struct BoundarySideData {
    Side side = Side::Three;
    std::vector<double> nodes;      // strictly increasing sample abscissae
    std::vector<double> dirichlet;  // q on the side
    std::vector<double> neumann;    // q_y (sides 1/3) or q_x (side 2)
    double tail_tolerance = 1e-8;   // decay proxy checked at the last node (sides 1/3)

    CubicSpline dirichlet_spline;
    CubicSpline neumann_spline;

    BoundarySideData() = default;
    BoundarySideData(Side s, std::vector<double> nodes_in, std::vector<double> dir,
                     std::vector<double> neu, double tail_tol = 1e-8);

    // Largest |trace| at the last node; the truncated-tail proxy for sides 1/3.
    double tail_magnitude() const;

    double q_at(double t) const { return dirichlet_spline.value(t); }
    double neumann_at(double t) const { return neumann_spline.value(t); }
    // tangential derivative of the Dirichlet trace along the side
    double dirichlet_deriv_at(double t) const { return dirichlet_spline.derivative(t); }

    // q_x - i q_y at abscissa t, assembled from the side's trace roles
    cplx deriv_combo_at(double t) const;

    double domain_end() const { return nodes.empty() ? 0.0 : nodes.back(); }

    static BoundarySideData zero(Side s, double extent, std::size_t n = 16);
};

}  // namespace esg
