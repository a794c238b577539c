#include "esg/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace esg {

CubicSpline::CubicSpline(const std::vector<double>& t, const std::vector<double>& f) {
    const std::size_t n = t.size();
    if (n != f.size() || n < 2) throw domain_error("CubicSpline: need >= 2 matching samples");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(t[i + 1] > t[i])) throw domain_error("CubicSpline: abscissae must increase");

    t_ = t;
    a_ = f;
    b_.assign(n, 0.0);
    c_.assign(n, 0.0);
    d_.assign(n, 0.0);
    if (n == 2) {  // straight segment
        b_[0] = (f[1] - f[0]) / (t[1] - t[0]);
        return;
    }

    // natural spline: solve the tridiagonal system for second-derivative params
    std::vector<double> h(n - 1), alpha(n, 0.0), l(n), mu(n), z(n);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t[i + 1] - t[i];
    for (std::size_t i = 1; i + 1 < n; ++i)
        alpha[i] = 3.0 * ((a_[i + 1] - a_[i]) / h[i] - (a_[i] - a_[i - 1]) / h[i - 1]);
    l[0] = 1.0; mu[0] = 0.0; z[0] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        l[i] = 2.0 * (t[i + 1] - t[i - 1]) - h[i - 1] * mu[i - 1];
        mu[i] = h[i] / l[i];
        z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
    }
    l[n - 1] = 1.0; z[n - 1] = 0.0; c_[n - 1] = 0.0;
    for (std::size_t j = n - 1; j-- > 0;) {
        c_[j] = z[j] - mu[j] * c_[j + 1];
        b_[j] = (a_[j + 1] - a_[j]) / h[j] - h[j] * (c_[j + 1] + 2.0 * c_[j]) / 3.0;
        d_[j] = (c_[j + 1] - c_[j]) / (3.0 * h[j]);
    }
}

std::size_t CubicSpline::segment(double x) const {
    if (x <= t_.front()) return 0;
    if (x >= t_[t_.size() - 2]) return t_.size() - 2;
    const auto it = std::upper_bound(t_.begin(), t_.end(), x);
    return static_cast<std::size_t>(it - t_.begin()) - 1;
}

double CubicSpline::value(double x) const {
    const std::size_t i = segment(x);
    const double dx = x - t_[i];
    return a_[i] + dx * (b_[i] + dx * (c_[i] + dx * d_[i]));
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double dx = x - t_[i];
    return b_[i] + dx * (2.0 * c_[i] + 3.0 * dx * d_[i]);
}

BoundarySideData::BoundarySideData(Side s, std::vector<double> nodes_in, std::vector<double> dir,
                                   std::vector<double> neu, double tail_tol)
    : side(s),
      nodes(std::move(nodes_in)),
      dirichlet(std::move(dir)),
      neumann(std::move(neu)),
      tail_tolerance(tail_tol) {
    if (nodes.size() < 2 || dirichlet.size() != nodes.size() || neumann.size() != nodes.size())
        throw domain_error("BoundarySideData: node/trace arrays must match, length >= 2");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i + 1] > nodes[i]))
            throw domain_error("BoundarySideData: nodes must be strictly increasing");
    dirichlet_spline = CubicSpline(nodes, dirichlet);
    neumann_spline = CubicSpline(nodes, neumann);
}

double BoundarySideData::tail_magnitude() const {
    return std::max(std::abs(dirichlet.back()), std::abs(neumann.back()));
}

cplx BoundarySideData::deriv_combo_at(double t) const {
    if (side == Side::Two) {
        // q_x is the sampled Neumann trace, q_y the tangential derivative
        return cplx(neumann_at(t), -dirichlet_deriv_at(t));
    }
    // sides 1/3: q_x is tangential, q_y the sampled Neumann trace
    return cplx(dirichlet_deriv_at(t), -neumann_at(t));
}

BoundarySideData BoundarySideData::zero(Side s, double extent, std::size_t n) {
    std::vector<double> t(n), z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) t[i] = extent * double(i) / double(n - 1);
    return BoundarySideData(s, std::move(t), z, z);
}

}  // namespace esg
