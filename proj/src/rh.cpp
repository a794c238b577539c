#include "esg/rh.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace esg {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1], positive half
constexpr int kGL = 8;
constexpr double kGLx[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                            0.9602898564975363};
constexpr double kGLw[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                            0.1012285362903763};

void gl_panel(double a, double b, double* t, double* w) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 4; ++i) {
        t[3 - i] = mid - half * kGLx[i];
        w[3 - i] = half * kGLw[i];
        t[4 + i] = mid + half * kGLx[i];
        w[4 + i] = half * kGLw[i];
    }
}

cplx ray_direction(Ray ray) {
    switch (ray) {
        case Ray::ArgZero: return {1.0, 0.0};
        case Ray::ArgHalfPi: return {0.0, 1.0};
        case Ray::ArgPi: return {-1.0, 0.0};
        case Ray::ArgThreeHalfPi: return {0.0, -1.0};
    }
    return {1.0, 0.0};
}

// +1 where the ray is traversed outward, -1 inward; chosen so the + side of
// every ray is quadrant 1 or 3
double ray_orientation(Ray ray) {
    return (ray == Ray::ArgZero || ray == Ray::ArgPi) ? 1.0 : -1.0;
}

struct TailTerm {
    int entry;   // 0:e11 1:e12 2:e21 3:e22
    int coef;    // 0:g_over_h 1:-g_over_hminus 2:diag_term 3:+split 4:-split
    int e_om;    // multiplies Omega * x in the exponent
    int e_y;     // multiplies omega * y
    int e_l;     // multiplies omega * L
};

const TailTerm* ray_tail_terms(Ray ray, int& count) {
    static const TailTerm zero[] = {{0, 2, 0, 0, -1}, {1, 0, -1, -1, 0}, {2, 1, 1, 1, -1}};
    static const TailTerm pi[] = {{1, 0, -1, -1, 1}, {2, 1, 1, 1, 0}, {3, 2, 0, 0, 1}};
    static const TailTerm half_pi[] = {{1, 3, -1, -1, 1}, {1, 4, -1, -1, 0}};
    static const TailTerm three_half[] = {{2, 4, 1, 1, 0}, {2, 3, 1, 1, -1}};
    switch (ray) {
        case Ray::ArgZero: count = 3; return zero;
        case Ray::ArgPi: count = 3; return pi;
        case Ray::ArgHalfPi: count = 2; return half_pi;
        case Ray::ArgThreeHalfPi: count = 2; return three_half;
    }
    count = 0;
    return nullptr;
}

}  // namespace

void ContourConfig::validate() const {
    if (!(r_min > 0.0 && r_min < 1.0 && r_max > 1.0))
        throw config_error("contour: require 0 < r_min < 1 < r_max");
    if (n_per_ray < 8) throw config_error("contour: n_per_ray must be >= 8");
    if (grading != "hybrid" && grading != "log")
        throw config_error("contour: grading must be 'hybrid' or 'log'");
    if (!(r_lin > 1.0)) throw config_error("contour: r_lin must exceed 1");
}

ContourDiscretization::ContourDiscretization(const LinearizableSpectrum& spectrum,
                                             const ContourConfig& cfg)
    : spectrum_(spectrum), cfg_(cfg) {
    cfg_.validate();
    build_nodes();
    fill_coefficients();
    assemble_collocation();
}

void ContourDiscretization::build_nodes() {
    const double r0 = cfg_.r_min, r1 = cfg_.r_max;
    const int panels = std::max(1, cfg_.n_per_ray / kGL);

    // radial panel edges shared by all four rays; the three-zone grading
    // needs enough panels to be meaningful, otherwise fall back to log
    std::vector<double> edges;
    const bool hybrid = cfg_.grading == "hybrid" && panels >= 5 && r1 > cfg_.r_lin &&
                        r0 < 1.0 / cfg_.r_lin;
    if (hybrid) {
        int p_out = std::max(1, (int)std::lround(panels * 0.4));
        int p_mid = panels - 2 * p_out;
        if (p_mid < 1) { p_out = (panels - 1) / 2; p_mid = panels - 2 * p_out; }
        const double a_mid = 1.0 / cfg_.r_lin, b_mid = cfg_.r_lin;
        // inner zone: uniform in 1/r, mirroring the outer zone
        std::vector<double> inv;
        for (int k = 0; k <= p_out; ++k)
            inv.push_back(1.0 / r0 + (1.0 / a_mid - 1.0 / r0) * double(k) / p_out);
        for (int k = 0; k <= p_out; ++k) edges.push_back(1.0 / inv[k]);
        for (int k = 1; k <= p_mid; ++k)
            edges.push_back(a_mid * std::pow(b_mid / a_mid, double(k) / p_mid));
        for (int k = 1; k <= p_out; ++k)
            edges.push_back(b_mid + (r1 - b_mid) * double(k) / p_out);
    } else {
        for (int k = 0; k <= panels; ++k)
            edges.push_back(r0 * std::pow(r1 / r0, double(k) / panels));
    }

    nodes_.clear();
    panels_.clear();
    const Ray rays[4] = {Ray::ArgZero, Ray::ArgHalfPi, Ray::ArgPi, Ray::ArgThreeHalfPi};
    for (int ri = 0; ri < 4; ++ri) {
        const Ray ray = rays[ri];
        const cplx u = ray_direction(ray);
        const double sigma = ray_orientation(ray);
        const cplx pref = u * sigma / cplx(0.0, 2.0 * pi);
        ray_begin_[ri] = nodes_.size();
        for (std::size_t e = 1; e < edges.size(); ++e) {
            double t[kGL], w[kGL];
            gl_panel(edges[e - 1], edges[e], t, w);
            const std::size_t p_begin = nodes_.size();
            for (int i = 0; i < kGL; ++i) {
                ContourNode n;
                n.ray = ray;
                n.r = t[i];
                n.lambda = u * t[i];
                n.w_r = w[i];
                n.wtilde = pref * w[i];
                n.om = omega(n.lambda);
                n.om_big = omega_big(n.lambda);
                nodes_.push_back(n);
            }
            panels_.emplace_back(p_begin, nodes_.size());
        }
        ray_end_[ri] = nodes_.size();
    }

    // local spacing for the off-contour resolution guard
    for (int ri = 0; ri < 4; ++ri) {
        for (std::size_t j = ray_begin_[ri]; j < ray_end_[ri]; ++j) {
            double s = 1e300;
            if (j > ray_begin_[ri]) s = std::min(s, nodes_[j].r - nodes_[j - 1].r);
            if (j + 1 < ray_end_[ri]) s = std::min(s, nodes_[j + 1].r - nodes_[j].r);
            nodes_[j].spacing = s;
        }
    }
}

void ContourDiscretization::fill_coefficients() {
    const ProblemParams& pp = params();
    const double tau = std::tan(0.5 * pp.d);

    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        ContourNode& n = nodes_[j];
        if (n.ray == Ray::ArgZero || n.ray == Ray::ArgPi) {
            const double t = n.lambda.real();
            const cplx G = cplx(0.0, spectrum_.g_imag_part(t));
            const auto [h_plus, h_minus] = spectrum_.h_boundary(t);
            n.g_over_h = G / h_plus;
            n.g_over_hminus = G / h_minus;
            const double wl = n.om.real() * pp.L;  // omega is real on the axis
            // the decaying exponential on this ray: e^{-wL} (ray 0), e^{+wL} (ray pi)
            n.exp_mwl = std::exp(cplx((n.ray == Ray::ArgZero) ? -wl : wl, 0.0));
            n.diag_term = n.g_over_h * n.g_over_hminus * n.exp_mwl;
        } else {
            const double s = n.r;
            const cplx h_upper = spectrum_.h(cplx(0.0, s));  // h at i s
            const cplx l2 = n.lambda * n.lambda;
            const cplx one_p = 1.0 + l2;
            const cplx rat = (std::abs(one_p) > 1e-6) ? (1.0 - l2) / one_p : cplx(0.0, 0.0);
            if (n.ray == Ray::ArgHalfPi) {
                n.combo_pi2 = -g_times_one_plus_exp(n.lambda, +1, pp) / h_upper;
                n.split_coef = cplx(0.0, 1.0) * rat * tau / h_upper;
            } else {
                n.combo_3pi2 = g_times_one_plus_exp(n.lambda, -1, pp) / h_upper;
                n.split_coef = cplx(0.0, 1.0) * rat * tau / h_upper;
            }
            n.exp_mwl = std::exp(-n.om * pp.L);
        }
        for (const cplx& c : {n.g_over_h, n.g_over_hminus, n.exp_mwl, n.combo_pi2,
                              n.combo_3pi2, n.split_coef, n.diag_term}) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw domain_error("contour: non-finite jump coefficient at a node");
        }
    }
}

void ContourDiscretization::assemble_collocation() {
    const std::size_t n = nodes_.size();
    a_re_.assign(n * n, 0.0);
    a_im_.assign(n * n, 0.0);

    // ray index per node for the same-ray logic
    std::vector<int> ray_of(n);
    for (int ri = 0; ri < 4; ++ri)
        for (std::size_t j = ray_begin_[ri]; j < ray_end_[ri]; ++j) ray_of[j] = ri;

    for (std::size_t j = 0; j < n; ++j) {
        const cplx lj = nodes_[j].lambda;
        cplx diag(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const cplx a = nodes_[k].wtilde / (nodes_[k].lambda - lj);
            a_re_[j * n + k] += a.real();
            a_im_[j * n + k] += a.imag();
            if (ray_of[k] == ray_of[j]) diag -= a;  // difference-quotient compensation
        }
        // closed-form PV of the bare kernel over the ray segment
        const double rj = nodes_[j].r;
        const double sigma = ray_orientation(nodes_[j].ray);
        diag += sigma / cplx(0.0, 2.0 * pi) *
                std::log((cfg_.r_max - rj) / (rj - cfg_.r_min));
        diag += 0.5;  // Plemelj: + side limit
        a_re_[j * n + j] += diag.real();
        a_im_[j * n + j] += diag.imag();
    }

    // k = j limit of the difference quotient: phi'(lambda_j) from the panel's
    // barycentric differentiation matrix
    for (const auto& [p0, p1] : panels_) {
        const int m = int(p1 - p0);
        std::vector<double> bw(m, 1.0);
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < m; ++l)
                if (l != i) bw[i] /= (nodes_[p0 + i].r - nodes_[p0 + l].r);
        for (int i = 0; i < m; ++i) {
            const std::size_t j = p0 + i;
            const cplx cd = nodes_[j].w_r * ray_orientation(nodes_[j].ray) / cplx(0.0, 2.0 * pi);
            double djj = 0.0;
            for (int l = 0; l < m; ++l) {
                if (l == i) continue;
                const double d_il = (bw[l] / bw[i]) / (nodes_[j].r - nodes_[p0 + l].r);
                const cplx add = cd * d_il;
                a_re_[j * nodes_.size() + (p0 + l)] += add.real();
                a_im_[j * nodes_.size() + (p0 + l)] += add.imag();
                djj -= d_il;
            }
            const cplx add = cd * djj;
            a_re_[j * nodes_.size() + j] += add.real();
            a_im_[j * nodes_.size() + j] += add.imag();
        }
    }
}

void ContourDiscretization::exponent_entries(const ContourNode& n, const PhysicalPoint& p,
                                             cplx& w12, cplx& w21) const {
    const double L = params().L;
    const cplx th = n.om_big * p.x + n.om * p.y;
    switch (n.ray) {
        case Ray::ArgZero:
            w12 = n.g_over_h * std::exp(-th);
            w21 = -n.g_over_hminus * std::exp(th - n.om * L);
            break;
        case Ray::ArgPi:
            w12 = n.g_over_h * std::exp(-th + n.om * L);
            w21 = -n.g_over_hminus * std::exp(th);
            break;
        case Ray::ArgHalfPi:
            w12 = -n.combo_pi2 * std::exp(-th);
            w21 = 0.0;
            break;
        case Ray::ArgThreeHalfPi:
            w12 = 0.0;
            w21 = -n.combo_3pi2 * std::exp(th);
            break;
    }
}

Matrix2 ContourDiscretization::jump_deviation_at(std::size_t idx, const PhysicalPoint& p) const {
    const ContourNode& n = nodes_[idx];
    cplx w12, w21;
    exponent_entries(n, p, w12, w21);
    Matrix2 w{0.0, w12, w21, 0.0};
    if (n.ray == Ray::ArgZero) w.e11 = n.diag_term;
    if (n.ray == Ray::ArgPi) w.e22 = n.diag_term;
    return w;
}

void ContourDiscretization::jump_deviation(const PhysicalPoint& p,
                                           kernels::ValueStreams& w) const {
    if (!(p.y > 0.0 && p.y < params().L))
        throw domain_error("jump assembly requires 0 < y < L (decay fails on the walls)");
    if (p.x < 0.0) throw domain_error("jump assembly requires x >= 0");
    w.resize(nodes_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) w.set(j, jump_deviation_at(j, p));
}

double ContourDiscretization::max_jump_deviation(const PhysicalPoint& p) const {
    double m = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        m = std::max(m, jump_deviation_at(j, p).max_abs());
    return m;
}

void ContourDiscretization::cplus_apply(const kernels::ValueStreams& phi,
                                        kernels::ValueStreams& out) const {
    const std::size_t n = nodes_.size();
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        out.set(j, kernels::dot_row(&a_re_[j * n], &a_im_[j * n], phi));
}

Matrix2 ContourDiscretization::cauchy_apply(const kernels::ValueStreams& phi,
                                            const cplx& target) const {
    const std::size_t n = nodes_.size();

    // on-contour detection: the + side Plemelj value between nodes
    int on_ray = -1;
    const double ray_eps = 1e-12 * (1.0 + std::abs(target));
    if (std::abs(target.imag()) < ray_eps && target.real() > cfg_.r_min &&
        target.real() < cfg_.r_max)
        on_ray = 0;
    else if (std::abs(target.real()) < ray_eps && target.imag() > cfg_.r_min &&
             target.imag() < cfg_.r_max)
        on_ray = 1;
    else if (std::abs(target.imag()) < ray_eps && -target.real() > cfg_.r_min &&
             -target.real() < cfg_.r_max)
        on_ray = 2;
    else if (std::abs(target.real()) < ray_eps && -target.imag() > cfg_.r_min &&
             -target.imag() < cfg_.r_max)
        on_ray = 3;

    // resolution guard against the node set
    double best = 1e300;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double dist = std::abs(nodes_[j].lambda - target);
        if (dist < best) { best = dist; best_j = j; }
    }
    if (on_ray < 0 && best < 0.5 * nodes_[best_j].spacing)
        throw resolution_error("cauchy_apply: target too close to a quadrature node");

    std::vector<double> row_re(n), row_im(n);
    Matrix2 extra = Matrix2::zero();

    if (on_ray < 0) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx a = nodes_[k].wtilde / (nodes_[k].lambda - target);
            row_re[k] = a.real();
            row_im[k] = a.imag();
        }
    } else {
        // interpolate phi at the target on its ray (4 nearest nodes in radius)
        const double rt = (on_ray == 0)   ? target.real()
                          : (on_ray == 1) ? target.imag()
                          : (on_ray == 2) ? -target.real()
                                          : -target.imag();
        const std::size_t rb = ray_begin_[on_ray], re = ray_end_[on_ray];
        std::size_t i0 = rb;
        while (i0 + 1 < re && nodes_[i0 + 1].r < rt) ++i0;
        const std::size_t lo = (i0 >= rb + 1) ? i0 - 1 : rb;
        const std::size_t hi = std::min(lo + 4, re);
        Matrix2 phi_t = Matrix2::zero();
        for (std::size_t a = lo; a < hi; ++a) {
            double w = 1.0;
            for (std::size_t b = lo; b < hi; ++b)
                if (b != a) w *= (rt - nodes_[b].r) / (nodes_[a].r - nodes_[b].r);
            phi_t = phi_t + w * phi.get(a);
        }
        const double sigma = ray_orientation(nodes_[rb].ray);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx a = nodes_[k].wtilde / (nodes_[k].lambda - target);
            row_re[k] = a.real();
            row_im[k] = a.imag();
        }
        // subtract the interpolated value on the singular ray, add it back
        // through the closed-form PV log plus the + side Plemelj half
        cplx comp(0.0, 0.0);
        for (std::size_t k = rb; k < re; ++k)
            comp += nodes_[k].wtilde / (nodes_[k].lambda - target);
        const cplx pv_log =
            sigma / cplx(0.0, 2.0 * pi) * std::log((cfg_.r_max - rt) / (rt - cfg_.r_min));
        extra = (pv_log - comp + 0.5) * phi_t;
    }

    const double* rre = row_re.data();
    const double* rim = row_im.data();
    return kernels::dot_row(rre, rim, phi) + extra;
}

Matrix2 ContourDiscretization::functional_tails(const PhysicalPoint& p,
                                                const kernels::ValueStreams& mu,
                                                bool with_kernel,
                                                const cplx& kernel_target) const {
    const ProblemParams& pp = params();
    Matrix2 total = Matrix2::zero();

    for (int ri = 0; ri < 4; ++ri) {
        const std::size_t rb = ray_begin_[ri], re = ray_end_[ri];
        if (rb == re) continue;
        int n_terms = 0;
        const Ray ray = nodes_[rb].ray;
        const TailTerm* terms = ray_tail_terms(ray, n_terms);
        const cplx u = ray_direction(ray);
        const cplx pref = ray_orientation(ray) * u / cplx(0.0, 2.0 * pi);

        for (int end = 0; end < 2; ++end) {
            const std::size_t j = end == 0 ? rb : re - 1;  // inner / outer node
            const ContourNode& nd = nodes_[j];
            const Matrix2 mu_end = mu.get(j);
            const cplx dom = u * (1.0 + 1.0 / (nd.lambda * nd.lambda)) / cplx(0.0, 2.0);
            const cplx dw = u * (1.0 - 1.0 / (nd.lambda * nd.lambda)) * 0.5;
            const cplx kern = with_kernel ? 1.0 / (nd.lambda - kernel_target) : cplx(1.0, 0.0);

            for (int t = 0; t < n_terms; ++t) {
                const TailTerm& tt = terms[t];
                cplx coef;
                switch (tt.coef) {
                    case 0: coef = nd.g_over_h; break;
                    case 1: coef = -nd.g_over_hminus; break;
                    case 2: coef = nd.diag_term; break;
                    case 3: coef = nd.split_coef; break;
                    default: coef = -nd.split_coef; break;
                }
                cplx value;
                if (tt.coef == 2) {
                    value = coef;  // exponential already folded in
                } else {
                    const cplx expo = double(tt.e_om) * nd.om_big * p.x +
                                      nd.om * (double(tt.e_y) * p.y + double(tt.e_l) * pp.L);
                    value = coef * std::exp(expo);
                }
                const cplx rate = double(tt.e_om) * dom * p.x +
                                  dw * (double(tt.e_y) * p.y + double(tt.e_l) * pp.L);
                cplx factor;
                if (end == 1) {  // outer: int_{r}^{inf} e^{rate (r'-r)} dr'
                    if (!(rate.real() < -1e-14)) continue;
                    factor = -1.0 / rate;
                } else {  // inner: int_0^{r} e^{rate (r'-r)} dr'
                    if (!(rate.real() > 1e-14)) continue;
                    const cplx damp = rate * nd.r;
                    factor = (damp.real() > 700.0) ? 1.0 / rate
                                                   : (1.0 - std::exp(-damp)) / rate;
                }
                Matrix2 tm = Matrix2::zero();
                switch (tt.entry) {
                    case 0: tm.e11 = value; break;
                    case 1: tm.e12 = value; break;
                    case 2: tm.e21 = value; break;
                    default: tm.e22 = value; break;
                }
                total = total + (pref * kern * factor) * (mu_end * tm);
            }
        }
    }
    return total;
}

ContourDiscretization discretize_contour(const LinearizableSpectrum& spectrum, double r_min,
                                         double r_max, int n_per_ray,
                                         const std::string& grading) {
    ContourConfig cfg;
    cfg.r_min = r_min;
    cfg.r_max = r_max;
    cfg.n_per_ray = n_per_ray;
    cfg.grading = grading;
    return ContourDiscretization(spectrum, cfg);
}

Matrix2 assemble_jump(const ContourDiscretization& disc, std::size_t node_idx,
                      const PhysicalPoint& p) {
    if (!(p.y > 0.0 && p.y < disc.params().L))
        throw domain_error("assemble_jump: point must satisfy 0 < y < L");
    if (p.x < 0.0) throw domain_error("assemble_jump: x must be >= 0");
    return Matrix2::identity() - disc.jump_deviation_at(node_idx, p);
}

Backend backend_from_string(const std::string& s) {
    if (s == "neumann") return Backend::Neumann;
    if (s == "direct") return Backend::Direct;
    throw config_error("unknown backend '" + s + "' (use neumann|direct)");
}

std::string to_string(Backend b) { return b == Backend::Neumann ? "neumann" : "direct"; }

namespace {

void times_deviation(const kernels::ValueStreams& mu, const kernels::ValueStreams& w,
                     kernels::ValueStreams& phi) {
    const std::size_t n = mu.size();
    phi.resize(n);
    for (std::size_t j = 0; j < n; ++j) phi.set(j, mu.get(j) * w.get(j));
}

double update_distance(const kernels::ValueStreams& a, const kernels::ValueStreams& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, (a.get(j) - b.get(j)).max_abs());
    return m;
}

}  // namespace

RHSolution solve_rh(const PhysicalPoint& p, const ContourDiscretization& disc,
                    const SolverOptions& opts) {
    const std::size_t n = disc.size();
    RHSolution sol;
    sol.point = p;
    sol.backend = to_string(opts.backend);

    kernels::ValueStreams w;
    disc.jump_deviation(p, w);

    double wmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) wmax = std::max(wmax, w.get(j).max_abs());

    kernels::ValueStreams mu(n);
    for (std::size_t j = 0; j < n; ++j) mu.set(j, Matrix2::identity());

    if (wmax == 0.0) {  // trivial jump: mu = I, psi_star = 0, no work
        sol.mu = mu;
        sol.psi_star = Matrix2::zero();
        return sol;
    }

    kernels::ValueStreams phi(n), applied(n);

    if (opts.backend == Backend::Neumann) {
        double prev_update = 1e300;
        int grew = 0;
        int it = 0;
        for (; it < opts.max_iter; ++it) {
            times_deviation(mu, w, phi);
            disc.cplus_apply(phi, applied);
            kernels::ValueStreams mu_next(n);
            for (std::size_t j = 0; j < n; ++j)
                mu_next.set(j, Matrix2::identity() + applied.get(j));
            const double upd = update_distance(mu_next, mu);
            mu = mu_next;
            if (upd < opts.tol) { ++it; break; }
            grew = (upd > prev_update) ? grew + 1 : 0;
            if (grew >= 3)
                throw solver_error("neumann iteration diverging; retry with backend=direct");
            prev_update = upd;
        }
        if (it >= opts.max_iter)
            throw solver_error("neumann iteration did not reach tol within max_iter");
        sol.iterations = it;
    } else {
        // row-decoupled dense collocation: each row r of mu solves
        // u = e_r + A (u W); one (2n)x(2n) complex system shared by both rows
        const Eigen::Index N = 2 * Eigen::Index(n);
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N);
        for (std::size_t j = 0; j < n; ++j) {
            const double* are = disc.collocation_row_re(j);
            const double* aim = disc.collocation_row_im(j);
            for (std::size_t k = 0; k < n; ++k) {
                const cplx ajk(are[k], aim[k]);
                const Matrix2 wk = w.get(k);
                M(2 * j + 0, 2 * k + 0) -= ajk * wk.e11;
                M(2 * j + 0, 2 * k + 1) -= ajk * wk.e21;
                M(2 * j + 1, 2 * k + 0) -= ajk * wk.e12;
                M(2 * j + 1, 2 * k + 1) -= ajk * wk.e22;
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
        const double rcond_proxy = M.diagonal().cwiseAbs().minCoeff();
        if (!(rcond_proxy > 0.0))
            throw solver_error("direct backend: singular collocation system");
        Eigen::VectorXcd b0 = Eigen::VectorXcd::Zero(N), b1 = Eigen::VectorXcd::Zero(N);
        for (std::size_t j = 0; j < n; ++j) {
            b0(2 * j + 0) = 1.0;
            b1(2 * j + 1) = 1.0;
        }
        const Eigen::VectorXcd u0 = lu.solve(b0);
        const Eigen::VectorXcd u1 = lu.solve(b1);
        const double direct_err = (M * u0 - b0).cwiseAbs().maxCoeff();
        if (!(direct_err < 1e-6))
            throw solver_error("direct backend: collocation system solved poorly");
        for (std::size_t j = 0; j < n; ++j)
            mu.set(j, {u0(2 * j), u0(2 * j + 1), u1(2 * j), u1(2 * j + 1)});
        sol.iterations = 0;
    }

    times_deviation(mu, w, phi);
    disc.cplus_apply(phi, applied);
    double resid = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        resid = std::max(resid,
                         (mu.get(j) - Matrix2::identity() - applied.get(j)).max_abs());
    sol.residual = resid;

    // psi_star = -(1/2 pi i) int mu (I - J) dl, tails restored analytically
    Matrix2 s = Matrix2::zero();
    for (std::size_t j = 0; j < n; ++j) {
        const cplx wt = disc.node(j).wtilde;
        s = s + wt * phi.get(j);
    }
    s = s + disc.functional_tails(p, mu, false, cplx(0.0, 0.0));
    sol.psi_star = cplx(-1.0, 0.0) * s;
    sol.mu = std::move(mu);
    return sol;
}

Matrix2 psi_at(const RHSolution& sol, const ContourDiscretization& disc, const cplx& target) {
    kernels::ValueStreams w, phi;
    disc.jump_deviation(sol.point, w);
    times_deviation(sol.mu, w, phi);
    Matrix2 val = disc.cauchy_apply(phi, target);
    val = val + disc.functional_tails(sol.point, sol.mu, true, target);
    return Matrix2::identity() + val;
}

}  // namespace esg
