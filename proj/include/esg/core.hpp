#pragma once

// Core scalar/matrix algebra for the semistrip solver: complex 2x2 values,
// the spectral exponents Omega(lambda), omega(lambda), theta(x,y,lambda),
// and the shared parameter records.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace esg {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Exit-code contract shared with the CLI: 2 config/parse, 3 domain/region,
// 4 solver failure.
struct error : std::runtime_error {
    int exit_code;
    error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg, 2) {}
};
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg, 3) {}
};
struct region_error : error {
    explicit region_error(const std::string& msg) : error(msg, 3) {}
};
struct pole_error : error {
    explicit pole_error(const std::string& msg) : error(msg, 3) {}
};
struct resolution_error : error {
    explicit resolution_error(const std::string& msg) : error(msg, 3) {}
};
struct grid_error : error {
    explicit grid_error(const std::string& msg) : error(msg, 3) {}
};
struct solver_error : error {
    explicit solver_error(const std::string& msg) : error(msg, 4) {}
};

// Plain-value 2x2 complex matrix. All operations are pure.
struct Matrix2 {
    cplx e11{0.0}, e12{0.0}, e21{0.0}, e22{0.0};

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 zero() { return {}; }

    cplx det() const { return e11 * e22 - e12 * e21; }

    Matrix2 inverse() const {
        const cplx d = det();
        if (std::abs(d) == 0.0)
            throw domain_error("Matrix2::inverse: singular matrix");
        const cplx id = 1.0 / d;
        return {e22 * id, -e12 * id, -e21 * id, e11 * id};
    }

    Matrix2 operator+(const Matrix2& o) const {
        return {e11 + o.e11, e12 + o.e12, e21 + o.e21, e22 + o.e22};
    }
    Matrix2 operator-(const Matrix2& o) const {
        return {e11 - o.e11, e12 - o.e12, e21 - o.e21, e22 - o.e22};
    }
    Matrix2 operator*(const Matrix2& o) const {
        return {e11 * o.e11 + e12 * o.e21, e11 * o.e12 + e12 * o.e22,
                e21 * o.e11 + e22 * o.e21, e21 * o.e12 + e22 * o.e22};
    }
    Matrix2 operator*(const cplx& s) const { return {e11 * s, e12 * s, e21 * s, e22 * s}; }
    friend Matrix2 operator*(const cplx& s, const Matrix2& m) { return m * s; }

    // max |entry|; the norm used for contraction/residual bookkeeping
    double max_abs() const {
        return std::max(std::max(std::abs(e11), std::abs(e12)),
                        std::max(std::abs(e21), std::abs(e22)));
    }
    double frobenius() const {
        return std::sqrt(std::norm(e11) + std::norm(e12) + std::norm(e21) + std::norm(e22));
    }
};

struct ProblemParams {
    double d = 0.0;  // constant Dirichlet value on the bounded side x = 0 (radians)
    double L = 1.0;  // strip width

    // |d| must stay a margin below pi so tan(d/2) remains tame and
    // 1 - G^2 >= 1 on the real axis is numerically meaningful.
    static constexpr double d_margin = 1e-3;

    void validate() const {
        if (!(L > 0.0)) throw config_error("ProblemParams: L must be > 0");
        if (!(std::abs(d) < pi - d_margin))
            throw config_error("ProblemParams: |d| must be < pi (margin 1e-3)");
    }
};

struct PhysicalPoint {
    double x = 0.0;  // >= 0
    double y = 0.0;  // in [0, L]
};

// Evaluations treat |lambda| below this as the essential singularity at 0.
inline constexpr double lambda_min_abs = 1e-14;

inline void require_nonzero_lambda(const cplx& lambda) {
    if (std::abs(lambda) < lambda_min_abs)
        throw domain_error("lambda too close to the essential singularity at 0");
}

// omega(lambda) = (lambda + 1/lambda)/2, the y-direction exponent rate
inline cplx omega(const cplx& lambda) {
    require_nonzero_lambda(lambda);
    return 0.5 * (lambda + 1.0 / lambda);
}

// Omega(lambda) = (lambda - 1/lambda)/(2i), the x-direction exponent rate
inline cplx omega_big(const cplx& lambda) {
    require_nonzero_lambda(lambda);
    return (lambda - 1.0 / lambda) / cplx(0.0, 2.0);
}

// theta(x,y,lambda) = Omega(lambda) x + omega(lambda) y
inline cplx theta(const PhysicalPoint& p, const cplx& lambda) {
    return omega_big(lambda) * p.x + omega(lambda) * p.y;
}

}  // namespace esg
