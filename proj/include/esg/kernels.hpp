#pragma once

// Data-parallel inner loops of the collocation solver.
//
// The hot operation is the dense Cauchy apply: for every collocation target
// the same complex coefficient row multiplies four interleaved value streams
// (the four entries of the 2x2 matrix density). Kernels work on split
// re/im arrays. A scalar reference implementation always exists; AVX2 (x86)
// and NEON (aarch64) variants are selected at runtime and are bit-compatible
// with the reference up to floating-point reassociation.

#include <cstddef>
#include <string>
#include <vector>

#include "esg/core.hpp"

namespace esg::kernels {

// out[e] = sum_k (a_re[k] + i a_im[k]) * (v_re[e][k] + i v_im[e][k]),  e = 0..3
using cdot4_fn = void (*)(const double* a_re, const double* a_im,
                          const double* const* v_re, const double* const* v_im,
                          std::size_t n, cplx out[4]);

void cdot4_scalar(const double* a_re, const double* a_im,
                  const double* const* v_re, const double* const* v_im,
                  std::size_t n, cplx out[4]);

#if defined(__x86_64__) || defined(_M_X64)
void cdot4_avx2(const double* a_re, const double* a_im,
                const double* const* v_re, const double* const* v_im,
                std::size_t n, cplx out[4]);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
void cdot4_neon(const double* a_re, const double* a_im,
                const double* const* v_re, const double* const* v_im,
                std::size_t n, cplx out[4]);
#endif

// Active implementation, chosen once per process from CPU features.
cdot4_fn active_cdot4();
std::string active_kernel_name();

// Force a specific implementation ("scalar", "avx2", "neon"); used by the
// equivalence tests. Throws config_error for unknown/unsupported names.
void force_kernel(const std::string& name);
void reset_kernel();

// Four value streams in split-complex layout, one slot per contour node.
struct ValueStreams {
    std::vector<double> re[4], im[4];

    explicit ValueStreams(std::size_t n = 0) { resize(n); }
    void resize(std::size_t n) {
        for (int e = 0; e < 4; ++e) {
            re[e].assign(n, 0.0);
            im[e].assign(n, 0.0);
        }
    }
    std::size_t size() const { return re[0].size(); }

    void set(std::size_t j, const Matrix2& m) {
        re[0][j] = m.e11.real(); im[0][j] = m.e11.imag();
        re[1][j] = m.e12.real(); im[1][j] = m.e12.imag();
        re[2][j] = m.e21.real(); im[2][j] = m.e21.imag();
        re[3][j] = m.e22.real(); im[3][j] = m.e22.imag();
    }
    Matrix2 get(std::size_t j) const {
        return {cplx(re[0][j], im[0][j]), cplx(re[1][j], im[1][j]),
                cplx(re[2][j], im[2][j]), cplx(re[3][j], im[3][j])};
    }
};

// out = sum_k row[k] * streams[k] as a Matrix2 (row in split layout)
inline Matrix2 dot_row(const double* a_re, const double* a_im, const ValueStreams& v) {
    const double* vre[4] = {v.re[0].data(), v.re[1].data(), v.re[2].data(), v.re[3].data()};
    const double* vim[4] = {v.im[0].data(), v.im[1].data(), v.im[2].data(), v.im[3].data()};
    cplx out[4];
    active_cdot4()(a_re, a_im, vre, vim, v.size(), out);
    return {out[0], out[1], out[2], out[3]};
}

}  // namespace esg::kernels
