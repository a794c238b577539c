// AVX2+FMA variant of the Cauchy-apply kernel. This translation unit is the
// only one compiled with AVX2 codegen; callers reach it through the runtime
// dispatch in kernels.cpp after a cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "esg/kernels.hpp"

namespace esg::kernels {

void cdot4_avx2(const double* a_re, const double* a_im,
                const double* const* v_re, const double* const* v_im,
                std::size_t n, cplx out[4]) {
    __m256d acc_re[4], acc_im[4];
    for (int e = 0; e < 4; ++e) {
        acc_re[e] = _mm256_setzero_pd();
        acc_im[e] = _mm256_setzero_pd();
    }
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d ar = _mm256_loadu_pd(a_re + k);
        const __m256d ai = _mm256_loadu_pd(a_im + k);
        for (int e = 0; e < 4; ++e) {
            const __m256d vr = _mm256_loadu_pd(v_re[e] + k);
            const __m256d vi = _mm256_loadu_pd(v_im[e] + k);
            acc_re[e] = _mm256_fmadd_pd(ar, vr, acc_re[e]);
            acc_re[e] = _mm256_fnmadd_pd(ai, vi, acc_re[e]);
            acc_im[e] = _mm256_fmadd_pd(ar, vi, acc_im[e]);
            acc_im[e] = _mm256_fmadd_pd(ai, vr, acc_im[e]);
        }
    }
    double tr[4], ti[4];
    for (int e = 0; e < 4; ++e) {
        alignas(32) double buf[4];
        _mm256_store_pd(buf, acc_re[e]);
        tr[e] = (buf[0] + buf[2]) + (buf[1] + buf[3]);
        _mm256_store_pd(buf, acc_im[e]);
        ti[e] = (buf[0] + buf[2]) + (buf[1] + buf[3]);
    }
    for (; k < n; ++k) {
        const double ar = a_re[k], ai = a_im[k];
        for (int e = 0; e < 4; ++e) {
            const double vr = v_re[e][k], vi = v_im[e][k];
            tr[e] += ar * vr - ai * vi;
            ti[e] += ar * vi + ai * vr;
        }
    }
    for (int e = 0; e < 4; ++e) out[e] = cplx(tr[e], ti[e]);
}

}  // namespace esg::kernels

#endif
