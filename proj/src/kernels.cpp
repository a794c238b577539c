#include "esg/kernels.hpp"

#include <atomic>

#if defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace esg::kernels {

void cdot4_scalar(const double* a_re, const double* a_im,
                  const double* const* v_re, const double* const* v_im,
                  std::size_t n, cplx out[4]) {
    double acc_re[4] = {0, 0, 0, 0};
    double acc_im[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = a_re[k], ai = a_im[k];
        for (int e = 0; e < 4; ++e) {
            const double vr = v_re[e][k], vi = v_im[e][k];
            acc_re[e] += ar * vr - ai * vi;
            acc_im[e] += ar * vi + ai * vr;
        }
    }
    for (int e = 0; e < 4; ++e) out[e] = cplx(acc_re[e], acc_im[e]);
}

#if defined(__ARM_NEON)
void cdot4_neon(const double* a_re, const double* a_im,
                const double* const* v_re, const double* const* v_im,
                std::size_t n, cplx out[4]) {
    float64x2_t acc_re[4], acc_im[4];
    for (int e = 0; e < 4; ++e) {
        acc_re[e] = vdupq_n_f64(0.0);
        acc_im[e] = vdupq_n_f64(0.0);
    }
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t ar = vld1q_f64(a_re + k);
        const float64x2_t ai = vld1q_f64(a_im + k);
        for (int e = 0; e < 4; ++e) {
            const float64x2_t vr = vld1q_f64(v_re[e] + k);
            const float64x2_t vi = vld1q_f64(v_im[e] + k);
            acc_re[e] = vfmaq_f64(acc_re[e], ar, vr);
            acc_re[e] = vfmsq_f64(acc_re[e], ai, vi);
            acc_im[e] = vfmaq_f64(acc_im[e], ar, vi);
            acc_im[e] = vfmaq_f64(acc_im[e], ai, vr);
        }
    }
    double tr[4], ti[4];
    for (int e = 0; e < 4; ++e) {
        tr[e] = vaddvq_f64(acc_re[e]);
        ti[e] = vaddvq_f64(acc_im[e]);
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
#endif

namespace {

cdot4_fn detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return cdot4_avx2;
#endif
#if defined(__ARM_NEON)
    return cdot4_neon;
#endif
    return cdot4_scalar;
}

std::atomic<cdot4_fn> g_active{nullptr};

}  // namespace

cdot4_fn active_cdot4() {
    cdot4_fn fn = g_active.load(std::memory_order_relaxed);
    if (!fn) {
        fn = detect();
        g_active.store(fn, std::memory_order_relaxed);
    }
    return fn;
}

std::string active_kernel_name() {
    const cdot4_fn fn = active_cdot4();
#if defined(__x86_64__) || defined(_M_X64)
    if (fn == cdot4_avx2) return "avx2";
#endif
#if defined(__ARM_NEON)
    if (fn == cdot4_neon) return "neon";
#endif
    return "scalar";
}

void force_kernel(const std::string& name) {
    if (name == "scalar") {
        g_active.store(cdot4_scalar);
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")))
            throw config_error("kernels: avx2 not supported on this host");
        g_active.store(cdot4_avx2);
        return;
    }
#endif
#if defined(__ARM_NEON)
    if (name == "neon") {
        g_active.store(cdot4_neon);
        return;
    }
#endif
    throw config_error("kernels: unknown or unsupported kernel '" + name + "'");
}

void reset_kernel() { g_active.store(detect()); }

}  // namespace esg::kernels
