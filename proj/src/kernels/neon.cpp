#include "phasefold/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace phasefold::kernels::neon {

namespace {

inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }

}  // namespace

// Two evaluation points per vector, same rotation and reseed schedule as the scalar kernel.
void trig_eval(const cplx* c, std::size_t count, long first, const double* theta, std::size_t m,
               cplx* out) {
  std::size_t j = 0;
  for (; j + 2 <= m; j += 2) {
    const cplx s0 = unit_phase(1, theta[j]);
    const cplx s1 = unit_phase(1, theta[j + 1]);
    const double sr_arr[2] = {s0.real(), s1.real()};
    const double si_arr[2] = {s0.imag(), s1.imag()};
    const float64x2_t sr = vld1q_f64(sr_arr);
    const float64x2_t si = vld1q_f64(si_arr);
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    std::size_t n = 0;
    while (n < count) {
      const cplx z0 = unit_phase(first + static_cast<long>(n), theta[j]);
      const cplx z1 = unit_phase(first + static_cast<long>(n), theta[j + 1]);
      const double zr_arr[2] = {z0.real(), z1.real()};
      const double zi_arr[2] = {z0.imag(), z1.imag()};
      float64x2_t zr = vld1q_f64(zr_arr);
      float64x2_t zi = vld1q_f64(zi_arr);
      const std::size_t stop = std::min(count, n + kReseedInterval);
      for (; n < stop; ++n) {
        const float64x2_t cr = vdupq_n_f64(c[n].real());
        const float64x2_t ci = vdupq_n_f64(c[n].imag());
        acc_re = vfmaq_f64(acc_re, cr, zr);
        acc_re = vfmsq_f64(acc_re, ci, zi);
        acc_im = vfmaq_f64(acc_im, cr, zi);
        acc_im = vfmaq_f64(acc_im, ci, zr);
        const float64x2_t nr = vfmsq_f64(vmulq_f64(zr, sr), zi, si);
        const float64x2_t ni = vfmaq_f64(vmulq_f64(zr, si), zi, sr);
        zr = nr;
        zi = ni;
      }
    }
    out[j] = {vgetq_lane_f64(acc_re, 0), vgetq_lane_f64(acc_im, 0)};
    out[j + 1] = {vgetq_lane_f64(acc_re, 1), vgetq_lane_f64(acc_im, 1)};
  }
  if (j < m) scalar::trig_eval(c, count, first, theta + j, m - j, out + j);
}

cplx weighted_inner(const cplx* a, const cplx* b, const double* w, std::size_t n) {
  float64x2_t acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    const float64x2_t wv = vdupq_n_f64(w[i]);
    acc1 = vfmaq_f64(acc1, vmulq_f64(va, vb), wv);
    acc2 = vfmaq_f64(acc2, vmulq_f64(va, vextq_f64(vb, vb, 1)), wv);
  }
  return {vgetq_lane_f64(acc1, 0) + vgetq_lane_f64(acc1, 1),
          vgetq_lane_f64(acc2, 0) - vgetq_lane_f64(acc2, 1)};
}

void mul(const cplx* a, const cplx* s, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vs = load1(s + i);
    const float64x2_t a_sw = vextq_f64(va, va, 1);
    const float64x2_t s_re = vdupq_laneq_f64(vs, 0);
    const double sign_arr[2] = {-1.0, 1.0};
    const float64x2_t s_im = vmulq_f64(vdupq_laneq_f64(vs, 1), vld1q_f64(sign_arr));
    store1(out + i, vfmaq_f64(vmulq_f64(va, s_re), a_sw, s_im));
  }
}

void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    const float64x2_t a_sw = vextq_f64(va, va, 1);
    const float64x2_t b_re = vdupq_laneq_f64(vb, 0);
    const double sign_arr[2] = {1.0, -1.0};
    const float64x2_t b_im = vmulq_f64(vdupq_laneq_f64(vb, 1), vld1q_f64(sign_arr));
    store1(out + i, vfmaq_f64(vmulq_f64(va, b_re), a_sw, b_im));
  }
}

void scale_real(const cplx* a, const double* w, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) store1(out + i, vmulq_n_f64(load1(a + i), w[i]));
}

}  // namespace phasefold::kernels::neon
