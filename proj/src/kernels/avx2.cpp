#include "phasefold/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace phasefold::kernels::avx2 {

namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d s) {
  const __m256d s_re = _mm256_movedup_pd(s);
  const __m256d s_im = _mm256_permute_pd(s, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, s_re, _mm256_mul_pd(a_sw, s_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// Four evaluation points per lane group, phases advanced by complex rotation and reseeded exactly.
void trig_eval(const cplx* c, std::size_t count, long first, const double* theta, std::size_t m,
               cplx* out) {
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    alignas(32) double step_re[4], step_im[4], z_re[4], z_im[4];
    for (int l = 0; l < 4; ++l) {
      const cplx s = unit_phase(1, theta[j + l]);
      step_re[l] = s.real();
      step_im[l] = s.imag();
    }
    const __m256d sr = _mm256_load_pd(step_re);
    const __m256d si = _mm256_load_pd(step_im);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t n = 0;
    while (n < count) {
      for (int l = 0; l < 4; ++l) {
        const cplx z = unit_phase(first + static_cast<long>(n), theta[j + l]);
        z_re[l] = z.real();
        z_im[l] = z.imag();
      }
      __m256d zr = _mm256_load_pd(z_re);
      __m256d zi = _mm256_load_pd(z_im);
      const std::size_t stop = std::min(count, n + kReseedInterval);
      for (; n < stop; ++n) {
        const __m256d cr = _mm256_set1_pd(c[n].real());
        const __m256d ci = _mm256_set1_pd(c[n].imag());
        acc_re = _mm256_fmadd_pd(cr, zr, acc_re);
        acc_re = _mm256_fnmadd_pd(ci, zi, acc_re);
        acc_im = _mm256_fmadd_pd(cr, zi, acc_im);
        acc_im = _mm256_fmadd_pd(ci, zr, acc_im);
        const __m256d nr = _mm256_fmsub_pd(zr, sr, _mm256_mul_pd(zi, si));
        const __m256d ni = _mm256_fmadd_pd(zr, si, _mm256_mul_pd(zi, sr));
        zr = nr;
        zi = ni;
      }
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    for (int l = 0; l < 4; ++l) out[j + l] = {re[l], im[l]};
  }
  if (j < m) scalar::trig_eval(c, count, first, theta + j, m - j, out + j);
}

cplx weighted_inner(const cplx* a, const cplx* b, const double* w, std::size_t n) {
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    const __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    const __m256d vb_sw = _mm256_permute_pd(vb, 0x5);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(va, vb), wv, acc1);
    acc2 = _mm256_fmadd_pd(_mm256_mul_pd(va, vb_sw), wv, acc2);
  }
  alignas(32) double t2[4];
  _mm256_store_pd(t2, acc2);
  cplx result{hsum(acc1), (t2[0] - t2[1]) + (t2[2] - t2[3])};
  if (i < n) result += scalar::weighted_inner(a + i, b + i, w + i, n - i);
  return result;
}

void mul(const cplx* a, const cplx* s, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul(load2(a + i), load2(s + i)));
  if (i < n) scalar::mul(a + i, s + i, out + i, n - i);
}

void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    store2(out + i, _mm256_fmsubadd_pd(va, b_re, _mm256_mul_pd(a_sw, b_im)));
  }
  if (i < n) scalar::mul_conj(a + i, b + i, out + i, n - i);
}

void scale_real(const cplx* a, const double* w, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    store2(out + i, _mm256_mul_pd(load2(a + i), wv));
  }
  if (i < n) scalar::scale_real(a + i, w + i, out + i, n - i);
}

}  // namespace phasefold::kernels::avx2
