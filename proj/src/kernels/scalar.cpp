#include "phasefold/kernels.hpp"

#include <cmath>
#include <numbers>

namespace phasefold::kernels {

cplx unit_phase(long k, double theta) {
  const double kd = static_cast<double>(k);
  const double a = kd * theta;
  const double residual = std::fma(kd, theta, -a);
  const double reduced = std::remainder(a, 2.0 * std::numbers::pi) + residual;
  return {std::cos(reduced), -std::sin(reduced)};
}

namespace scalar {

void trig_eval(const cplx* c, std::size_t count, long first, const double* theta, std::size_t m,
               cplx* out) {
  for (std::size_t j = 0; j < m; ++j) {
    const cplx step = unit_phase(1, theta[j]);
    double acc_re = 0.0;
    double acc_im = 0.0;
    std::size_t n = 0;
    while (n < count) {
      cplx z = unit_phase(first + static_cast<long>(n), theta[j]);
      const std::size_t stop = std::min(count, n + kReseedInterval);
      for (; n < stop; ++n) {
        acc_re += c[n].real() * z.real() - c[n].imag() * z.imag();
        acc_im += c[n].real() * z.imag() + c[n].imag() * z.real();
        z = {z.real() * step.real() - z.imag() * step.imag(),
             z.real() * step.imag() + z.imag() * step.real()};
      }
    }
    out[j] = {acc_re, acc_im};
  }
}

cplx weighted_inner(const cplx* a, const cplx* b, const double* w, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += (a[i].real() * b[i].real() + a[i].imag() * b[i].imag()) * w[i];
    im += (a[i].real() * b[i].imag() - a[i].imag() * b[i].real()) * w[i];
  }
  return {re, im};
}

void mul(const cplx* a, const cplx* s, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {a[i].real() * s[i].real() - a[i].imag() * s[i].imag(),
              a[i].real() * s[i].imag() + a[i].imag() * s[i].real()};
  }
}

void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {a[i].real() * b[i].real() + a[i].imag() * b[i].imag(),
              a[i].imag() * b[i].real() - a[i].real() * b[i].imag()};
  }
}

void scale_real(const cplx* a, const double* w, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * w[i];
}

}  // namespace scalar
}  // namespace phasefold::kernels
