#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace phasefold::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

// out[j] = sum_{n<count} c[n] * exp(-i (first + n) theta[j])
using TrigEvalFn = void (*)(const cplx* c, std::size_t count, long first, const double* theta,
                            std::size_t m, cplx* out);
// sum_i conj(a[i]) b[i] w[i]
using WeightedInnerFn = cplx (*)(const cplx* a, const cplx* b, const double* w, std::size_t n);
// out[i] = a[i] * s[i]
using MulFn = void (*)(const cplx* a, const cplx* s, cplx* out, std::size_t n);
// out[i] = a[i] * conj(b[i])
using MulConjFn = void (*)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
// out[i] = a[i] * w[i]
using ScaleRealFn = void (*)(const cplx* a, const double* w, cplx* out, std::size_t n);

struct KernelTable {
  Isa isa;
  TrigEvalFn trig_eval;
  WeightedInnerFn weighted_inner;
  MulFn mul;
  MulConjFn mul_conj;
  ScaleRealFn scale_real;
};

namespace scalar {
void trig_eval(const cplx* c, std::size_t count, long first, const double* theta, std::size_t m,
               cplx* out);
cplx weighted_inner(const cplx* a, const cplx* b, const double* w, std::size_t n);
void mul(const cplx* a, const cplx* s, cplx* out, std::size_t n);
void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void scale_real(const cplx* a, const double* w, cplx* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
void trig_eval(const cplx* c, std::size_t count, long first, const double* theta, std::size_t m,
               cplx* out);
cplx weighted_inner(const cplx* a, const cplx* b, const double* w, std::size_t n);
void mul(const cplx* a, const cplx* s, cplx* out, std::size_t n);
void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void scale_real(const cplx* a, const double* w, cplx* out, std::size_t n);
}  // namespace avx2

namespace neon {
void trig_eval(const cplx* c, std::size_t count, long first, const double* theta, std::size_t m,
               cplx* out);
cplx weighted_inner(const cplx* a, const cplx* b, const double* w, std::size_t n);
void mul(const cplx* a, const cplx* s, cplx* out, std::size_t n);
void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void scale_real(const cplx* a, const double* w, cplx* out, std::size_t n);
}  // namespace neon

bool isa_available(Isa isa);
const KernelTable& table_for(Isa isa);

// Best available ISA, unless PHASEFOLD_ISA=scalar|avx2|neon is set or force_isa was called.
const KernelTable& active();
void force_isa(Isa isa);

// Exact phase seed exp(-i k theta), with the angle reduced before evaluation.
cplx unit_phase(long k, double theta);

inline constexpr std::size_t kReseedInterval = 64;

}  // namespace phasefold::kernels
