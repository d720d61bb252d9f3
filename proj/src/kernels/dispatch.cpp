#include <atomic>
#include <cstdlib>
#include <string>

#include "phasefold/errors.hpp"
#include "phasefold/kernels.hpp"

namespace phasefold::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, scalar::trig_eval, scalar::weighted_inner, scalar::mul,
                              scalar::mul_conj, scalar::scale_real};
#ifdef PHASEFOLD_HAVE_AVX2
constexpr KernelTable kAvx2{Isa::avx2, avx2::trig_eval, avx2::weighted_inner, avx2::mul,
                            avx2::mul_conj, avx2::scale_real};
#endif
#ifdef PHASEFOLD_HAVE_NEON
constexpr KernelTable kNeon{Isa::neon, neon::trig_eval, neon::weighted_inner, neon::mul,
                            neon::mul_conj, neon::scale_real};
#endif

Isa best_available() {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("PHASEFOLD_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    if (v == "neon" && isa_available(Isa::neon)) return Isa::neon;
  }
  return best_available();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table_for(initial_isa())};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(PHASEFOLD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#ifdef PHASEFOLD_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_available(isa)) {
    throw BadParams("kernel ISA not available on this machine: " + std::string(isa_name(isa)));
  }
  switch (isa) {
#ifdef PHASEFOLD_HAVE_AVX2
    case Isa::avx2: return kAvx2;
#endif
#ifdef PHASEFOLD_HAVE_NEON
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void force_isa(Isa isa) { active_slot().store(&table_for(isa), std::memory_order_release); }

}  // namespace phasefold::kernels
