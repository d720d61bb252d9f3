#include "phasefold/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace phasefold::fft {

namespace {

// FFTW planning is not thread-safe; execution on fresh arrays through fftw_execute_dft is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n0, n1, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = n0 * (n1 == 0 ? 1 : n1);
    std::vector<fftw_complex> scratch(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan =
        n1 == 0 ? fftw_plan_dft_1d(static_cast<int>(n0), scratch.data(), scratch.data(), sign, flags)
                : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), scratch.data(),
                                   scratch.data(), sign, flags);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<cplx> data, std::size_t n0, std::size_t n1, int sign) {
  if (data.empty()) return;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(n0, n1, sign), p, p);
}

}  // namespace

void forward(std::span<cplx> data) { run(data, data.size(), 0, FFTW_FORWARD); }
void inverse(std::span<cplx> data) { run(data, data.size(), 0, FFTW_BACKWARD); }
void forward_2d(std::span<cplx> data, std::size_t n0, std::size_t n1) {
  run(data, n0, n1, FFTW_FORWARD);
}
void inverse_2d(std::span<cplx> data, std::size_t n0, std::size_t n1) {
  run(data, n0, n1, FFTW_BACKWARD);
}

}  // namespace phasefold::fft
