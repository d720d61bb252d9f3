#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "phasefold/kernels.hpp"

using namespace phasefold;
using kernels::cplx;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

std::vector<double> random_real(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<kernels::Isa> available() {
  std::vector<kernels::Isa> out;
  for (auto isa : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
    if (kernels::isa_available(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar kernel is always available") {
  CHECK(kernels::isa_available(kernels::Isa::scalar));
  CHECK(kernels::table_for(kernels::Isa::scalar).isa == kernels::Isa::scalar);
}

TEST_CASE("trig_eval matches direct exponential sums") {
  std::mt19937_64 rng(11);
  for (auto isa : available()) {
    CAPTURE(kernels::isa_name(isa));
    const auto& k = kernels::table_for(isa);
    for (std::size_t count : {1u, 3u, 17u, 200u}) {
      const auto c = random_complex(count, rng);
      auto theta = random_real(13, rng);
      theta.push_back(0.0);
      theta.push_back(std::numbers::pi);
      std::vector<cplx> out(theta.size());
      const long first = -static_cast<long>(count / 2) - 3;
      k.trig_eval(c.data(), count, first, theta.data(), theta.size(), out.data());
      for (std::size_t j = 0; j < theta.size(); ++j) {
        cplx ref = 0.0;
        for (std::size_t n = 0; n < count; ++n) {
          ref += c[n] * std::polar(1.0, -static_cast<double>(first + static_cast<long>(n)) * theta[j]);
        }
        CHECK(std::abs(out[j] - ref) <= 1e-11 * (1.0 + std::abs(ref)) * std::sqrt(static_cast<double>(count)));
      }
    }
  }
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  std::mt19937_64 rng(7);
  const auto& ref = kernels::table_for(kernels::Isa::scalar);
  for (auto isa : available()) {
    CAPTURE(kernels::isa_name(isa));
    const auto& k = kernels::table_for(isa);
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 31u, 64u, 1001u}) {
      CAPTURE(n);
      const auto a = random_complex(n, rng);
      const auto b = random_complex(n, rng);
      const auto w = random_real(n, rng);
      const cplx x = k.weighted_inner(a.data(), b.data(), w.data(), n);
      const cplx y = ref.weighted_inner(a.data(), b.data(), w.data(), n);
      CHECK(std::abs(x - y) <= 1e-12 * (1.0 + static_cast<double>(n)));

      std::vector<cplx> o1(n), o2(n);
      k.mul(a.data(), b.data(), o1.data(), n);
      ref.mul(a.data(), b.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-14 * (1.0 + std::abs(o2[i])));
      k.mul_conj(a.data(), b.data(), o1.data(), n);
      ref.mul_conj(a.data(), b.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-14 * (1.0 + std::abs(o2[i])));
      k.scale_real(a.data(), w.data(), o1.data(), n);
      ref.scale_real(a.data(), w.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == o2[i]);

      const std::vector<double> theta = random_real(9, rng);
      std::vector<cplx> t1(theta.size()), t2(theta.size());
      k.trig_eval(a.data(), n, -40, theta.data(), theta.size(), t1.data());
      ref.trig_eval(a.data(), n, -40, theta.data(), theta.size(), t2.data());
      for (std::size_t i = 0; i < theta.size(); ++i) CHECK(std::abs(t1[i] - t2[i]) <= 1e-11 * (1.0 + std::abs(t2[i])));
    }
  }
}

TEST_CASE("weighted_inner conjugates its first argument") {
  const std::vector<cplx> a{{0.0, 1.0}};
  const std::vector<cplx> b{{0.0, 1.0}};
  const std::vector<double> w{2.0};
  for (auto isa : available()) {
    const cplx v = kernels::table_for(isa).weighted_inner(a.data(), b.data(), w.data(), 1);
    CHECK(v.real() == doctest::Approx(2.0));
    CHECK(v.imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("unit_phase is accurate for large indices") {
  for (long k : {0L, 1L, -7L, 123456L, -9876543L}) {
    for (double theta : {0.1, 1.0, 3.0, -2.5}) {
      const cplx v = kernels::unit_phase(k, theta);
      const double angle = std::fmod(static_cast<double>(k) * theta, 2.0 * std::numbers::pi);
      CHECK(std::abs(v - std::polar(1.0, -angle)) < 1e-8);
      CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("force_isa selects the dispatched table") {
  const auto before = kernels::active().isa;
  kernels::force_isa(kernels::Isa::scalar);
  CHECK(kernels::active().isa == kernels::Isa::scalar);
  kernels::force_isa(before);
  CHECK(kernels::active().isa == before);
}
