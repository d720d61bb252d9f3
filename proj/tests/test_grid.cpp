#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasefold/errors.hpp"
#include "phasefold/fft.hpp"
#include "phasefold/grid.hpp"
#include "phasefold/quadrature.hpp"

using namespace phasefold;

namespace {

constexpr double kPi = std::numbers::pi;

ContinuousField gauss_field(const SpatialWindow& w, double x0 = 0.3, double xi0 = 1.5) {
  return ContinuousField::from_function(w, [&](double x) {
    return std::exp(-0.5 * (x - x0) * (x - x0)) * std::polar(1.0, x * xi0);
  });
}

}  // namespace

TEST_CASE("FFT round trip") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (std::size_t n : {8u, 64u, 1000u, 4096u}) {
    std::vector<cplx> a(n);
    for (auto& z : a) z = {g(rng), g(rng)};
    auto b = a;
    fft::forward(b);
    fft::inverse(b);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(b[i] / static_cast<double>(n) - a[i]));
    CHECK(err < 1e-12);
  }
  std::vector<cplx> a(16 * 32);
  for (auto& z : a) z = {g(rng), g(rng)};
  auto b = a;
  fft::forward_2d(b, 16, 32);
  fft::inverse_2d(b, 16, 32);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] / 512.0 - a[i]) < 1e-12);
}

TEST_CASE("FFT matches a direct DFT") {
  const std::size_t n = 12;
  std::vector<cplx> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = {std::cos(0.3 * i), std::sin(1.1 * i)};
  auto b = a;
  fft::forward(b);
  for (std::size_t k = 0; k < n; ++k) {
    cplx ref = 0.0;
    for (std::size_t j = 0; j < n; ++j) ref += a[j] * std::polar(1.0, -2.0 * kPi * double(j * k) / double(n));
    CHECK(std::abs(b[k] - ref) < 1e-12);
  }
}

TEST_CASE("window geometry") {
  const SpatialWindow w(1, 4.0, 64);
  CHECK(w.dx() == doctest::Approx(0.125));
  CHECK(w.node(0) == doctest::Approx(-4.0));
  CHECK(w.freq(32) == 0.0);
  CHECK(w.freq(33) == doctest::Approx(kPi / 4.0));
  CHECK(w.max_freq() == doctest::Approx(8.0 * kPi));
  CHECK_THROWS_AS(SpatialWindow(3, 1.0, 8), BadParams);
  CHECK_THROWS_AS(SpatialWindow(1, -1.0, 8), BadParams);
  CHECK_THROWS_AS(ContinuousField(w, std::vector<cplx>(5)), BadParams);
}

TEST_CASE("spectrum samples the continuous Fourier transform") {
  const SpatialWindow w(1, 16.0, 512);
  const auto u = gauss_field(w);
  const auto spec = u.spectrum();
  double err = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double xi = w.freq(i);
    const double t = xi - 1.5;
    const cplx ref = std::sqrt(2.0 * kPi) * std::exp(-0.5 * t * t) * std::polar(1.0, -t * 0.3);
    err = std::max(err, std::abs(spec[i] - ref));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("Parseval on the window") {
  const SpatialWindow w(1, 12.0, 256);
  const auto u = gauss_field(w);
  double spec_mass = 0.0;
  for (const auto& s : u.spectrum()) spec_mass += std::norm(s);
  spec_mass *= w.dual_cell_volume();
  CHECK(std::abs(u.norm() * u.norm() - spec_mass) < 1e-8);
  // ||u||^2 = sqrt(pi) for exp(-x^2/2).
  CHECK(u.norm() * u.norm() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
}

TEST_CASE("spectrum round trip and zero-padding") {
  const SpatialWindow w(1, 12.0, 128);
  const auto u = gauss_field(w);
  const auto back = ContinuousField::from_spectrum(w, std::vector<cplx>(u.spectrum().begin(), u.spectrum().end()));
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(back.values()[i] - u.values()[i]) < 1e-12);
  // Padding the spectrum with zeros evaluates the same trigonometric interpolant on a finer grid.
  const SpatialWindow fine(1, 12.0, 256);
  std::vector<cplx> padded(256);
  for (std::size_t i = 0; i < 128; ++i) padded[i + 64] = u.spectrum()[i];
  const auto uf = ContinuousField::from_spectrum(fine, padded);
  for (std::size_t i = 0; i < 256; i += 2) CHECK(std::abs(uf.values()[i] - u.values()[i / 2]) < 1e-12);
  const auto ev = u.evaluate(std::vector<double>{fine.node(3), fine.node(101)});
  CHECK(std::abs(ev[0] - uf.values()[3]) < 1e-10);
  CHECK(std::abs(ev[1] - uf.values()[101]) < 1e-10);
}

TEST_CASE("2-D fields") {
  const SpatialWindow w(2, 8.0, 64);
  const auto u = ContinuousField::from_function2(w, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
  CHECK(u.norm() * u.norm() == doctest::Approx(kPi).epsilon(1e-10));
  const auto spec = u.spectrum();
  const std::size_t n = 64;
  for (std::size_t i : {20u, 32u, 40u}) {
    for (std::size_t j : {28u, 32u, 35u}) {
      const double a = w.freq(i), b = w.freq(j);
      CHECK(std::abs(spec[i * n + j] - 2.0 * kPi * std::exp(-0.5 * (a * a + b * b))) < 1e-10);
    }
  }
}

TEST_CASE("Fourier multipliers") {
  const SpatialWindow w(1, 12.0, 256);
  const auto u = gauss_field(w);
  const auto same = fourier_multiplier(u, [](const Vec2&) { return cplx(1.0); }, 1.0);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(same.values()[i] - u.values()[i]) < 1e-12);
  // <D>^{2} u = u - u'' for the Gaussian.
  const auto g = ContinuousField::from_function(w, [](double x) { return std::exp(-0.5 * x * x); });
  const auto b = bessel_multiplier(g, 2.0, 1.0);
  for (std::size_t i = 100; i < 160; i += 7) {
    const double x = w.node(i);
    CHECK(std::abs(b.values()[i] - (2.0 - x * x) * std::exp(-0.5 * x * x)) < 1e-10);
  }
  CHECK(japanese(0.0) == 1.0);
  CHECK(japanese(Vec2{3.0, 4.0}, 2) == doctest::Approx(std::sqrt(26.0)));
}

TEST_CASE("outer mass and spectral edge diagnostics") {
  const SpatialWindow w(1, 16.0, 512);
  const auto u = gauss_field(w, 0.0, 0.0);
  CHECK(u.outer_mass_fraction() < 1e-20);
  CHECK(u.spectral_edge_fraction() < 1e-20);
  const auto far = gauss_field(w, 12.0, 0.0);
  CHECK(far.outer_mass_fraction() > 0.9);
}

TEST_CASE("discrete fields: DTFT and Parseval") {
  std::vector<cplx> v{{1, 0}, {0, 2}, {-1, 1}, {0.5, 0}};
  const DiscreteField u(0.25, -2, v);
  CHECK(u.node(0) == doctest::Approx(-0.5));
  CHECK(u.norm() == doctest::Approx(std::sqrt(0.25 * (1 + 4 + 2 + 0.25))));
  for (double xi : {0.0, 0.7, -2.9, 10.0}) {
    cplx ref = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) ref += v[n] * std::polar(1.0, -double(long(n) - 2) * xi);
    CHECK(std::abs(u.dft(xi) - ref) < 1e-13);
    CHECK(std::abs(dft_of_discrete(u, xi) - ref) < 1e-13);
  }
  // ||U||_h^2 = (h / 2 pi) int_Q |U-hat|^2.
  const auto& rule = quad::gauss_legendre(64);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) integral += rule.weights[i] * std::norm(u.dft(kPi * rule.nodes[i]));
  integral *= kPi;
  CHECK(0.25 / (2.0 * kPi) * integral == doctest::Approx(u.norm() * u.norm()).epsilon(1e-12));
  const auto grid = u.dft_grid(8);
  for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(grid[j] - u.dft(2.0 * kPi * double(j) / 8.0)) < 1e-12);
  const auto many = u.dft_many(std::vector<double>{0.1, 0.2});
  CHECK(std::abs(many[1] - u.dft(0.2)) < 1e-14);
}

TEST_CASE("2-D discrete fields") {
  std::vector<cplx> v(6);
  for (std::size_t i = 0; i < 6; ++i) v[i] = cplx(double(i), 1.0);
  const DiscreteField u(0.5, {-1, 2}, {2, 3}, v);
  const Vec2 xi{0.4, -1.3};
  cplx ref = 0.0;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      ref += v[a * 3 + b] * std::polar(1.0, -(double(-1 + long(a)) * xi[0] + double(2 + long(b)) * xi[1]));
    }
  }
  CHECK(std::abs(u.dft(xi) - ref) < 1e-13);
  CHECK_THROWS_AS(DiscreteField(0.5, {0, 0}, {2, 2}, std::vector<cplx>(3)), BadParams);
}

TEST_CASE("angle reduction and helpers") {
  CHECK(reduce_angle(3.0 * kPi + 0.5) == doctest::Approx(-kPi + 0.5));
  CHECK(std::abs(reduce_angle(0.25)) == doctest::Approx(0.25));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(1000));
}

TEST_CASE("Gauss-Legendre and composite quadrature") {
  for (int n : {2, 5, 16}) {
    const auto& r = quad::gauss_legendre(n);
    // Exact for degree 2n - 1.
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
    CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
  const std::vector<double> breaks{0.5};
  const double v = quad::composite(quad::RealFn([](double x) { return std::abs(x - 0.5); }), 0.0, 2.0, breaks, 4, 0.5);
  CHECK(v == doctest::Approx(0.125 + 1.125).epsilon(1e-14));
  CHECK(quad::adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12) == doctest::Approx(2.0).epsilon(1e-11));
  const auto pb = quad::periodic_breaks(0.0, 10.0, std::vector<double>{1.0}, 3.0);
  CHECK(pb == std::vector<double>{1.0, 4.0, 7.0});
}
