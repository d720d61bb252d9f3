#include <cmath>
#include <numbers>

#include "phasefold/errors.hpp"
#include "phasefold/experiments.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double unit_gaussian(double x, double sigma) {
  return std::pow(kPi * sigma * sigma, -0.25) * std::exp(-0.5 * x * x / (sigma * sigma));
}

// (1/2pi) int_a^b e^{i x xi} d xi
cplx band_kernel(double x, double a, double b) {
  if (std::abs(x) < 1e-12) return cplx{(b - a) / kTwoPi, 0.0};
  return (std::exp(cplx{0.0, x * b}) - std::exp(cplx{0.0, x * a})) / (cplx{0.0, kTwoPi * x});
}

}  // namespace

std::vector<std::string> family_names() {
  return {"zero", "concentrating", "oscillating", "counterexample-1", "counterexample-2",
          "counterexample-3", "ce-osc"};
}

SequenceFamily make_family(std::string_view name, const FamilyParams& params) {
  if (!(params.sigma > 0.0) || !std::isfinite(params.x0) || !std::isfinite(params.xi0)) {
    throw BadParams("family parameters need sigma > 0 and finite x0, xi0");
  }
  if (params.half_length < 0.0) throw BadParams("half_length must be non-negative");
  SequenceFamily f{FamilyKind::zero, std::string(name), params};
  if (name == "zero") {
    f.kind = FamilyKind::zero;
  } else if (name == "concentrating") {
    f.kind = FamilyKind::concentrating;
  } else if (name == "oscillating") {
    f.kind = FamilyKind::oscillating;
  } else if (name == "counterexample-1") {
    f.kind = FamilyKind::counterexample1;
  } else if (name == "counterexample-2") {
    f.kind = FamilyKind::counterexample2;
  } else if (name == "counterexample-3") {
    f.kind = FamilyKind::counterexample3;
  } else if (name == "ce-osc") {
    f.kind = FamilyKind::ce_osc;
  } else {
    std::string all;
    for (const auto& n : family_names()) all += " " + n;
    throw BadParams("unknown family '" + std::string(name) + "'; known:" + all);
  }
  return f;
}

double SequenceFamily::default_half_length() const {
  if (params.half_length > 0.0) return params.half_length;
  switch (kind) {
    case FamilyKind::concentrating: return std::abs(params.x0) + 4.0 * std::max(1.0, params.sigma);
    case FamilyKind::oscillating: return std::abs(params.x0) + 16.0 * params.sigma;
    case FamilyKind::counterexample1:
    case FamilyKind::counterexample2:
    case FamilyKind::counterexample3: return 32.0;
    default: return 8.0;
  }
}

double SequenceFamily::max_frequency(int k, double h) const {
  const double kk = static_cast<double>(k);
  switch (kind) {
    case FamilyKind::zero: return 1.0;
    case FamilyKind::concentrating: return 6.0 * kk / params.sigma;
    case FamilyKind::oscillating: return kk * std::abs(params.xi0) + 6.0 / params.sigma;
    case FamilyKind::counterexample2: return kPi / h + 1.0;
    case FamilyKind::counterexample3: return kPi / h;
    default: return kPi / h;
  }
}

StageValue SequenceFamily::generate(int k, double h, const SpatialWindow& window) const {
  StageValue out;
  const double kk = static_cast<double>(k);
  const double s = params.sigma;
  const double x0 = params.x0;
  const double xi0 = params.xi0;
  switch (kind) {
    case FamilyKind::zero:
      out.field = ContinuousField(window, std::vector<cplx>(window.size()));
      break;
    case FamilyKind::concentrating:
      // f_k(x) = k^{1/2} rho(k (x - x0))
      out.field = ContinuousField::from_function(
          window, [=](double x) { return cplx{std::sqrt(kk) * unit_gaussian(kk * (x - x0), s), 0.0}; });
      break;
    case FamilyKind::oscillating:
      // g_k(x) = rho(x - x0) e^{i k x xi0}
      out.field = ContinuousField::from_function(window, [=](double x) {
        return unit_gaussian(x - x0, s) * std::exp(cplx{0.0, kk * xi0 * x});
      });
      break;
    case FamilyKind::counterexample2:
      // v-hat = 1_{(-1,1)}(xi + pi/h)
      out.field = ContinuousField::from_function(window, [=](double x) { return band_kernel(x, -kPi / h - 1.0, -kPi / h + 1.0); });
      break;
    case FamilyKind::counterexample3:
      // v-hat = 1_Q(h xi) [1_{(-1,1)}(xi - pi/h) + 1_{(-1,1)}(xi + pi/h)]
      out.field = ContinuousField::from_function(window, [=](double x) {
        return band_kernel(x, kPi / h - 1.0, kPi / h) + band_kernel(x, -kPi / h, -kPi / h + 1.0);
      });
      break;
    case FamilyKind::counterexample1:
    case FamilyKind::ce_osc: {
      if (window.dim() != 1) throw BadParams("discrete families are 1-D");
      const auto [first, count] = sample_index_range(window.half_length(), h);
      std::vector<cplx> values(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double n = static_cast<double>(first + static_cast<long>(i));
        if (kind == FamilyKind::counterexample1) {
          // U-hat = h^{-1} on |xi - pi| < h (mod 2 pi)
          const double sign = (first + static_cast<long>(i)) % 2 == 0 ? 1.0 : -1.0;
          values[i] = n == 0.0 ? cplx{1.0 / kPi, 0.0} : cplx{sign * std::sin(n * h) / (kPi * n * h), 0.0};
        } else {
          // U-hat = h^{-1} on (0, h) (mod 2 pi)
          values[i] = n == 0.0 ? cplx{1.0 / kTwoPi, 0.0}
                               : (std::exp(cplx{0.0, n * h}) - 1.0) / cplx{0.0, kTwoPi * n * h};
        }
      }
      out.discrete = DiscreteField(h, first, std::move(values));
      break;
    }
  }
  return out;
}

PeriodicSpectrum SequenceFamily::discrete_spectrum(double h) const {
  PeriodicSpectrum s;
  if (kind == FamilyKind::counterexample1) {
    s.value = [h](double xi) {
      return std::abs(reduce_angle(xi)) > kPi - h ? cplx{1.0 / h, 0.0} : cplx{};
    };
    s.breakpoints = {-kPi + h, kPi - h};
  } else if (kind == FamilyKind::ce_osc) {
    s.value = [h](double xi) {
      const double r = reduce_angle(xi);
      return r > 0.0 && r < h ? cplx{1.0 / h, 0.0} : cplx{};
    };
    s.breakpoints = {0.0, h};
  } else {
    throw BadParams("family '" + name + "' has no closed-form discrete spectrum");
  }
  return s;
}

}  // namespace phasefold
