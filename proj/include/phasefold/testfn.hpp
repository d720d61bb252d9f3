#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasefold/grid.hpp"

namespace phasefold {

enum class FactorKind { gauss, bump, flat, one, hermite };

// amplitude * base((t - center) / width), with
//   gauss    e^{-t^2/2}
//   bump     (1 + cos(pi t)) / 2 on |t| < 1
//   flat     1 on |t - c| <= width, raised-cosine taper of length `taper` beyond it
//   one      1
//   hermite  t^degree e^{-t^2/2}
struct Factor {
  FactorKind kind = FactorKind::one;
  double center = 0.0;
  double width = 1.0;
  double taper = 0.0;
  int degree = 0;
  double amplitude = 1.0;

  static Factor gauss(double center, double width);
  static Factor bump(double center, double width);
  static Factor flat(double center, double width, double taper);
  static Factor one();
  static Factor hermite(double center, double width, int degree);

  double operator()(double t) const;
  bool compact() const { return kind == FactorKind::bump || kind == FactorKind::flat; }
  std::optional<std::pair<double, double>> support() const;
  // Interval outside of which |f| < tol * amplitude; infinite for `one`.
  std::pair<double, double> effective_support(double tol = 1e-13) const;
  // Points where f is not smooth.
  std::vector<double> breakpoints() const;

  // t -> f(a t + b).
  Factor affine(double a, double b) const;
  Factor translated(double d) const { return affine(1.0, -d); }
  std::string describe() const;
};

struct TestTerm {
  double coeff = 1.0;
  std::vector<Factor> x;   // one factor per axis
  std::vector<Factor> xi;  // one factor per axis
};

// Finite sum of separable test functions a(x, xi) = sum_i c_i phi_i(x) chi_i(xi).
struct TestFunction {
  int dim = 1;
  std::vector<TestTerm> terms;

  static TestFunction separable(const Factor& x, const Factor& xi, double coeff = 1.0);
  static TestFunction separable2(const Factor& x1, const Factor& x2, const Factor& xi1,
                                 const Factor& xi2, double coeff = 1.0);

  double operator()(double x, double xi) const;
  std::string describe() const;
};

double x_part(const TestTerm& t, const Vec2& x, int dim);
double xi_part(const TestTerm& t, const Vec2& xi, int dim);

// Parses e.g. "gauss_x:0,1 x gauss_xi:2,0.25" or "0.5*bump_x:0,2 x flat_xi:2,0.5,0.25 + ...".
// Per-axis factors of a 2-D term are joined by '&'.
TestFunction parse_test_function(std::string_view spec);
Factor parse_factor(std::string_view spec, char variable);

}  // namespace phasefold
