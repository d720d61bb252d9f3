#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace phasefold::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points, computed once per n and cached.
const Rule& gauss_legendre(int n);

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// Composite Gauss-Legendre over the panels delimited by sorted breakpoints in [a, b],
// with each panel further split so no piece is wider than max_width.
double composite(const RealFn& f, double a, double b, std::span<const double> breaks, int order,
                 double max_width);
std::complex<double> composite(const ComplexFn& f, double a, double b,
                               std::span<const double> breaks, int order, double max_width);

// Recursive bisection comparing a panel against its two halves.
double adaptive(const RealFn& f, double a, double b, double tol, int order = 16, int max_depth = 40);

// Breakpoints p, p + period, ... falling strictly inside (a, b), merged with extra points and sorted.
std::vector<double> periodic_breaks(double a, double b, std::span<const double> base, double period);

}  // namespace phasefold::quad
