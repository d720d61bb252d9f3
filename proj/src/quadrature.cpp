#include "phasefold/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "phasefold/errors.hpp"

namespace phasefold::quad {

namespace {

Rule build_rule(int n) {
  Rule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

template <typename T, typename F>
T panel(const F& f, double a, double b, const Rule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T s{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

template <typename T, typename F>
T composite_impl(const F& f, double a, double b, std::span<const double> breaks, int order,
                 double max_width) {
  if (!(b > a)) return T{};
  const Rule& rule = gauss_legendre(order);
  std::vector<double> pts{a};
  for (double p : breaks) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  T total{};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i];
    const double hi = pts[i + 1];
    if (!(hi > lo)) continue;
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_width)));
    const double w = (hi - lo) / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      total += panel<T>(f, lo + k * w, (k + 1 == pieces) ? hi : lo + (k + 1) * w, rule);
    }
  }
  return total;
}

double adaptive_step(const RealFn& f, double a, double b, double whole, double tol, const Rule& rule,
                     int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel<double>(f, a, mid, rule);
  const double right = panel<double>(f, mid, b, rule);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive_step(f, a, mid, left, 0.5 * tol, rule, depth - 1) +
         adaptive_step(f, mid, b, right, 0.5 * tol, rule, depth - 1);
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw BadParams("Gauss-Legendre order out of range");
  static std::mutex mutex;
  static std::map<int, Rule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, build_rule(n)).first;
  return it->second;
}

double composite(const RealFn& f, double a, double b, std::span<const double> breaks, int order,
                 double max_width) {
  return composite_impl<double>(f, a, b, breaks, order, max_width);
}

std::complex<double> composite(const ComplexFn& f, double a, double b,
                               std::span<const double> breaks, int order, double max_width) {
  return composite_impl<std::complex<double>>(f, a, b, breaks, order, max_width);
}

double adaptive(const RealFn& f, double a, double b, double tol, int order, int max_depth) {
  if (!(b > a)) return 0.0;
  const Rule& rule = gauss_legendre(order);
  return adaptive_step(f, a, b, panel<double>(f, a, b, rule), tol, rule, max_depth);
}

std::vector<double> periodic_breaks(double a, double b, std::span<const double> base, double period) {
  std::vector<double> out;
  for (double p : base) {
    const double start = p + period * std::ceil((a - p) / period);
    for (double q = start; q < b; q += period) {
      if (q > a) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace phasefold::quad
