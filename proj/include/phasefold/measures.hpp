#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phasefold/profiles.hpp"
#include "phasefold/testfn.hpp"

namespace phasefold {

// x-factors of product measures (1-D).
//   point      weight * delta_{x0}
//   gauss2     weight * |rho|^2 with rho = (pi s^2)^{-1/4} e^{-(x-x0)^2/(2 s^2)}   (mass 1)
//   sinc2      weight * sin^2(x-x0) / (pi^2 (x-x0)^2)                             (mass 1/pi)
//   sinc2half  weight * sin^2((x-x0)/2) / (pi^2 (x-x0)^2)                         (mass 1/(2 pi))
enum class XKind { point, gauss2, sinc2, sinc2half };

struct XFactor {
  XKind kind = XKind::point;
  double x0 = 0.0;
  double weight = 1.0;
  double sigma = 1.0;

  bool singular() const { return kind == XKind::point; }
  double density(double x) const;
  double mass() const;
  std::string describe() const;
};

// A multiplicative weight on the xi variable: |phi-hat(xi)|^2, or tau_{<D>^s phi}(xi), or <xi>^{2s}.
struct XiWeight {
  enum class Kind { fourier_sq, tau, bessel } kind = Kind::fourier_sq;
  Profile profile = Profile::sinc();
  double s = 0.0;
  double operator()(double xi) const;
};

// xi-factors:
//   point     weight * delta_{xi0}
//   comb      sum_n w(xi0 + 2 pi n) delta_{xi0 + 2 pi n}, w(xi) = weight * prod(base)(xi0) * prod(weights)(xi)
//   density   weight * prod(weights)(xi) * g(xi), g = sigma e^{-sigma^2 (xi - xi0)^2} / sqrt(pi)
//   periodic  weight * prod(weights)(xi) * sum_n (g * prod(base))(xi + 2 pi n)
// Every factor is read through the change of variables xi -> scale * xi (see scale_change).
enum class XiKind { point, comb, density, periodic };

struct XiFactor {
  XiKind kind = XiKind::point;
  double xi0 = 0.0;
  double weight = 1.0;
  double sigma = 1.0;
  std::vector<XiWeight> base;     // evaluated at xi0 (point, comb) or before folding (periodic)
  std::vector<XiWeight> weights;  // evaluated at the current xi
  double scale = 1.0;

  double weight_at(double xi) const;
  double base_density(double xi) const;
  // Nodes within [lo, hi] for combs, the atom for points.
  std::vector<double> nodes(double lo, double hi) const;
  bool summable() const;
  std::string describe() const;
};

struct MeasureTerm {
  double coeff = 1.0;
  XFactor x;
  XiFactor xi;
};

struct PredictedMeasure {
  std::vector<MeasureTerm> terms;
  std::string describe() const;
  bool empty() const { return terms.empty(); }
};

// A positive measure in x alone.
struct XMeasure {
  std::vector<std::pair<double, XFactor>> terms;
  double mass() const;
  double pair(const Factor& phi) const;
};

enum class Regime { h_eq_e, h_ll_e };
std::string_view regime_name(Regime r);

double pair_x(const XFactor& x, const Factor& phi);
double pair_xi(const XiFactor& xi, const Factor& chi);
double pair_predicted(const PredictedMeasure& mu, const TestFunction& a);

// Gate checks; both throw with the offending atom or pair of atoms in the message.
void check_nd(const PredictedMeasure& mu, const Profile& phi, Regime regime);
void check_ms(const PredictedMeasure& mu, const Profile& phi);

// mu_phi = |phi-hat(xi)|^2 mu (h = eps) or |phi-hat(0)|^2 mu (h << eps).
PredictedMeasure apply_reconstruction(const PredictedMeasure& mu, const Profile& phi, Regime regime,
                                      bool enforce_gates = true);
// mu^phi = sum_n |phi-hat(xi + 2 pi n)|^2 mu(x, xi + 2 pi n) (h = eps) or |phi-hat(0)|^2 mu.
PredictedMeasure apply_sampling(const PredictedMeasure& mu, const Profile& phi, Regime regime,
                                bool enforce_gates = true);
PredictedMeasure apply_composition(const PredictedMeasure& mu, const Profile& phi, const Profile& psi,
                                   Regime regime, bool enforce_gates = true);

// nu = int_xi c(xi) d mu(x, xi) with c = tau_{<D>^{s'} psi}(xi) |phi-hat(xi)|^2 (h = eps), or
// c = tau_{<D>^{s'} psi}(0) |phi-hat(0)|^2 (h << eps).
XMeasure defect_from_wigner(const PredictedMeasure& mu, const Profile& phi, const Profile& psi,
                            double s_prime, Regime regime);
XMeasure x_marginal(const PredictedMeasure& mu);

// sum_n <xi + 2 pi n>^{2s} mu(x, xi + 2 pi n).
PredictedMeasure periodize_xi(const PredictedMeasure& mu, double s);
// mu_c(x, xi) = c mu(x, c xi).
PredictedMeasure scale_change(const PredictedMeasure& mu, double c);

enum class ExampleKind { concentrating, oscillating };
enum class ScaleRegime { finer, matched, coarser };  // eps k -> 0, eps = 1/k, eps k -> infinity
// rho = unit-norm Gaussian of width sigma; `center` is x0 (concentrating) or xi0 (oscillating).
PredictedMeasure canonical_example(ExampleKind kind, ScaleRegime regime, double center, double sigma = 1.0);

// Mini-language: terms "pm:x=<xf>*xi=<kf>" joined by " + ", each optionally prefixed "c*".
//   xf: point(x0[,w]) | gauss2(x0[,s]) | sinc2(x0) | sinc2half(x0)
//   kf: point(xi0[,w]) | comb(xi0[,w]) | gauss2hat(xi0[,s]) | zero
PredictedMeasure parse_measure(std::string_view spec);

}  // namespace phasefold
