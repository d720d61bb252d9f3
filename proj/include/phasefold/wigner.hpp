#pragma once

#include <functional>
#include <vector>

#include "phasefold/grid.hpp"
#include "phasefold/profiles.hpp"
#include "phasefold/testfn.hpp"

namespace phasefold {

// <m^eps[u], a> = sum_i c_i int conj(u) phi_i (chi_i(eps D) u) dx.
cplx pair_m(const ContinuousField& u, double eps, const TestFunction& a);

// <M^eps[U], a> = h^d sum_m conj(U_m) phi(h m) V_m with
// V_m = (2 pi)^{-d} int U-hat(eta) chi(eps eta / h) e^{i m eta} d eta.
// chi factors must have bounded effective support; throws RatioTooLarge when h / eps > 4.
cplx pair_M(const DiscreteField& u, double eps, const TestFunction& a);

// Values on an x-grid times xi-grid, row-major with xi fastest.
struct PhaseSpaceField {
  std::vector<double> xs;
  std::vector<double> xis;
  std::vector<cplx> values;

  cplx at(std::size_t i, std::size_t k) const { return values[i * xis.size() + k]; }
  double dxi() const { return xis.size() > 1 ? xis[1] - xis[0] : 0.0; }
};

// w^eps[u](x, xi) = (2 pi)^{-1} int u(x - eps p/2) conj(u(x + eps p/2)) e^{i p xi} dp (d = 1).
// The field is upsampled by two; x runs over every x_stride-th node of the refined grid and
// xi_k = eps pi k / (2L) for k = -N..N-1.
PhaseSpaceField wigner_transform(const ContinuousField& u, double eps, std::size_t x_stride = 1);

// w_S^eps[u](x, xi) = (2 pi)^{-1} sum_n u(x - eps pi n) conj(u(x + eps pi n)) e^{i n xi} (d = 1).
PhaseSpaceField wigner_series(const ContinuousField& u, double eps, std::span<const double> xs,
                              std::span<const double> xis);

// <E^h[U], phi> = h^d sum_n phi(h n) |U_n|^2.
double energy_density(const DiscreteField& u, const std::function<double(const Vec2&)>& phi);
double energy_density(const DiscreteField& u, const Factor& phi);

// F^eps u(xi) = (2 pi eps)^{-d/2} u-hat(xi / eps), as a field on the window of half-length
// eps pi N / (2L).
ContinuousField rescaled_fourier(const ContinuousField& u, double eps);

struct OscillationDiagnostics {
  double eps_oscillation_tail;     // mass with |xi| >= R / eps
  double compact_at_infinity_tail; // mass with |x| >= R
};

OscillationDiagnostics oscillation_diagnostics(const ContinuousField& u, double eps, double R);
// Discrete version on hZ: (2 pi)^{-1} h int_{Q, |xi| >= R h / eps} |U-hat|^2 and h sum_{|hn| >= R} |U_n|^2.
OscillationDiagnostics oscillation_diagnostics(const DiscreteField& u, double eps, double R);

// A 2 pi-periodic function on Q given pointwise, with known points of non-smoothness.
struct PeriodicSpectrum {
  std::function<cplx(double)> value;
  std::vector<double> breakpoints;
  double resolution = 0.05;  // largest quadrature panel width
};

PeriodicSpectrum periodic_spectrum(const DiscreteField& u);

// int_Q sigma^R_{<D>^s phi}(xi) h |U-hat(xi)|^2 d xi.
double sigma_weighted_mass(const PeriodicSpectrum& spectrum, double h, const Profile& phi, double s,
                           double R);

}  // namespace phasefold
