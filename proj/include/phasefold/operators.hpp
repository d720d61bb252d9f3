#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "phasefold/grid.hpp"
#include "phasefold/profiles.hpp"

namespace phasefold {

enum class Synthesis { automatic, spectral, spatial };

struct ReconstructOptions {
  Synthesis synthesis = Synthesis::automatic;
  // Largest admissible fraction of ||T U||^2 lying outside the window's frequency range.
  double truncation_budget = 1e-6;
};

struct ReconstructResult {
  ContinuousField field;
  double truncated_fraction;
  Synthesis used;
};

// T_phi^h U. Spectral synthesis sets the spectrum to phi-hat(h xi) h^d U-hat(h xi) on every
// frequency node; spatial synthesis sums U_n phi(x/h - n) on the nodes for profiles with a
// closed-form compact kernel. Automatic picks spectral unless its truncation exceeds the budget.
ReconstructResult reconstruct_detailed(const DiscreteField& u, const Profile& phi, double h,
                                       const SpatialWindow& window, const ReconstructOptions& opts = {});
ContinuousField reconstruct(const DiscreteField& u, const Profile& phi, double h,
                            const SpatialWindow& window, const ReconstructOptions& opts = {});

struct SampleOptions {
  // Largest admissible fraction of spectral mass in the outer eighth of the frequency grid.
  double edge_budget = 1e-8;
};

// S_phi^h u(n) = (2 pi)^{-d} int conj(phi-hat(h xi)) u-hat(xi) e^{i h n xi} d xi for h n in [-L, L)^d.
DiscreteField sample(const ContinuousField& u, const Profile& phi, double h,
                     const SampleOptions& opts = {});

// U_n = u(h n), read off by trigonometric interpolation.
DiscreteField discretize(const ContinuousField& u, double h, const SampleOptions& opts = {});

// Orthogonal projection onto V_psi^h in the <hD>^s-weighted inner product.
ContinuousField project(const ContinuousField& u, const Profile& psi, double s, double h,
                        const ReconstructOptions& opts = {});

// sum_n conj(phi-hat(h xi + 2 pi n)) u-hat(xi + 2 pi n / h), summed until terms fall below tol.
cplx poisson_fold(const std::function<cplx(double)>& u_hat, const Profile& phi, double h, double xi,
                  double tol = 1e-15);

struct OperatorNormCertificate {
  double bound;
  double s;
  int grid_points;
  double worst_xi;
};

OperatorNormCertificate certify_norm(const Profile& phi, double s, int grid_points = 512);

struct BoundsReport {
  OperatorNormCertificate certificate;
  int trials;
  double max_reconstruct_ratio;  // ||<hD>^s T U|| / (sqrt(B) ||U||_h)
  double max_sample_ratio;       // ||S u||_h / (sqrt(B) ||<hD>^{-s} u||)
  double max_adjoint_error;      // relative mismatch of the duality pairing
};

// Random (U, h) and (u, h) instances checked against the certificate; throws CertificateViolated
// describing the first failing instance.
BoundsReport verify_bounds(const Profile& phi, double s, int trials, std::uint64_t seed,
                           int threads = 1);

// Inner products: continuous (f, g) = dx^d sum f conj(g); discrete (U, V)_h = h^d sum U conj(V).
cplx inner(const ContinuousField& f, const ContinuousField& g);
cplx inner(const DiscreteField& u, const DiscreteField& v);

// First index n with h n >= -L and the number of indices with h n in [-L, L).
std::pair<long, std::size_t> sample_index_range(double half_length, double h);

}  // namespace phasefold
