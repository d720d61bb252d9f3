#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasefold/grid.hpp"

namespace phasefold {

enum class ProfileKind { delta, sinc, bspline, haar, gaussian, ceosc, table };

std::string_view kind_name(ProfileKind kind);

// Truncated lattice sum together with a certified bound on what was left out.
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

namespace detail {
class ProfileModel;
}

// A sampling/reconstruction profile phi, known through a fixed pointwise representative of its
// Fourier transform. Immutable; cheap to copy.
class Profile {
 public:
  static Profile delta();
  static Profile sinc();
  static Profile bspline(int order);
  static Profile haar();
  static Profile gaussian(double sigma);
  static Profile ceosc();
  static Profile table(std::vector<double> xi, std::vector<cplx> values, std::string label = "table");

  ProfileKind kind() const;
  const std::string& name() const;

  cplx fourier_at(double xi) const;
  // Tensor product in 2-D; throws for kinds that only exist in 1-D.
  cplx fourier_at(const Vec2& xi, int dim) const;
  double fourier_sq(double xi) const { return std::norm(fourier_at(xi)); }

  // Lattice series sum_{|n| >= R} <xi + 2 pi n>^{2s} |phi-hat(xi + 2 pi n)|^2 (1-D).
  SeriesValue lattice_series(double s, double xi, double min_index, double tol) const;

  bool has_spatial_kernel() const;
  double spatial(double x) const;
  std::pair<double, double> spatial_support() const;

  // Points in [lo, hi] where the chosen representative of phi-hat is discontinuous.
  std::vector<double> discontinuities(double lo, double hi) const;
  // Smallest interval outside of which phi-hat vanishes, if bounded.
  std::optional<std::pair<double, double>> fourier_support() const;
  bool tensor_2d() const;

  const detail::ProfileModel& model() const { return *model_; }
  explicit Profile(std::shared_ptr<const detail::ProfileModel> model) : model_(std::move(model)) {}

 private:
  std::shared_ptr<const detail::ProfileModel> model_;
};

namespace detail {

class ProfileModel {
 public:
  virtual ~ProfileModel() = default;
  virtual ProfileKind kind() const = 0;
  virtual const std::string& name() const = 0;
  virtual cplx fourier(double xi) const = 0;
  virtual SeriesValue lattice_series(double s, double xi, double min_index, double tol) const = 0;
  virtual bool has_spatial() const { return false; }
  virtual double spatial(double) const { return 0.0; }
  virtual std::pair<double, double> spatial_support() const { return {0.0, 0.0}; }
  virtual std::vector<double> discontinuities(double, double) const { return {}; }
  virtual std::optional<std::pair<double, double>> fourier_support() const { return std::nullopt; }
  virtual bool tensor_2d() const { return true; }
};

}  // namespace detail

inline constexpr double kTauFloor = 1e-12;
inline constexpr double kDefaultTauTol = 1e-12;

// tau_{<D>^s phi}(xi) = sum_k |<xi + 2 pi k>^s phi-hat(xi + 2 pi k)|^2, evaluated at xi reduced mod 2 pi.
SeriesValue tau(const Profile& p, double s, double xi, double tol = kDefaultTauTol);
SeriesValue tau(const Profile& p, double s, const Vec2& xi, int dim, double tol = kDefaultTauTol);

// sigma^R_{<D>^s phi}(xi) = sum_{|n| >= R} |<xi + 2 pi n>^s phi-hat(xi + 2 pi n)|^2 at the given xi.
SeriesValue sigma_tail(const Profile& p, double s, double R, double xi, double tol = kDefaultTauTol);
SeriesValue sigma_tail(const Profile& p, double s, double R, const Vec2& xi, int dim,
                       double tol = kDefaultTauTol);

// Profile with Fourier transform <xi>^s phi-hat(xi) / tau(xi) where tau > kTauFloor, else 0.
Profile dual_profile(const Profile& p, double s);

enum class BasisVerdict { orthonormal, riesz, bessel_only, unbounded };
std::string_view verdict_name(BasisVerdict v);

struct BasisClassification {
  BasisVerdict verdict;
  double lower;
  double upper;
  int grid_points;
  double argmin;
  double argmax;
};

BasisClassification basis_classify(const Profile& p, double s, int grid_points, double tol,
                                   int dim = 1);

Profile ce_osc_profile();

// CeOsc node t_n = e^{-n}.
double ce_osc_node(int n);

// Parses delta | sinc | bspline:<r> | haar | gauss:<sigma> | ceosc | table:<path>.
Profile parse_profile(std::string_view spec);
Profile load_table_profile(const std::string& path);

}  // namespace phasefold
