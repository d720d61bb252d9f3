#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace phasefold {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;

// Periodic computational domain [-L, L)^d sampled with N nodes per axis.
class SpatialWindow {
 public:
  SpatialWindow(int dim, double half_length, std::size_t points_per_axis);

  int dim() const { return dim_; }
  double half_length() const { return half_length_; }
  std::size_t points_per_axis() const { return n_; }
  std::size_t size() const { return dim_ == 1 ? n_ : n_ * n_; }
  double dx() const { return 2.0 * half_length_ / static_cast<double>(n_); }
  double dxi() const;
  double node(std::size_t j) const { return -half_length_ + static_cast<double>(j) * dx(); }
  // Frequency of spectrum slot i, i = m + N/2.
  double freq(std::size_t i) const;
  double max_freq() const;
  double cell_volume() const;
  double dual_cell_volume() const;

  bool operator==(const SpatialWindow&) const = default;

 private:
  int dim_;
  double half_length_;
  std::size_t n_;
};

// Samples of a function on a SpatialWindow. Row-major in 2-D (first axis slowest).
// Spectrum slots are ordered m = -N/2 .. N/2-1 per axis.
class ContinuousField {
 public:
  ContinuousField(SpatialWindow window, std::vector<cplx> values);

  static ContinuousField from_function(const SpatialWindow& window,
                                       const std::function<cplx(double)>& f);
  static ContinuousField from_function2(const SpatialWindow& window,
                                        const std::function<cplx(double, double)>& f);
  static ContinuousField from_spectrum(const SpatialWindow& window, std::vector<cplx> spectrum);

  const SpatialWindow& window() const { return window_; }
  std::span<const cplx> values() const { return values_; }
  std::span<const cplx> spectrum() const;

  double norm() const;
  // L2 mass of the field outside [-L/2, L/2)^d divided by total mass.
  double outer_mass_fraction() const;
  // Spectral mass in the outer band max_freq*(1-band) < |xi| divided by total mass.
  double spectral_edge_fraction(double band = 0.125) const;
  // Trigonometric interpolation at arbitrary points (d = 1).
  std::vector<cplx> evaluate(std::span<const double> xs) const;

 private:
  struct SpectrumCache {
    std::once_flag once;
    std::vector<cplx> spectrum;
  };

  SpatialWindow window_;
  std::vector<cplx> values_;
  std::shared_ptr<SpectrumCache> cache_;
};

std::vector<cplx> forward_transform(const ContinuousField& f);
ContinuousField inverse_transform(const SpatialWindow& window, std::vector<cplx> spectrum);

using Symbol = std::function<cplx(const Vec2& xi)>;

// Spectrum multiplied by chi(eps * xi_m).
ContinuousField fourier_multiplier(const ContinuousField& f, const Symbol& chi, double eps);
// Spectrum multiplied by <eps xi>^s.
ContinuousField bessel_multiplier(const ContinuousField& f, double s, double eps);

double japanese(double xi);
double japanese(const Vec2& xi, int dim);

// U on hZ^d with finite index box [first, first + extent) per axis.
class DiscreteField {
 public:
  DiscreteField(double h, long first, std::vector<cplx> values);
  DiscreteField(double h, std::array<long, 2> first, std::array<std::size_t, 2> extent,
                std::vector<cplx> values);

  int dim() const { return dim_; }
  double h() const { return h_; }
  std::array<long, 2> first() const { return first_; }
  std::array<std::size_t, 2> extent() const { return extent_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  long index(std::size_t i) const { return first_[0] + static_cast<long>(i); }
  double node(std::size_t i) const { return h_ * static_cast<double>(index(i)); }

  double norm() const;
  cplx dft(double xi) const;
  cplx dft(const Vec2& xi) const;
  std::vector<cplx> dft_many(std::span<const double> xis) const;
  // Values of U-hat at 2 pi j / P, j = 0..P-1 (d = 1), exact for any support length.
  std::vector<cplx> dft_grid(std::size_t p) const;

 private:
  int dim_;
  double h_;
  std::array<long, 2> first_;
  std::array<std::size_t, 2> extent_;
  std::vector<cplx> values_;
};

cplx dft_of_discrete(const DiscreteField& u, double xi);
cplx dft_of_discrete(const DiscreteField& u, const Vec2& xi);

// Reduce xi into [-pi, pi] by an exact remainder.
double reduce_angle(double xi);

bool is_power_of_two(std::size_t n);

}  // namespace phasefold
