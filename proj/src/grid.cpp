#include "phasefold/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phasefold/errors.hpp"
#include "phasefold/fft.hpp"
#include "phasefold/kernels.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of_index(long m) { return (m % 2 == 0) ? 1.0 : -1.0; }

std::vector<cplx> compute_spectrum(const SpatialWindow& w, std::span<const cplx> values) {
  const std::size_t n = w.points_per_axis();
  const long half = static_cast<long>(n / 2);
  std::vector<cplx> data(values.begin(), values.end());
  std::vector<cplx> spec(data.size());
  const double weight = w.cell_volume();
  if (w.dim() == 1) {
    fft::forward(data);
    for (std::size_t i = 0; i < n; ++i) {
      const long m = static_cast<long>(i) - half;
      spec[i] = weight * sign_of_index(m) * data[static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n))];
    }
  } else {
    fft::forward_2d(data, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const long m1 = static_cast<long>(i) - half;
      const std::size_t k1 = static_cast<std::size_t>((m1 + static_cast<long>(n)) % static_cast<long>(n));
      for (std::size_t j = 0; j < n; ++j) {
        const long m2 = static_cast<long>(j) - half;
        const std::size_t k2 = static_cast<std::size_t>((m2 + static_cast<long>(n)) % static_cast<long>(n));
        spec[i * n + j] = weight * sign_of_index(m1 + m2) * data[k1 * n + k2];
      }
    }
  }
  return spec;
}

std::vector<cplx> synthesize(const SpatialWindow& w, std::span<const cplx> spectrum) {
  const std::size_t n = w.points_per_axis();
  const long half = static_cast<long>(n / 2);
  std::vector<cplx> data(spectrum.size());
  const double norm = 1.0 / std::pow(2.0 * w.half_length(), w.dim());
  if (w.dim() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const long m = static_cast<long>(i) - half;
      data[static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n))] =
          norm * sign_of_index(m) * spectrum[i];
    }
    fft::inverse(data);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const long m1 = static_cast<long>(i) - half;
      const std::size_t k1 = static_cast<std::size_t>((m1 + static_cast<long>(n)) % static_cast<long>(n));
      for (std::size_t j = 0; j < n; ++j) {
        const long m2 = static_cast<long>(j) - half;
        const std::size_t k2 = static_cast<std::size_t>((m2 + static_cast<long>(n)) % static_cast<long>(n));
        data[k1 * n + k2] = norm * sign_of_index(m1 + m2) * spectrum[i * n + j];
      }
    }
    fft::inverse_2d(data, n, n);
  }
  return data;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double reduce_angle(double xi) { return std::remainder(xi, 2.0 * kPi); }

double japanese(double xi) { return std::sqrt(1.0 + xi * xi); }

double japanese(const Vec2& xi, int dim) {
  return dim == 1 ? japanese(xi[0]) : std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]);
}

SpatialWindow::SpatialWindow(int dim, double half_length, std::size_t points_per_axis)
    : dim_(dim), half_length_(half_length), n_(points_per_axis) {
  if (dim != 1 && dim != 2) throw BadParams("window dimension must be 1 or 2");
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw BadParams("window half length must be positive");
  }
  if (points_per_axis < 16 || !is_power_of_two(points_per_axis)) {
    throw BadParams("samples per axis must be a power of two >= 16, got " +
                    std::to_string(points_per_axis));
  }
}

double SpatialWindow::dxi() const { return kPi / half_length_; }

double SpatialWindow::freq(std::size_t i) const {
  return kPi * (static_cast<double>(i) - static_cast<double>(n_ / 2)) / half_length_;
}

double SpatialWindow::max_freq() const { return kPi * static_cast<double>(n_ / 2) / half_length_; }

double SpatialWindow::cell_volume() const { return std::pow(dx(), dim_); }

double SpatialWindow::dual_cell_volume() const { return std::pow(dxi() / (2.0 * kPi), dim_); }

ContinuousField::ContinuousField(SpatialWindow window, std::vector<cplx> values)
    : window_(window), values_(std::move(values)), cache_(std::make_shared<SpectrumCache>()) {
  if (values_.size() != window_.size()) {
    throw BadParams("field has " + std::to_string(values_.size()) + " values, window needs " +
                    std::to_string(window_.size()));
  }
}

ContinuousField ContinuousField::from_function(const SpatialWindow& window,
                                               const std::function<cplx(double)>& f) {
  if (window.dim() != 1) throw BadParams("from_function needs a 1-D window");
  std::vector<cplx> v(window.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(window.node(j));
  return ContinuousField(window, std::move(v));
}

ContinuousField ContinuousField::from_function2(const SpatialWindow& window,
                                                const std::function<cplx(double, double)>& f) {
  if (window.dim() != 2) throw BadParams("from_function2 needs a 2-D window");
  const std::size_t n = window.points_per_axis();
  std::vector<cplx> v(window.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) v[i * n + j] = f(window.node(i), window.node(j));
  }
  return ContinuousField(window, std::move(v));
}

ContinuousField ContinuousField::from_spectrum(const SpatialWindow& window,
                                               std::vector<cplx> spectrum) {
  if (spectrum.size() != window.size()) throw BadParams("spectrum size does not match window");
  ContinuousField f(window, synthesize(window, spectrum));
  std::call_once(f.cache_->once, [&] { f.cache_->spectrum = std::move(spectrum); });
  return f;
}

std::span<const cplx> ContinuousField::spectrum() const {
  std::call_once(cache_->once, [this] { cache_->spectrum = compute_spectrum(window_, values_); });
  return cache_->spectrum;
}

double ContinuousField::norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(window_.cell_volume() * s);
}

double ContinuousField::outer_mass_fraction() const {
  const std::size_t n = window_.points_per_axis();
  const double half = 0.5 * window_.half_length();
  auto inside = [&](std::size_t j) {
    const double x = window_.node(j);
    return x >= -half && x < half;
  };
  double total = 0.0;
  double outer = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double m = std::norm(values_[k]);
    total += m;
    const bool in = window_.dim() == 1 ? inside(k) : (inside(k / n) && inside(k % n));
    if (!in) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double ContinuousField::spectral_edge_fraction(double band) const {
  const auto spec = spectrum();
  const std::size_t n = window_.points_per_axis();
  const double cut = window_.max_freq() * (1.0 - band);
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double m = std::norm(spec[k]);
    total += m;
    const bool outer = window_.dim() == 1
                           ? std::abs(window_.freq(k)) > cut
                           : (std::abs(window_.freq(k / n)) > cut || std::abs(window_.freq(k % n)) > cut);
    if (outer) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

std::vector<cplx> ContinuousField::evaluate(std::span<const double> xs) const {
  if (window_.dim() != 1) throw BadParams("evaluate supports 1-D fields");
  const auto spec = spectrum();
  std::vector<double> theta(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) theta[j] = -kPi * xs[j] / window_.half_length();
  std::vector<cplx> out(xs.size());
  const long first = -static_cast<long>(window_.points_per_axis() / 2);
  kernels::active().trig_eval(spec.data(), spec.size(), first, theta.data(), theta.size(), out.data());
  const double norm = 1.0 / (2.0 * window_.half_length());
  for (auto& v : out) v *= norm;
  return out;
}

std::vector<cplx> forward_transform(const ContinuousField& f) {
  const auto s = f.spectrum();
  return {s.begin(), s.end()};
}

ContinuousField inverse_transform(const SpatialWindow& window, std::vector<cplx> spectrum) {
  return ContinuousField::from_spectrum(window, std::move(spectrum));
}

ContinuousField fourier_multiplier(const ContinuousField& f, const Symbol& chi, double eps) {
  const auto& w = f.window();
  const auto spec = f.spectrum();
  const std::size_t n = w.points_per_axis();
  std::vector<cplx> symbol(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const Vec2 xi = w.dim() == 1 ? Vec2{eps * w.freq(k), 0.0}
                                 : Vec2{eps * w.freq(k / n), eps * w.freq(k % n)};
    symbol[k] = chi(xi);
  }
  std::vector<cplx> out(spec.size());
  kernels::active().mul(spec.data(), symbol.data(), out.data(), spec.size());
  return ContinuousField::from_spectrum(w, std::move(out));
}

ContinuousField bessel_multiplier(const ContinuousField& f, double s, double eps) {
  const auto& w = f.window();
  const auto spec = f.spectrum();
  const std::size_t n = w.points_per_axis();
  std::vector<double> weight(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const Vec2 xi = w.dim() == 1 ? Vec2{eps * w.freq(k), 0.0}
                                 : Vec2{eps * w.freq(k / n), eps * w.freq(k % n)};
    weight[k] = std::pow(japanese(xi, w.dim()), s);
  }
  std::vector<cplx> out(spec.size());
  kernels::active().scale_real(spec.data(), weight.data(), out.data(), spec.size());
  return ContinuousField::from_spectrum(w, std::move(out));
}

DiscreteField::DiscreteField(double h, long first, std::vector<cplx> values)
    : dim_(1), h_(h), first_{first, 0}, extent_{values.size(), 1}, values_(std::move(values)) {
  if (!(h > 0.0)) throw BadParams("grid step h must be positive");
}

DiscreteField::DiscreteField(double h, std::array<long, 2> first, std::array<std::size_t, 2> extent,
                             std::vector<cplx> values)
    : dim_(2), h_(h), first_(first), extent_(extent), values_(std::move(values)) {
  if (!(h > 0.0)) throw BadParams("grid step h must be positive");
  if (values_.size() != extent[0] * extent[1]) throw BadParams("discrete field extent mismatch");
}

double DiscreteField::norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(std::pow(h_, dim_) * s);
}

cplx DiscreteField::dft(double xi) const {
  if (dim_ != 1) throw BadParams("1-D frequency given for a 2-D discrete field");
  const double theta = reduce_angle(xi);
  cplx out;
  kernels::active().trig_eval(values_.data(), values_.size(), first_[0], &theta, 1, &out);
  return out;
}

cplx DiscreteField::dft(const Vec2& xi) const {
  if (dim_ == 1) return dft(xi[0]);
  const double t1 = reduce_angle(xi[0]);
  const double t2 = reduce_angle(xi[1]);
  std::vector<cplx> rows(extent_[0]);
  for (std::size_t i = 0; i < extent_[0]; ++i) {
    kernels::active().trig_eval(values_.data() + i * extent_[1], extent_[1], first_[1], &t2, 1,
                                &rows[i]);
  }
  cplx out;
  kernels::active().trig_eval(rows.data(), rows.size(), first_[0], &t1, 1, &out);
  return out;
}

std::vector<cplx> DiscreteField::dft_many(std::span<const double> xis) const {
  if (dim_ != 1) throw BadParams("dft_many supports 1-D fields");
  std::vector<double> theta(xis.size());
  for (std::size_t j = 0; j < xis.size(); ++j) theta[j] = reduce_angle(xis[j]);
  std::vector<cplx> out(xis.size());
  kernels::active().trig_eval(values_.data(), values_.size(), first_[0], theta.data(), theta.size(),
                              out.data());
  return out;
}

std::vector<cplx> DiscreteField::dft_grid(std::size_t p) const {
  if (dim_ != 1) throw BadParams("dft_grid supports 1-D fields");
  std::vector<cplx> a(p);
  const long lp = static_cast<long>(p);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const long r = ((index(i) % lp) + lp) % lp;
    a[static_cast<std::size_t>(r)] += values_[i];
  }
  fft::forward(a);
  return a;
}

cplx dft_of_discrete(const DiscreteField& u, double xi) { return u.dft(xi); }
cplx dft_of_discrete(const DiscreteField& u, const Vec2& xi) { return u.dft(xi); }

}  // namespace phasefold
