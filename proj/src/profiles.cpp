#include "phasefold/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "phasefold/errors.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double weight2s(double eta, double s) { return s == 0.0 ? 1.0 : std::pow(1.0 + eta * eta, s); }

long ceil_index(double r) { return r <= 0.0 ? 0 : static_cast<long>(std::ceil(r - 1e-12)); }

long positive_mod(long a, long q) { return ((a % q) + q) % q; }

// Euler-Maclaurin estimate of sum_{j>=0} g(a + T j) for g(eta) = <eta>^{2s} eta^{-power}, a >> 1.
// The bound is the magnitude of the last correction kept, which dominates the remainder for
// completely monotone g.
SeriesValue euler_maclaurin_tail(double a, double period, double s, double power) {
  double integral = 0.0, g0 = 0.0, g1 = 0.0, g3 = 0.0;
  double c = 1.0;
  for (int j = 0; j < 40; ++j) {
    const double e = 2.0 * s - power - 2.0 * j;
    const double ae = std::pow(a, e);
    const double term = c * ae;
    integral += -c * ae * a / (e + 1.0);
    g0 += term;
    g1 += c * e * ae / a;
    g3 += c * e * (e - 1.0) * (e - 2.0) * ae / (a * a * a);
    const double next = c * (s - j) / (j + 1.0);
    if (next == 0.0 || std::abs(next * std::pow(a, e - 2.0)) < 1e-18 * std::abs(g0)) break;
    c = next;
  }
  const double t3 = period * period * period * g3 / 720.0;
  return {integral / period + 0.5 * g0 - period * g1 / 12.0 + t3, std::abs(t3)};
}

class NamedModel : public detail::ProfileModel {
 public:
  explicit NamedModel(std::string name) : name_(std::move(name)) {}
  const std::string& name() const override { return name_; }

 private:
  std::string name_;
};

// |phi-hat(xi + 2 pi n)|^2 = amplitude(xi, n mod q) |xi + 2 pi n|^{-power} for every n.
class AlgebraicModel : public NamedModel {
 public:
  using NamedModel::NamedModel;
  virtual int period() const { return 1; }
  virtual double power() const = 0;
  virtual double amplitude(double xi, long residue) const = 0;

  SeriesValue lattice_series(double s, double xi, double min_index, double tol) const override {
    const double e0 = 2.0 * s - power();
    if (e0 >= -1.0) {
      throw NonSummableTail("lattice series of " + name() + " with s=" + std::to_string(s) +
                            " has no summable tail");
    }
    const long nmin = ceil_index(min_index);
    const long q = period();
    long n_direct = std::max<long>(16, static_cast<long>(std::abs(xi) / kTwoPi) + 16);
    while (n_direct <= (1L << 24)) {
      double direct = 0.0;
      for (long n = -n_direct; n <= n_direct; ++n) {
        if (std::labs(n) < nmin) continue;
        const double eta = xi + kTwoPi * static_cast<double>(n);
        direct += weight2s(eta, s) * std::norm(fourier(eta));
      }
      const long start = std::max(n_direct, nmin - 1) + 1;
      double tail = 0.0;
      double bound = 0.0;
      for (long r = 0; r < q; ++r) {
        const long up = start + positive_mod(r - start, q);
        const long down = -start - positive_mod(-start - r, q);
        for (long n : {up, down}) {
          const double a = std::abs(xi + kTwoPi * static_cast<double>(n));
          const auto em = euler_maclaurin_tail(a, kTwoPi * static_cast<double>(q), s, power());
          const double amp = amplitude(xi, positive_mod(n, q));
          tail += amp * em.value;
          bound += amp * em.tail_bound;
        }
      }
      if (bound < tol) return {direct + tail, bound};
      n_direct *= 2;
    }
    throw NonSummableTail("could not certify lattice tail for " + name());
  }
};

class DeltaModel final : public AlgebraicModel {
 public:
  DeltaModel() : AlgebraicModel("delta") {}
  ProfileKind kind() const override { return ProfileKind::delta; }
  cplx fourier(double) const override { return 1.0; }
  double power() const override { return 0.0; }
  double amplitude(double, long) const override { return 1.0; }
};

class BSplineModel final : public AlgebraicModel {
 public:
  explicit BSplineModel(int order) : AlgebraicModel("bspline:" + std::to_string(order)), r_(order) {}
  ProfileKind kind() const override { return ProfileKind::bspline; }
  cplx fourier(double xi) const override {
    const double h = 0.5 * xi;
    const double base = h == 0.0 ? 1.0 : std::sin(h) / h;
    return std::pow(base, r_ + 1);
  }
  double power() const override { return 2.0 * r_ + 2.0; }
  double amplitude(double xi, long) const override {
    return std::pow(2.0 * std::abs(std::sin(0.5 * xi)), 2 * r_ + 2);
  }
  bool has_spatial() const override { return true; }
  double spatial(double x) const override {
    const double shift = 0.5 * (r_ + 1);
    if (x < -shift || x >= shift) return 0.0;
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= r_ + 1; ++k) {
      const double t = x + shift - k;
      const double plus = r_ == 0 ? (t >= 0.0 ? 1.0 : 0.0) : (t > 0.0 ? std::pow(t, r_) : 0.0);
      sum += ((k % 2 == 0) ? 1.0 : -1.0) * binom * plus;
      binom = binom * (r_ + 1 - k) / (k + 1.0);
    }
    return sum / std::tgamma(r_ + 1.0);
  }
  std::pair<double, double> spatial_support() const override {
    return {-0.5 * (r_ + 1), 0.5 * (r_ + 1)};
  }

 private:
  int r_;
};

class HaarModel final : public AlgebraicModel {
 public:
  HaarModel() : AlgebraicModel("haar") {}
  ProfileKind kind() const override { return ProfileKind::haar; }
  // (1 - e^{-i xi/2})^2 / (i xi) = 4 i sin^2(xi/4) e^{-i xi/2} / xi
  cplx fourier(double xi) const override {
    if (xi == 0.0) return 0.0;
    const double sq = std::sin(0.25 * xi);
    return cplx(0.0, 4.0 * sq * sq / xi) * std::polar(1.0, -0.5 * xi);
  }
  int period() const override { return 2; }
  double power() const override { return 2.0; }
  double amplitude(double xi, long residue) const override {
    const double v = residue == 0 ? std::sin(0.25 * xi) : std::cos(0.25 * xi);
    return 16.0 * v * v * v * v;
  }
  bool has_spatial() const override { return true; }
  double spatial(double x) const override {
    if (x >= 0.0 && x < 0.5) return 1.0;
    if (x >= 0.5 && x < 1.0) return -1.0;
    return 0.0;
  }
  std::pair<double, double> spatial_support() const override { return {0.0, 1.0}; }
};

class GaussianModel final : public NamedModel {
 public:
  explicit GaussianModel(double sigma) : NamedModel(make_name(sigma)), sigma_(sigma) {}
  ProfileKind kind() const override { return ProfileKind::gaussian; }
  cplx fourier(double xi) const override { return std::exp(-0.5 * sigma_ * sigma_ * xi * xi); }

  SeriesValue lattice_series(double s, double xi, double min_index, double tol) const override {
    const long nmin = ceil_index(min_index);
    long n_direct = std::max<long>(4, static_cast<long>(std::abs(xi) / kTwoPi) + 4);
    const double peak = s > 0.0 ? std::sqrt(s) / sigma_ : 0.0;
    while (n_direct <= (1L << 24)) {
      double direct = 0.0;
      for (long n = -n_direct; n <= n_direct; ++n) {
        if (std::labs(n) < nmin) continue;
        const double eta = xi + kTwoPi * static_cast<double>(n);
        direct += term(s, eta);
      }
      const long start = std::max(n_direct, nmin - 1) + 1;
      const double a_up = xi + kTwoPi * static_cast<double>(start);
      const double a_down = -(xi - kTwoPi * static_cast<double>(start));
      double bound = 0.0;
      bool ok = a_up > peak && a_down > peak;
      for (double a : {a_up, a_down}) {
        const double ta = term(s, a);
        if (ta == 0.0) continue;
        const double rho = s >= 0.0 ? term(s, a + kTwoPi) / ta
                                    : std::exp(-sigma_ * sigma_ * (2.0 * kTwoPi * a + kTwoPi * kTwoPi));
        if (!(rho < 1.0)) ok = false;
        bound += ta / (1.0 - rho);
      }
      if (ok && bound < tol) return {direct, bound};
      n_direct *= 2;
    }
    throw NonSummableTail("could not certify lattice tail for " + name());
  }

  bool has_spatial() const override { return true; }
  double spatial(double x) const override {
    return std::exp(-0.5 * x * x / (sigma_ * sigma_)) / (sigma_ * std::sqrt(kTwoPi));
  }
  std::pair<double, double> spatial_support() const override {
    return {-12.0 * sigma_, 12.0 * sigma_};
  }

 private:
  static std::string make_name(double sigma) {
    std::ostringstream os;
    os << "gauss:" << sigma;
    return os.str();
  }
  double term(double s, double eta) const {
    return weight2s(eta, s) * std::exp(-sigma_ * sigma_ * eta * eta);
  }
  double sigma_;
};

// Representative 1 on [-pi, pi), 0 elsewhere.
class SincModel final : public NamedModel {
 public:
  SincModel() : NamedModel("sinc") {}
  ProfileKind kind() const override { return ProfileKind::sinc; }
  cplx fourier(double xi) const override { return (xi >= -kPi && xi < kPi) ? 1.0 : 0.0; }
  SeriesValue lattice_series(double s, double xi, double min_index, double) const override {
    const long nmin = ceil_index(min_index);
    long n0 = static_cast<long>(std::ceil((-kPi - xi) / kTwoPi)) - 1;
    for (long n = n0; n <= n0 + 2; ++n) {
      const double eta = xi + kTwoPi * static_cast<double>(n);
      if (eta >= -kPi && eta < kPi) {
        return {std::labs(n) >= nmin ? weight2s(eta, s) : 0.0, 0.0};
      }
    }
    return {0.0, 0.0};
  }
  std::vector<double> discontinuities(double lo, double hi) const override {
    std::vector<double> out;
    for (double p : {-kPi, kPi}) {
      if (p >= lo && p <= hi) out.push_back(p);
    }
    return out;
  }
  std::optional<std::pair<double, double>> fourier_support() const override {
    return std::make_pair(-kPi, kPi);
  }
};

double ce_hat(int n, double t) {
  if (n < 1) return 0.0;
  const double lo = ce_osc_node(n + 1);
  const double mid = ce_osc_node(n);
  const double hi = ce_osc_node(n - 1);
  if (t <= lo || t >= hi) return 0.0;
  return t <= mid ? (t - lo) / (mid - lo) : (hi - t) / (hi - mid);
}

// phi-hat(xi) = sqrt(sum_n psi_n(xi - 2 pi n)) with piecewise-linear hats psi_n on nodes e^{-n}.
class CeOscModel final : public NamedModel {
 public:
  CeOscModel() : NamedModel("ceosc") {}
  ProfileKind kind() const override { return ProfileKind::ceosc; }
  cplx fourier(double xi) const override {
    const double n = std::floor(xi / kTwoPi);
    if (n < 1.0 || n > 700.0) return 0.0;
    return std::sqrt(ce_hat(static_cast<int>(n), xi - kTwoPi * n));
  }
  SeriesValue lattice_series(double s, double xi, double min_index, double) const override {
    const long nmin = ceil_index(min_index);
    const double b = std::floor(xi / kTwoPi);
    const double t = xi - kTwoPi * b;
    if (!(t > 0.0 && t < 1.0)) return {0.0, 0.0};
    const int k = static_cast<int>(std::floor(-std::log(t)));
    double value = 0.0;
    for (int m = std::max(1, k - 1); m <= k + 2; ++m) {
      const double psi = ce_hat(m, t);
      if (psi <= 0.0) continue;
      const long n = m - static_cast<long>(b);
      if (std::labs(n) < nmin) continue;
      value += weight2s(kTwoPi * m + t, s) * psi;
    }
    return {value, 0.0};
  }
  bool tensor_2d() const override { return false; }
};

class TableModel final : public NamedModel {
 public:
  TableModel(std::vector<double> xi, std::vector<cplx> values, std::string label)
      : NamedModel(std::move(label)), xi_(std::move(xi)), values_(std::move(values)) {
    if (xi_.size() < 2 || xi_.size() != values_.size()) {
      throw BadParams("Fourier table needs at least two (xi, value) rows");
    }
    for (std::size_t i = 1; i < xi_.size(); ++i) {
      if (!(xi_[i] > xi_[i - 1])) throw BadParams("Fourier table abscissae must increase");
    }
  }
  ProfileKind kind() const override { return ProfileKind::table; }
  cplx fourier(double xi) const override {
    if (xi < xi_.front() || xi >= xi_.back()) return 0.0;
    const auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
    const std::size_t i = static_cast<std::size_t>(it - xi_.begin()) - 1;
    const double t = (xi - xi_[i]) / (xi_[i + 1] - xi_[i]);
    return (1.0 - t) * values_[i] + t * values_[i + 1];
  }
  SeriesValue lattice_series(double s, double xi, double min_index, double) const override {
    const long nmin = ceil_index(min_index);
    const long lo = static_cast<long>(std::floor((xi_.front() - xi) / kTwoPi));
    const long hi = static_cast<long>(std::ceil((xi_.back() - xi) / kTwoPi));
    double value = 0.0;
    for (long n = lo; n <= hi; ++n) {
      if (std::labs(n) < nmin) continue;
      const double eta = xi + kTwoPi * static_cast<double>(n);
      value += weight2s(eta, s) * std::norm(fourier(eta));
    }
    return {value, 0.0};
  }
  std::vector<double> discontinuities(double lo, double hi) const override {
    std::vector<double> out;
    if (std::abs(values_.front()) > 0.0 && xi_.front() >= lo && xi_.front() <= hi) {
      out.push_back(xi_.front());
    }
    if (std::abs(values_.back()) > 0.0 && xi_.back() >= lo && xi_.back() <= hi) {
      out.push_back(xi_.back());
    }
    return out;
  }
  std::optional<std::pair<double, double>> fourier_support() const override {
    return std::make_pair(xi_.front(), xi_.back());
  }
  bool tensor_2d() const override { return false; }

 private:
  std::vector<double> xi_;
  std::vector<cplx> values_;
};

class DualModel final : public NamedModel {
 public:
  DualModel(Profile base, double s)
      : NamedModel(make_name(base, s)), base_(std::move(base)), s_(s) {}
  ProfileKind kind() const override { return ProfileKind::table; }
  cplx fourier(double xi) const override {
    const double t = tau(base_, s_, xi).value;
    if (t <= kTauFloor) return 0.0;
    return std::pow(japanese(xi), s_) * base_.fourier_at(xi) / t;
  }
  SeriesValue lattice_series(double s, double xi, double min_index, double tol) const override {
    const double t = tau(base_, s_, xi).value;
    if (t <= kTauFloor) return {0.0, 0.0};
    const double scale = 1.0 / (t * t);
    const double inner_tol = tol * std::min(1.0, t * t);
    const SeriesValue raw = base_.lattice_series(s_ + s, xi, min_index, inner_tol);
    return {raw.value * scale, raw.tail_bound * scale};
  }
  std::vector<double> discontinuities(double lo, double hi) const override {
    return base_.discontinuities(lo, hi);
  }
  std::optional<std::pair<double, double>> fourier_support() const override {
    return base_.fourier_support();
  }
  bool tensor_2d() const override { return false; }

 private:
  static std::string make_name(const Profile& base, double s) {
    std::ostringstream os;
    os << "dual(" << base.name() << "," << s << ")";
    return os.str();
  }
  Profile base_;
  double s_;
};

double parse_double(std::string_view text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw BadParams(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  }
  return v;
}

SeriesValue tau_2d_box(const Profile& p, double s, const Vec2& xi, double min_norm, double tol) {
  const double r2 = min_norm * min_norm;
  for (long m = std::max<long>(8, ceil_index(min_norm) + 2); m <= (1L << 14); m *= 2) {
    double direct = 0.0;
    for (long n1 = -m; n1 <= m; ++n1) {
      const double e1 = xi[0] + kTwoPi * static_cast<double>(n1);
      const double f1 = p.fourier_sq(e1);
      if (f1 == 0.0) continue;
      for (long n2 = -m; n2 <= m; ++n2) {
        if (static_cast<double>(n1 * n1 + n2 * n2) < r2 - 1e-12) continue;
        const double e2 = xi[1] + kTwoPi * static_cast<double>(n2);
        direct += std::pow(1.0 + e1 * e1 + e2 * e2, s) * f1 * p.fourier_sq(e2);
      }
    }
    const double inner_tol = 1e-3 * tol;
    const double s_full = s > 0.0 ? s : 0.0;
    const SeriesValue t1 = p.lattice_series(s_full, xi[0], 0.0, inner_tol);
    const SeriesValue t2 = p.lattice_series(s_full, xi[1], 0.0, inner_tol);
    const SeriesValue r1 = p.lattice_series(s, xi[0], static_cast<double>(m + 1), inner_tol);
    const SeriesValue r2v = p.lattice_series(s, xi[1], static_cast<double>(m + 1), inner_tol);
    const double bound = (r1.value + r1.tail_bound) * (t2.value + t2.tail_bound) +
                         (t1.value + t1.tail_bound) * (r2v.value + r2v.tail_bound);
    if (bound < tol) return {direct, bound};
  }
  throw NonSummableTail("could not certify 2-D lattice tail for " + p.name());
}

void require_tensor(const Profile& p, int dim) {
  if (dim == 2 && !p.tensor_2d()) throw BadParams(p.name() + " is only defined in one dimension");
  if (dim != 1 && dim != 2) throw BadParams("dimension must be 1 or 2");
}

}  // namespace

std::string_view kind_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::delta: return "delta";
    case ProfileKind::sinc: return "sinc";
    case ProfileKind::bspline: return "bspline";
    case ProfileKind::haar: return "haar";
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::ceosc: return "ceosc";
    case ProfileKind::table: return "table";
  }
  return "unknown";
}

double ce_osc_node(int n) { return std::exp(-static_cast<double>(n)); }

Profile Profile::delta() { return Profile(std::make_shared<DeltaModel>()); }
Profile Profile::sinc() { return Profile(std::make_shared<SincModel>()); }
Profile Profile::bspline(int order) {
  if (order < 0 || order > 12) throw BadParams("B-spline order must be in [0, 12]");
  return Profile(std::make_shared<BSplineModel>(order));
}
Profile Profile::haar() { return Profile(std::make_shared<HaarModel>()); }
Profile Profile::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw BadParams("Gaussian width must be positive");
  return Profile(std::make_shared<GaussianModel>(sigma));
}
Profile Profile::ceosc() { return Profile(std::make_shared<CeOscModel>()); }
Profile Profile::table(std::vector<double> xi, std::vector<cplx> values, std::string label) {
  return Profile(std::make_shared<TableModel>(std::move(xi), std::move(values), std::move(label)));
}

ProfileKind Profile::kind() const { return model_->kind(); }
const std::string& Profile::name() const { return model_->name(); }
cplx Profile::fourier_at(double xi) const { return model_->fourier(xi); }
cplx Profile::fourier_at(const Vec2& xi, int dim) const {
  require_tensor(*this, dim);
  if (dim == 1) return model_->fourier(xi[0]);
  return model_->fourier(xi[0]) * model_->fourier(xi[1]);
}
SeriesValue Profile::lattice_series(double s, double xi, double min_index, double tol) const {
  return model_->lattice_series(s, xi, min_index, tol);
}
bool Profile::has_spatial_kernel() const { return model_->has_spatial(); }
double Profile::spatial(double x) const { return model_->spatial(x); }
std::pair<double, double> Profile::spatial_support() const { return model_->spatial_support(); }
std::vector<double> Profile::discontinuities(double lo, double hi) const {
  return model_->discontinuities(lo, hi);
}
std::optional<std::pair<double, double>> Profile::fourier_support() const {
  return model_->fourier_support();
}
bool Profile::tensor_2d() const { return model_->tensor_2d(); }

SeriesValue tau(const Profile& p, double s, double xi, double tol) {
  if (!std::isfinite(xi)) throw BadParams("tau needs a finite frequency");
  return p.lattice_series(s, reduce_angle(xi), 0.0, tol);
}

SeriesValue tau(const Profile& p, double s, const Vec2& xi, int dim, double tol) {
  require_tensor(p, dim);
  if (dim == 1) return tau(p, s, xi[0], tol);
  const Vec2 r{reduce_angle(xi[0]), reduce_angle(xi[1])};
  if (s == 0.0) {
    const SeriesValue a = p.lattice_series(0.0, r[0], 0.0, 0.25 * tol);
    const SeriesValue b = p.lattice_series(0.0, r[1], 0.0, 0.25 * tol);
    return {a.value * b.value, a.tail_bound * (b.value + b.tail_bound) + b.tail_bound * a.value};
  }
  return tau_2d_box(p, s, r, 0.0, tol);
}

SeriesValue sigma_tail(const Profile& p, double s, double R, double xi, double tol) {
  if (!std::isfinite(xi)) throw BadParams("sigma_tail needs a finite frequency");
  return p.lattice_series(s, xi, R, tol);
}

SeriesValue sigma_tail(const Profile& p, double s, double R, const Vec2& xi, int dim, double tol) {
  require_tensor(p, dim);
  if (dim == 1) return sigma_tail(p, s, R, xi[0], tol);
  return tau_2d_box(p, s, xi, R, tol);
}

Profile dual_profile(const Profile& p, double s) {
  if (p.kind() == ProfileKind::sinc && s == 0.0) return p;
  tau(p, s, 0.0);
  return Profile(std::make_shared<DualModel>(p, s));
}

std::string_view verdict_name(BasisVerdict v) {
  switch (v) {
    case BasisVerdict::orthonormal: return "orthonormal";
    case BasisVerdict::riesz: return "riesz";
    case BasisVerdict::bessel_only: return "bessel_only";
    case BasisVerdict::unbounded: return "unbounded";
  }
  return "unknown";
}

BasisClassification basis_classify(const Profile& p, double s, int grid_points, double tol, int dim) {
  if (grid_points < 64) throw BadParams("basis classification needs at least 64 grid points");
  require_tensor(p, dim);
  BasisClassification out{BasisVerdict::bessel_only, std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity(), grid_points, 0.0, 0.0};
  const double step = kTwoPi / grid_points;
  bool finite = true;
  auto visit = [&](double value, double where) {
    if (!std::isfinite(value)) finite = false;
    if (value < out.lower) {
      out.lower = value;
      out.argmin = where;
    }
    if (value > out.upper) {
      out.upper = value;
      out.argmax = where;
    }
  };
  if (dim == 1) {
    for (int j = 0; j < grid_points; ++j) {
      const double xi = -kPi + step * j;
      visit(tau(p, s, xi).value, xi);
    }
  } else {
    for (int i = 0; i < grid_points; ++i) {
      for (int j = 0; j < grid_points; ++j) {
        const Vec2 xi{-kPi + step * i, -kPi + step * j};
        visit(tau(p, s, xi, 2).value, xi[0]);
      }
    }
  }
  if (!finite) {
    out.verdict = BasisVerdict::unbounded;
  } else if (std::abs(out.lower - 1.0) <= tol && std::abs(out.upper - 1.0) <= tol) {
    out.verdict = BasisVerdict::orthonormal;
  } else if (out.lower > tol) {
    out.verdict = BasisVerdict::riesz;
  } else {
    out.verdict = BasisVerdict::bessel_only;
  }
  return out;
}

Profile ce_osc_profile() { return Profile::ceosc(); }

Profile load_table_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParams("cannot open Fourier table '" + path + "'");
  std::vector<double> xi;
  std::vector<cplx> values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::vector<double> nums;
    double v;
    while (row >> v) nums.push_back(v);
    if (nums.empty()) continue;
    if (nums.size() < 2 || nums.size() > 3) {
      throw BadParams("Fourier table rows need 'xi re [im]': " + line);
    }
    xi.push_back(nums[0]);
    values.emplace_back(nums[1], nums.size() == 3 ? nums[2] : 0.0);
  }
  return Profile::table(std::move(xi), std::move(values), "table:" + path);
}

Profile parse_profile(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw BadParams("profile '" + std::string(head) + "' needs a parameter");
  };
  auto no_arg = [&] {
    if (colon != std::string_view::npos) throw BadParams("profile '" + std::string(head) + "' takes no parameter");
  };
  if (head == "delta") return no_arg(), Profile::delta();
  if (head == "sinc") return no_arg(), Profile::sinc();
  if (head == "haar") return no_arg(), Profile::haar();
  if (head == "ceosc") return no_arg(), Profile::ceosc();
  if (head == "bspline") {
    need_arg();
    const double r = parse_double(arg, "B-spline order");
    if (r != std::floor(r)) throw BadParams("B-spline order must be an integer");
    return Profile::bspline(static_cast<int>(r));
  }
  if (head == "gauss") {
    need_arg();
    return Profile::gaussian(parse_double(arg, "Gaussian width"));
  }
  if (head == "table") {
    need_arg();
    return load_table_profile(std::string(arg));
  }
  throw BadParams("unknown profile '" + std::string(spec) +
                  "' (known: delta, sinc, bspline:<r>, haar, gauss:<sigma>, ceosc, table:<path>)");
}

}  // namespace phasefold
