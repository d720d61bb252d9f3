#include "phasefold/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phasefold/errors.hpp"
#include "phasefold/fft.hpp"
#include "phasefold/kernels.hpp"
#include "phasefold/quadrature.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::size_t wrap(long m, std::size_t p) {
  const long lp = static_cast<long>(p);
  return static_cast<std::size_t>(((m % lp) + lp) % lp);
}

void require_dim(const TestFunction& a, int dim) {
  if (a.dim != dim) {
    std::ostringstream os;
    os << "test function is " << a.dim << "-D but the field is " << dim << "-D";
    throw BadParams(os.str());
  }
}

// Field on the window with twice the nodes per axis and the same spectrum (zero-padded).
ContinuousField refine2(const SpatialWindow& w, std::span<const cplx> spec) {
  const std::size_t n = w.points_per_axis();
  const std::size_t m = 2 * n;
  const SpatialWindow fine(w.dim(), w.half_length(), m);
  std::vector<cplx> padded(fine.size());
  if (w.dim() == 1) {
    for (std::size_t i = 0; i < n; ++i) padded[i + n / 2] = spec[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) padded[(i + n / 2) * m + j + n / 2] = spec[i * n + j];
    }
  }
  return ContinuousField::from_spectrum(fine, std::move(padded));
}

// sum_n chi(scale * (eta + 2 pi n)) on eta_j = 2 pi j / p.
std::vector<double> periodized_symbol(const Factor& chi, double scale, std::size_t p) {
  const auto [a, b] = chi.effective_support();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw BadParams("the xi factor " + chi.describe() + " needs bounded support for discrete pairings");
  }
  const long n_lo = static_cast<long>(std::floor(a / scale / kTwoPi)) - 1;
  const long n_hi = static_cast<long>(std::ceil(b / scale / kTwoPi)) + 1;
  std::vector<double> k(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    const double eta = kTwoPi * static_cast<double>(j) / static_cast<double>(p);
    double sum = 0.0;
    for (long n = n_lo; n <= n_hi; ++n) sum += chi(scale * (eta + kTwoPi * static_cast<double>(n)));
    k[j] = sum;
  }
  return k;
}

cplx pair_M_1d(const DiscreteField& u, double eps, const TestFunction& a) {
  const double h = u.h();
  const std::size_t p = next_pow2(std::max<std::size_t>(8 * u.size(), 4096));
  const auto uhat = u.dft_grid(p);
  cplx total;
  std::vector<cplx> g(p);
  for (const auto& term : a.terms) {
    const auto k = periodized_symbol(term.xi[0], eps / h, p);
    for (std::size_t j = 0; j < p; ++j) g[j] = uhat[j] * k[j];
    fft::inverse(g);
    cplx sum;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double w = term.x[0](u.node(i));
      if (w == 0.0) continue;
      sum += std::conj(u.values()[i]) * w * g[wrap(u.index(i), p)];
    }
    total += term.coeff * h * sum / static_cast<double>(p);
  }
  return total;
}

cplx pair_M_2d(const DiscreteField& u, double eps, const TestFunction& a) {
  const double h = u.h();
  const auto ext = u.extent();
  const auto first = u.first();
  const std::size_t p = next_pow2(std::max<std::size_t>(4 * std::max(ext[0], ext[1]), 1024));
  std::vector<cplx> uhat(p * p);
  for (std::size_t i = 0; i < ext[0]; ++i) {
    for (std::size_t j = 0; j < ext[1]; ++j) {
      uhat[wrap(first[0] + static_cast<long>(i), p) * p + wrap(first[1] + static_cast<long>(j), p)] +=
          u.values()[i * ext[1] + j];
    }
  }
  fft::forward_2d(uhat, p, p);
  cplx total;
  std::vector<cplx> g(p * p);
  for (const auto& term : a.terms) {
    const auto k0 = periodized_symbol(term.xi[0], eps / h, p);
    const auto k1 = periodized_symbol(term.xi[1], eps / h, p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) g[i * p + j] = uhat[i * p + j] * k0[i] * k1[j];
    }
    fft::inverse_2d(g, p, p);
    cplx sum;
    for (std::size_t i = 0; i < ext[0]; ++i) {
      const long m0 = first[0] + static_cast<long>(i);
      const double w0 = term.x[0](h * static_cast<double>(m0));
      if (w0 == 0.0) continue;
      for (std::size_t j = 0; j < ext[1]; ++j) {
        const long m1 = first[1] + static_cast<long>(j);
        const double w = w0 * term.x[1](h * static_cast<double>(m1));
        sum += std::conj(u.values()[i * ext[1] + j]) * w * g[wrap(m0, p) * p + wrap(m1, p)];
      }
    }
    total += term.coeff * h * h * sum / static_cast<double>(p * p);
  }
  return total;
}

}  // namespace

cplx pair_m(const ContinuousField& u, double eps, const TestFunction& a) {
  if (!(eps > 0.0)) throw BadParams("scale eps must be positive");
  const auto& w = u.window();
  const int dim = w.dim();
  require_dim(a, dim);
  // Products of band-limited fields need twice the bandwidth; evaluate them on a refined grid.
  const ContinuousField uf = refine2(w, u.spectrum());
  const SpatialWindow& fine = uf.window();
  const std::size_t nf = fine.points_per_axis();
  std::vector<double> weight(fine.size());
  std::vector<cplx> vspec(w.size());
  const auto spec = u.spectrum();
  const std::size_t n = w.points_per_axis();
  cplx total;
  for (const auto& term : a.terms) {
    for (std::size_t i = 0; i < vspec.size(); ++i) {
      const Vec2 xi = dim == 1 ? Vec2{w.freq(i), 0.0} : Vec2{w.freq(i / n), w.freq(i % n)};
      vspec[i] = spec[i] * xi_part(term, Vec2{eps * xi[0], eps * xi[1]}, dim);
    }
    const ContinuousField vf = refine2(w, vspec);
    for (std::size_t k = 0; k < weight.size(); ++k) {
      const Vec2 x = dim == 1 ? Vec2{fine.node(k), 0.0} : Vec2{fine.node(k / nf), fine.node(k % nf)};
      weight[k] = x_part(term, x, dim) * fine.cell_volume();
    }
    total += term.coeff * kernels::active().weighted_inner(uf.values().data(), vf.values().data(),
                                                           weight.data(), weight.size());
  }
  return total;
}

cplx pair_M(const DiscreteField& u, double eps, const TestFunction& a) {
  if (!(eps > 0.0)) throw BadParams("scale eps must be positive");
  const double ratio = u.h() / eps;
  if (ratio > 4.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "h / eps = " << ratio << " exceeds 4; the discrete phase-space density may be unbounded";
    throw RatioTooLarge(os.str());
  }
  require_dim(a, u.dim());
  return u.dim() == 1 ? pair_M_1d(u, eps, a) : pair_M_2d(u, eps, a);
}

PhaseSpaceField wigner_transform(const ContinuousField& u, double eps, std::size_t x_stride) {
  if (!(eps > 0.0)) throw BadParams("scale eps must be positive");
  if (x_stride == 0) throw BadParams("x stride must be positive");
  const auto& w = u.window();
  if (w.dim() != 1) throw BadParams("wigner_transform supports 1-D fields");
  const std::size_t n = w.points_per_axis();
  const std::size_t m = 2 * n;
  const double L = w.half_length();

  const auto uf_field = refine2(w, u.spectrum());
  const SpatialWindow& fine = uf_field.window();
  const auto uf = uf_field.values();

  PhaseSpaceField out;
  for (std::size_t j = 0; j < m; j += x_stride) out.xs.push_back(fine.node(j));
  out.xis.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.xis[k] = eps * kPi * (static_cast<double>(k) - static_cast<double>(n)) / (2.0 * L);
  }
  out.values.resize(out.xs.size() * m);
  const double scale = w.dx() / (kTwoPi * eps);
  const long half = static_cast<long>(n / 2);
  std::vector<cplx> r(m);
  std::size_t row = 0;
  for (std::size_t j = 0; j < m; j += x_stride, ++row) {
    std::fill(r.begin(), r.end(), cplx{});
    for (long l = -half + 1; l < half; ++l) {
      r[wrap(l, m)] = uf[wrap(static_cast<long>(j) - l, m)] * std::conj(uf[wrap(static_cast<long>(j) + l, m)]);
    }
    fft::inverse(r);
    for (std::size_t k = 0; k < m; ++k) {
      out.values[row * m + k] = scale * r[wrap(static_cast<long>(k) - static_cast<long>(n), m)];
    }
  }
  return out;
}

PhaseSpaceField wigner_series(const ContinuousField& u, double eps, std::span<const double> xs,
                              std::span<const double> xis) {
  if (!(eps > 0.0)) throw BadParams("scale eps must be positive");
  if (u.window().dim() != 1) throw BadParams("wigner_series supports 1-D fields");
  const double L = u.window().half_length();
  const long n_max = static_cast<long>(std::floor(2.0 * L / (eps * kPi)));
  const std::size_t terms = static_cast<std::size_t>(2 * n_max + 1);

  std::vector<double> pts;
  pts.reserve(xs.size() * terms * 2);
  for (double x : xs) {
    for (long n = -n_max; n <= n_max; ++n) {
      pts.push_back(x - eps * kPi * static_cast<double>(n));
      pts.push_back(x + eps * kPi * static_cast<double>(n));
    }
  }
  std::vector<double> inside(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) inside[i] = pts[i] >= -L && pts[i] < L ? 1.0 : 0.0;
  const auto vals = u.evaluate(pts);

  std::vector<double> reduced(xis.size());
  for (std::size_t k = 0; k < xis.size(); ++k) reduced[k] = reduce_angle(xis[k]);

  PhaseSpaceField out;
  out.xs.assign(xs.begin(), xs.end());
  out.xis.assign(xis.begin(), xis.end());
  out.values.assign(xs.size() * xis.size(), cplx{});
  std::vector<cplx> products(terms);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t t = 0; t < terms; ++t) {
      const std::size_t base = (i * terms + t) * 2;
      products[t] = vals[base] * inside[base] * std::conj(vals[base + 1] * inside[base + 1]);
    }
    // sum_n p_n e^{i n xi} = sum_t p_t exp(-i (first + t) * (-xi)), first = -n_max.
    std::vector<double> theta(xis.size());
    for (std::size_t k = 0; k < xis.size(); ++k) theta[k] = -reduced[k];
    kernels::active().trig_eval(products.data(), terms, -n_max, theta.data(), theta.size(),
                                out.values.data() + i * xis.size());
    for (std::size_t k = 0; k < xis.size(); ++k) out.values[i * xis.size() + k] /= kTwoPi;
  }
  return out;
}

double energy_density(const DiscreteField& u, const std::function<double(const Vec2&)>& phi) {
  const double h = u.h();
  double sum = 0.0;
  if (u.dim() == 1) {
    for (std::size_t i = 0; i < u.size(); ++i) sum += phi({u.node(i), 0.0}) * std::norm(u.values()[i]);
    return h * sum;
  }
  const auto ext = u.extent();
  const auto first = u.first();
  for (std::size_t i = 0; i < ext[0]; ++i) {
    for (std::size_t j = 0; j < ext[1]; ++j) {
      const Vec2 x{h * static_cast<double>(first[0] + static_cast<long>(i)),
                   h * static_cast<double>(first[1] + static_cast<long>(j))};
      sum += phi(x) * std::norm(u.values()[i * ext[1] + j]);
    }
  }
  return h * h * sum;
}

double energy_density(const DiscreteField& u, const Factor& phi) {
  if (u.dim() != 1) throw BadParams("a single factor pairs with 1-D energy densities");
  return energy_density(u, [&](const Vec2& x) { return phi(x[0]); });
}

ContinuousField rescaled_fourier(const ContinuousField& u, double eps) {
  if (!(eps > 0.0)) throw BadParams("scale eps must be positive");
  const auto& w = u.window();
  const std::size_t n = w.points_per_axis();
  const SpatialWindow target(w.dim(), eps * kPi * static_cast<double>(n) / (2.0 * w.half_length()), n);
  const double norm = std::pow(kTwoPi * eps, -0.5 * w.dim());
  const auto spec = u.spectrum();
  std::vector<cplx> values(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) values[i] = norm * spec[i];
  return ContinuousField(target, std::move(values));
}

OscillationDiagnostics oscillation_diagnostics(const ContinuousField& u, double eps, double R) {
  if (!(R > 0.0) || !(eps > 0.0)) throw BadParams("R and eps must be positive");
  const auto& w = u.window();
  const std::size_t n = w.points_per_axis();
  const int dim = w.dim();
  const auto spec = u.spectrum();
  const auto vals = u.values();
  double freq_tail = 0.0;
  double space_tail = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const Vec2 xi = dim == 1 ? Vec2{w.freq(k), 0.0} : Vec2{w.freq(k / n), w.freq(k % n)};
    const Vec2 x = dim == 1 ? Vec2{w.node(k), 0.0} : Vec2{w.node(k / n), w.node(k % n)};
    if (std::hypot(xi[0], xi[1]) >= R / eps) freq_tail += std::norm(spec[k]);
    if (std::hypot(x[0], x[1]) >= R) space_tail += std::norm(vals[k]);
  }
  return {freq_tail * std::pow(1.0 / (2.0 * w.half_length()), dim), space_tail * w.cell_volume()};
}

OscillationDiagnostics oscillation_diagnostics(const DiscreteField& u, double eps, double R) {
  if (!(R > 0.0) || !(eps > 0.0)) throw BadParams("R and eps must be positive");
  if (u.dim() != 1) throw BadParams("discrete oscillation diagnostics are 1-D");
  const double h = u.h();
  const std::size_t p = next_pow2(std::max<std::size_t>(8 * u.size(), 4096));
  const auto uhat = u.dft_grid(p);
  const double cut = R * h / eps;
  const double cell = kTwoPi / static_cast<double>(p);
  double freq_tail = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    const double xi = reduce_angle(cell * static_cast<double>(j));
    // Fraction of the cell around xi that lies beyond the cut.
    const double beyond = std::clamp((std::abs(xi) + 0.5 * cell - cut) / cell, 0.0, 1.0);
    freq_tail += beyond * std::norm(uhat[j]);
  }
  double space_tail = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u.node(i)) >= R) space_tail += std::norm(u.values()[i]);
  }
  return {h * freq_tail / static_cast<double>(p), h * space_tail};
}

PeriodicSpectrum periodic_spectrum(const DiscreteField& u) {
  if (u.dim() != 1) throw BadParams("periodic spectra are 1-D");
  PeriodicSpectrum s;
  s.value = [u](double xi) { return u.dft(xi); };
  s.resolution = std::min(0.05, kTwoPi / (2.0 * static_cast<double>(std::max<std::size_t>(u.size(), 1))));
  return s;
}

double sigma_weighted_mass(const PeriodicSpectrum& spectrum, double h, const Profile& phi, double s,
                           double R) {
  std::vector<double> breaks = spectrum.breakpoints;
  breaks.push_back(0.0);
  const double reach = kTwoPi * (R + 64.0);
  for (double d : phi.discontinuities(-reach, reach)) breaks.push_back(reduce_angle(d));
  if (phi.kind() == ProfileKind::ceosc) {
    for (int n = 1; n <= 60; ++n) breaks.push_back(ce_osc_node(n));
  }
  auto f = [&](double xi) {
    const double sigma = sigma_tail(phi, s, R, xi, 1e-14).value;
    if (sigma == 0.0) return 0.0;
    return sigma * h * std::norm(spectrum.value(xi));
  };
  return quad::composite(quad::RealFn(f), -kPi, kPi, breaks, 16, spectrum.resolution);
}

}  // namespace phasefold
