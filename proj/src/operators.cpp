#include "phasefold/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "phasefold/errors.hpp"
#include "phasefold/fft.hpp"
#include "phasefold/kernels.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// P when 2L/h is an integer (FFT folding path), otherwise 0.
std::size_t fold_length(double half_length, double h) {
  const double p = 2.0 * half_length / h;
  const double r = std::round(p);
  if (r >= 1.0 && std::abs(p - r) <= 1e-9 * r && r <= 1e8) return static_cast<std::size_t>(r);
  return 0;
}

// h * freq(i) on the lattice phase grid; exact multiples of pi when 2L/h = p is an integer.
double lattice_phase(const SpatialWindow& w, double h, std::size_t p, std::size_t i) {
  if (p == 0) return h * w.freq(i);
  const long m = static_cast<long>(i) - static_cast<long>(w.points_per_axis() / 2);
  return kPi * (static_cast<double>(2 * m) / static_cast<double>(p));
}

std::size_t wrap(long m, std::size_t p) {
  const long lp = static_cast<long>(p);
  return static_cast<std::size_t>(((m % lp) + lp) % lp);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// U-hat at h * xi_m for every frequency slot of a 1-D window.
std::vector<cplx> discrete_spectrum_on_grid(const DiscreteField& u, double h, const SpatialWindow& w) {
  const std::size_t n = w.points_per_axis();
  std::vector<cplx> out(n);
  if (const std::size_t p = fold_length(w.half_length(), h); p != 0) {
    const auto grid = u.dft_grid(p);
    for (std::size_t i = 0; i < n; ++i) out[i] = grid[wrap(static_cast<long>(i) - static_cast<long>(n / 2), p)];
  } else {
    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i) theta[i] = h * w.freq(i);
    out = u.dft_many(theta);
  }
  return out;
}

double truncated_fraction_1d(const DiscreteField& u, const Profile& phi, double h,
                             const SpatialWindow& w, std::span<const cplx> spectrum) {
  const double band = h * w.max_freq();
  if (auto support = phi.fourier_support(); support && support->first >= -band && support->second <= band) {
    return 0.0;
  }
  const std::size_t pq = std::clamp<std::size_t>(next_pow2(2 * u.size() + 64), 1024, std::size_t{1} << 20);
  const auto uhat = u.dft_grid(pq);
  double total = 0.0;
  for (std::size_t j = 0; j < pq; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(pq);
    total += tau(phi, 0.0, theta, 1e-14).value * std::norm(uhat[j]);
  }
  total *= h / static_cast<double>(pq);
  double captured = 0.0;
  for (const auto& v : spectrum) captured += std::norm(v);
  captured /= 2.0 * w.half_length();
  if (!(total > 0.0)) return 0.0;
  return std::max(0.0, total - captured) / total;
}

ContinuousField spatial_synthesis(const DiscreteField& u, const Profile& phi, double h,
                                  const SpatialWindow& w) {
  const std::size_t n = w.points_per_axis();
  const double dx = w.dx();
  const double L = w.half_length();
  const auto [a, b] = phi.spatial_support();
  std::vector<cplx> values(n);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx c = u.values()[i];
    if (c == cplx{}) continue;
    const double center = static_cast<double>(u.index(i));
    const long j0 = static_cast<long>(std::floor((h * (center + a) + L) / dx)) - 1;
    const long j1 = static_cast<long>(std::ceil((h * (center + b) + L) / dx)) + 1;
    for (long j = j0; j <= j1; ++j) {
      const double x = -L + static_cast<double>(j) * dx;
      const double v = phi.spatial(x / h - center);
      if (v != 0.0) values[wrap(j, n)] += c * v;
    }
  }
  return ContinuousField(w, std::move(values));
}

void check_edge(const ContinuousField& u, double budget) {
  if (!std::isfinite(budget)) return;
  const double edge = u.spectral_edge_fraction();
  if (edge > budget) {
    std::ostringstream os;
    os << "field is not resolved by the window: spectral mass fraction " << edge
       << " in the outer frequency band exceeds " << budget;
    throw WindowTooSmall(os.str());
  }
}

}  // namespace

std::pair<long, std::size_t> sample_index_range(double half_length, double h) {
  const long lo = static_cast<long>(std::ceil(-half_length / h - 1e-9));
  const long hi = static_cast<long>(std::ceil(half_length / h - 1e-9));
  return {lo, static_cast<std::size_t>(std::max(0L, hi - lo))};
}

ReconstructResult reconstruct_detailed(const DiscreteField& u, const Profile& phi, double h,
                                       const SpatialWindow& window, const ReconstructOptions& opts) {
  if (!(h > 0.0)) throw BadParams("reconstruction step h must be positive");
  if (phi.kind() == ProfileKind::delta) {
    throw BadParams("reconstruction with the Dirac profile is a lattice comb and is not materialized");
  }
  if (u.dim() != window.dim()) throw BadParams("field and window dimensions differ");
  if (std::abs(u.h() - h) > 1e-12 * h) throw BadParams("discrete field step differs from h");

  if (window.dim() == 2) {
    if (opts.synthesis == Synthesis::spatial) throw BadParams("spatial synthesis is 1-D only");
    const std::size_t p = fold_length(window.half_length(), h);
    if (p == 0) throw BadParams("2-D reconstruction needs 2L/h to be an integer");
    const std::size_t n = window.points_per_axis();
    std::vector<cplx> folded(p * p);
    for (std::size_t i = 0; i < u.extent()[0]; ++i) {
      for (std::size_t j = 0; j < u.extent()[1]; ++j) {
        folded[wrap(u.first()[0] + static_cast<long>(i), p) * p + wrap(u.first()[1] + static_cast<long>(j), p)] +=
            u.values()[i * u.extent()[1] + j];
      }
    }
    fft::forward_2d(folded, p, p);
    std::vector<cplx> spec(n * n);
    const long half = static_cast<long>(n / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const long m1 = static_cast<long>(i) - half;
        const long m2 = static_cast<long>(j) - half;
        const Vec2 xi{lattice_phase(window, h, p, i), lattice_phase(window, h, p, j)};
        spec[i * n + j] = phi.fourier_at(xi, 2) * h * h * folded[wrap(m1, p) * p + wrap(m2, p)];
      }
    }
    return {ContinuousField::from_spectrum(window, std::move(spec)), 0.0, Synthesis::spectral};
  }

  if (opts.synthesis == Synthesis::spatial) {
    if (!phi.has_spatial_kernel()) throw BadParams(phi.name() + " has no closed-form spatial kernel");
    return {spatial_synthesis(u, phi, h, window), 0.0, Synthesis::spatial};
  }

  const auto uhat = discrete_spectrum_on_grid(u, h, window);
  const std::size_t p = fold_length(window.half_length(), h);
  std::vector<cplx> spec(uhat.size());
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = phi.fourier_at(lattice_phase(window, h, p, i)) * h * uhat[i];
  const double fraction = std::isfinite(opts.truncation_budget)
                              ? truncated_fraction_1d(u, phi, h, window, spec)
                              : 0.0;
  if (fraction > opts.truncation_budget) {
    if (opts.synthesis == Synthesis::automatic && phi.has_spatial_kernel()) {
      return {spatial_synthesis(u, phi, h, window), fraction, Synthesis::spatial};
    }
    std::ostringstream os;
    os << "reconstruction with " << phi.name() << " loses a fraction " << fraction
       << " of its energy outside the frequency window (budget " << opts.truncation_budget << ")";
    throw WindowTooSmall(os.str());
  }
  return {ContinuousField::from_spectrum(window, std::move(spec)), fraction, Synthesis::spectral};
}

ContinuousField reconstruct(const DiscreteField& u, const Profile& phi, double h,
                            const SpatialWindow& window, const ReconstructOptions& opts) {
  return reconstruct_detailed(u, phi, h, window, opts).field;
}

DiscreteField sample(const ContinuousField& u, const Profile& phi, double h, const SampleOptions& opts) {
  if (!(h > 0.0)) throw BadParams("sampling step h must be positive");
  const auto& w = u.window();
  check_edge(u, opts.edge_budget);
  const auto spec = u.spectrum();
  const std::size_t n = w.points_per_axis();
  const long half = static_cast<long>(n / 2);
  const double L = w.half_length();
  const auto [first, count] = sample_index_range(L, h);
  const std::size_t p = fold_length(L, h);

  if (w.dim() == 2) {
    if (p == 0) throw BadParams("2-D sampling needs 2L/h to be an integer");
    std::vector<cplx> folded(p * p);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vec2 xi{lattice_phase(w, h, p, i), lattice_phase(w, h, p, j)};
        folded[wrap(static_cast<long>(i) - half, p) * p + wrap(static_cast<long>(j) - half, p)] +=
            std::conj(phi.fourier_at(xi, 2)) * spec[i * n + j];
      }
    }
    fft::inverse_2d(folded, p, p);
    const double norm = 1.0 / (4.0 * L * L);
    std::vector<cplx> values(count * count);
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        values[a * count + b] = norm * folded[wrap(first + static_cast<long>(a), p) * p +
                                              wrap(first + static_cast<long>(b), p)];
      }
    }
    return DiscreteField(h, {first, first}, {count, count}, std::move(values));
  }

  std::vector<cplx> weighted(n);
  for (std::size_t i = 0; i < n; ++i) weighted[i] = std::conj(phi.fourier_at(lattice_phase(w, h, p, i))) * spec[i];
  std::vector<cplx> values(count);
  const double norm = 1.0 / (2.0 * L);
  if (p != 0) {
    std::vector<cplx> folded(p);
    for (std::size_t i = 0; i < n; ++i) folded[wrap(static_cast<long>(i) - half, p)] += weighted[i];
    fft::inverse(folded);
    for (std::size_t k = 0; k < count; ++k) values[k] = norm * folded[wrap(first + static_cast<long>(k), p)];
  } else {
    std::vector<double> theta(count);
    for (std::size_t k = 0; k < count; ++k) {
      theta[k] = -h * static_cast<double>(first + static_cast<long>(k)) * kPi / L;
    }
    kernels::active().trig_eval(weighted.data(), n, -half, theta.data(), count, values.data());
    for (auto& v : values) v *= norm;
  }
  return DiscreteField(h, first, std::move(values));
}

DiscreteField discretize(const ContinuousField& u, double h, const SampleOptions& opts) {
  return sample(u, Profile::delta(), h, opts);
}

ContinuousField project(const ContinuousField& u, const Profile& psi, double s, double h,
                        const ReconstructOptions& opts) {
  const Profile dual = dual_profile(psi, s);
  const ContinuousField lifted = s == 0.0 ? u : bessel_multiplier(u, s, h);
  const DiscreteField coeffs = sample(lifted, dual, h, {std::numeric_limits<double>::infinity()});
  return reconstruct(coeffs, psi, h, u.window(), opts);
}

cplx poisson_fold(const std::function<cplx(double)>& u_hat, const Profile& phi, double h, double xi,
                  double tol) {
  cplx sum = std::conj(phi.fourier_at(h * xi)) * u_hat(xi);
  for (int sign : {1, -1}) {
    int quiet = 0;
    for (long n = 1; n < 1000000 && quiet < 4; ++n) {
      const double k = static_cast<double>(sign * n);
      const cplx term = std::conj(phi.fourier_at(h * xi + kTwoPi * k)) * u_hat(xi + kTwoPi * k / h);
      sum += term;
      quiet = std::abs(term) < tol ? quiet + 1 : 0;
    }
  }
  return sum;
}

OperatorNormCertificate certify_norm(const Profile& phi, double s, int grid_points) {
  const auto c = basis_classify(phi, s, grid_points, 1e-9);
  return {c.upper, s, grid_points, c.argmax};
}

cplx inner(const ContinuousField& f, const ContinuousField& g) {
  if (!(f.window() == g.window())) throw BadParams("inner product of fields on different windows");
  const auto a = f.values();
  const auto b = g.values();
  std::vector<double> w(a.size(), f.window().cell_volume());
  return std::conj(kernels::active().weighted_inner(a.data(), b.data(), w.data(), a.size()));
}

cplx inner(const DiscreteField& u, const DiscreteField& v) {
  if (u.dim() != 1 || v.dim() != 1) throw BadParams("discrete inner product is 1-D");
  if (std::abs(u.h() - v.h()) > 1e-12 * u.h()) throw BadParams("discrete fields on different grids");
  const long lo = std::max(u.first()[0], v.first()[0]);
  const long hi = std::min(u.first()[0] + static_cast<long>(u.size()), v.first()[0] + static_cast<long>(v.size()));
  cplx sum;
  for (long n = lo; n < hi; ++n) {
    sum += u.values()[static_cast<std::size_t>(n - u.first()[0])] *
           std::conj(v.values()[static_cast<std::size_t>(n - v.first()[0])]);
  }
  return u.h() * sum;
}

BoundsReport verify_bounds(const Profile& phi, double s, int trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw BadParams("verify_bounds needs at least one trial");
  const auto cert = certify_norm(phi, s);
  const double root_b = std::sqrt(cert.bound);
  const bool has_t = phi.kind() != ProfileKind::delta;

  struct Outcome {
    double ratio_t = 0.0, ratio_s = 0.0, adjoint = 0.0;
    std::string instance;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));

  auto run_trial = [&](int t) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t + 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> pick(8, 64);
    const SpatialWindow w(1, 8.0, 1024);
    const int p = pick(rng);
    const double h = 2.0 * w.half_length() / p;
    Outcome out;
    std::ostringstream inst;
    inst << "trial " << t << " (h=" << h << ", s=" << s << ", profile " << phi.name() << ")";
    out.instance = inst.str();

    std::vector<cplx> spec(w.size());
    for (auto& c : spec) c = {gauss(rng), gauss(rng)};
    const auto u = ContinuousField::from_spectrum(w, std::move(spec));
    const auto su = sample(u, phi, h, {std::numeric_limits<double>::infinity()});
    const auto u_low = bessel_multiplier(u, -s, h);
    out.ratio_s = su.norm() / (root_b * u_low.norm());

    if (has_t) {
      const auto [first, count] = sample_index_range(w.half_length(), h);
      std::vector<cplx> coeffs(count);
      for (auto& c : coeffs) c = {gauss(rng), gauss(rng)};
      const DiscreteField U(h, first, std::move(coeffs));
      const auto tu = reconstruct(U, phi, h, w, {Synthesis::spectral, std::numeric_limits<double>::infinity()});
      const auto tu_high = bessel_multiplier(tu, s, h);
      out.ratio_t = tu_high.norm() / (root_b * U.norm());
      const cplx lhs = inner(tu_high, u_low);
      const cplx rhs = inner(U, su);
      const double scale = tu_high.norm() * u_low.norm();
      out.adjoint = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
    }
    outcomes[static_cast<std::size_t>(t)] = std::move(out);
  };

  const int workers = std::max(1, std::min(threads, trials));
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (int wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&, wkr] {
        for (int t = wkr; t < trials; t += workers) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  BoundsReport report{cert, trials, 0.0, 0.0, 0.0};
  for (const auto& o : outcomes) {
    const auto fail = [&](const char* what, double value) {
      std::ostringstream os;
      os << what << " violated at " << o.instance << ": " << value;
      throw CertificateViolated(os.str());
    };
    if (o.ratio_t > 1.0 + 1e-6) fail("reconstruction bound", o.ratio_t);
    if (o.ratio_s > 1.0 + 1e-6) fail("sampling bound", o.ratio_s);
    if (o.adjoint > 1e-7) fail("adjoint identity", o.adjoint);
    report.max_reconstruct_ratio = std::max(report.max_reconstruct_ratio, o.ratio_t);
    report.max_sample_ratio = std::max(report.max_sample_ratio, o.ratio_s);
    report.max_adjoint_error = std::max(report.max_adjoint_error, o.adjoint);
  }
  return report;
}

}  // namespace phasefold
