// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "phasefold/errors.hpp"
#include "phasefold/experiments.hpp"
#include "phasefold/fft.hpp"
#include "phasefold/operators.hpp"
#include "phasefold/profiles.hpp"
#include "phasefold/wigner.hpp"

using namespace phasefold;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Criterion {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what, double value) {
    if (cond) return;
    ok = false;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g", detail.empty() ? "" : "; ", what.c_str(), value);
    detail += buf;
  }
};

std::map<std::string, ConvergenceReport> reports;

const ConvergenceReport& report(const std::string& name) {
  auto it = reports.find(name);
  if (it == reports.end()) it = reports.emplace(name, run_convergence(*find_experiment(name))).first;
  return it->second;
}

std::vector<const ReportRow*> rows_at(const ConvergenceReport& rep, int k) {
  std::vector<const ReportRow*> out;
  for (const auto& r : rep.rows) {
    if (r.k == k) out.push_back(&r);
  }
  return out;
}

// Error at k = 128 below tol and non-increasing (10% slack) over the last three k, per observable.
void convergence(Criterion& c, const std::string& name, double tol) {
  const auto& rep = report(name);
  c.require(!rows_at(rep, 128).empty(), name + " rows at k=128", 0.0);
  for (const auto* r : rows_at(rep, 128)) c.require(r->abs_err < tol, name + " [" + r->test + "] err", r->abs_err);
  for (const auto& o : rep.observables) c.require(o.trend_ok, name + " [" + o.name + "] trend", o.final_error);
}

double predicted_of(const std::string& name, const std::string& test) {
  for (const auto& r : report(name).rows) {
    if (r.test == test) return r.predicted;
  }
  return std::nan("");
}

ContinuousField gaussian(const SpatialWindow& w, double x0, double xi0) {
  return ContinuousField::from_function(
      w, [&](double x) { return std::exp(-0.5 * (x - x0) * (x - x0)) * std::polar(1.0, xi0 * x); });
}

double distance(const ContinuousField& a, const ContinuousField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += std::norm(a.values()[i] - b.values()[i]);
  return std::sqrt(a.window().cell_volume() * s);
}

Criterion identities() {
  Criterion c;
  {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<cplx> a(4096);
    for (auto& z : a) z = {g(rng), g(rng)};
    auto b = a;
    fft::forward(b);
    fft::inverse(b);
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(b[i] / 4096.0 - a[i]));
    c.require(err < 1e-12, "fft round trip", err);
  }
  const SpatialWindow w(1, 16.0, 1024);
  const auto u = gaussian(w, 0.3, 1.5);
  {
    double spec_mass = 0.0;
    for (const auto& s : u.spectrum()) spec_mass += std::norm(s);
    spec_mass *= w.dual_cell_volume();
    const double err = std::abs(u.norm() * u.norm() - spec_mass);
    c.require(err < 1e-8, "parseval", err);
  }
  {
    const auto g = gaussian(w, 0.0, 0.0);
    const double h = 0.75;
    const auto U = discretize(g, h, {kInf});
    double worst = 0.0;
    for (int j = 0; j < 32; ++j) {
      const double theta = -kPi + 2.0 * kPi * j / 32.0;
      double rhs = 0.0;
      for (int m = -40; m <= 40; ++m) {
        const double xi = (theta + 2.0 * kPi * m) / h;
        rhs += std::sqrt(2.0 * kPi) * std::exp(-0.5 * xi * xi);
      }
      worst = std::max(worst, std::abs(U.dft(theta) - rhs / h));
    }
    c.require(worst < 1e-8, "poisson", worst);
  }
  {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    const double h = 0.5;
    std::vector<cplx> spec(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double t = std::abs(w.freq(i)) / (0.95 * kPi / h);
      if (t < 1.0) spec[i] = cplx(g(rng), g(rng)) * std::exp(-1.0 / (1.0 - t * t));
    }
    const double err = shannon_roundtrip(ContinuousField::from_spectrum(w, std::move(spec)), h);
    c.require(err < 1e-9, "shannon", err);
  }
  for (const Profile& p : {Profile::sinc(), Profile::bspline(0), Profile::bspline(1), Profile::bspline(3),
                           Profile::haar(), Profile::gaussian(0.7)}) {
    const auto rep = verify_bounds(p, 0.0, 200, 17);
    c.require(rep.max_reconstruct_ratio <= 1.0 + 1e-6, p.name() + " reconstruct ratio", rep.max_reconstruct_ratio);
    c.require(rep.max_sample_ratio <= 1.0 + 1e-6, p.name() + " sample ratio", rep.max_sample_ratio);
    c.require(rep.max_adjoint_error < 1e-8, p.name() + " adjoint", rep.max_adjoint_error);
  }
  {
    const SpatialWindow pw(1, 8.0, 1024);
    const auto a = gaussian(pw, 0.3, 4.0);
    const auto b = gaussian(pw, -0.5, -2.0);
    const ReconstructOptions spectral{Synthesis::spectral, kInf};
    const Profile psi = Profile::gaussian(0.5);
    const auto pa = project(a, psi, 0.0, 0.125, spectral);
    const double idem = distance(pa, project(pa, psi, 0.0, 0.125, spectral)) / a.norm();
    c.require(idem < 1e-7, "projection idempotency", idem);
    const double adj = std::abs(inner(pa, b) - inner(a, project(b, psi, 0.0, 0.125, spectral)));
    c.require(adj < 1e-7, "projection self-adjointness", adj);
  }
  {
    const SpatialWindow ww(1, 8.0, 256);
    const double eps = 0.5;
    const auto p = gaussian(ww, 0.5, 2.0);
    const auto W = wigner_transform(p, eps);
    double worst = 0.0;
    for (std::size_t i = 0; i < W.xs.size(); ++i) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < W.xis.size(); ++k) s += W.at(i, k);
      const double x = W.xs[i];
      worst = std::max(worst, std::abs(s * W.dxi() - std::exp(-(x - 0.5) * (x - 0.5))));
    }
    const double dx = W.xs[1] - W.xs[0];
    for (std::size_t k = 0; k < W.xis.size(); ++k) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < W.xs.size(); ++i) s += W.at(i, k);
      const double t = W.xis[k] / eps - 2.0;
      worst = std::max(worst, std::abs(s * dx - std::exp(-t * t) / eps));
    }
    c.require(worst < 1e-6, "wigner marginals", worst);
  }
  {
    const double h = 1.0 / 32.0;
    const auto U = discretize(gaussian(SpatialWindow(1, 16.0, 2048), 0.0, 64.0), h, {kInf});
    const Factor phi = Factor::gauss(0.0, 1.0);
    double worst = 0.0;
    for (double c0 : {0.5, 2.0, -1.0}) {
      const cplx a = pair_M(U, h, TestFunction::separable(phi, Factor::bump(c0, 1.0)));
      const cplx b = pair_M(U, h, TestFunction::separable(phi, Factor::bump(c0 + 2.0 * kPi, 1.0)));
      worst = std::max(worst, std::abs(a - b));
    }
    c.require(worst < 1e-10, "pair_M periodicity", worst);
    for (const Profile& p : {Profile::bspline(1), Profile::haar(), Profile::gaussian(1.3)}) {
      for (double xi : {-2.0, 0.3, 1.7}) {
        const double d = std::abs(tau(p, 0.0, xi + 2.0 * kPi).value - tau(p, 0.0, xi).value);
        worst = std::max(worst, d);
      }
    }
    c.require(worst < 1e-10, "tau periodicity", worst);
  }
  return c;
}

Criterion tau_values() {
  Criterion c;
  for (int j = 0; j < 512; ++j) {
    const double xi = -kPi + 2.0 * kPi * j / 512.0;
    const double v = tau(Profile::sinc(), 0.0, xi).value;
    if (v != 1.0) c.require(false, "tau_sinc", v);
  }
  double oracle = 0.0;
  for (long n = 500000; n >= -499999; --n) {
    const double m = (2.0 * static_cast<double>(n) - 1.0) * kPi;
    oracle += 16.0 / (m * m * m * m);
  }
  const double t = tau(Profile::bspline(1), 0.0, kPi).value;
  c.require(std::abs(t - oracle) < 1e-6, "tau_B1(pi) - series", std::abs(t - oracle));
  const auto sinc = basis_classify(Profile::sinc(), 0.0, 4096, 1e-12);
  c.require(sinc.verdict == BasisVerdict::orthonormal, "sinc classified orthonormal", 0.0);
  const auto b1 = basis_classify(Profile::bspline(1), 0.0, 4096, 1e-12);
  c.require(b1.verdict == BasisVerdict::riesz, "B1 classified riesz", 0.0);
  c.require(std::abs(b1.lower - 1.0 / 3.0) < 1e-3, "B1 lower bound - 1/3", std::abs(b1.lower - 1.0 / 3.0));
  return c;
}

Criterion canonical_limits() {
  Criterion c;
  for (const char* kind : {"concentrating", "oscillating"}) {
    for (const char* regime : {"finer", "matched", "coarser"}) {
      convergence(c, std::string("canonical-") + kind + "-" + regime, 2e-2);
    }
  }
  // Closed forms of the limits against the test functions each case uses.
  const double r23 = std::sqrt(2.0 / 3.0);
  const std::vector<std::tuple<std::string, std::string, double>> limits{
      {"canonical-concentrating-finer", "gauss_x:0.5,1 x gauss_xi:0,1", 1.0},
      {"canonical-concentrating-finer", "gauss_x:0.5,0.5 x gauss_xi:1,0.5", std::exp(-2.0)},
      {"canonical-concentrating-matched", "gauss_x:0.5,1 x gauss_xi:0,1", r23},
      {"canonical-concentrating-matched", "gauss_x:0.5,0.5 x gauss_xi:1,0.5", std::exp(-4.0 / 6.0) / std::sqrt(3.0)},
      {"canonical-concentrating-coarser", "gauss_x:0.5,1 x bump_xi:0,0.5", 0.0},
      {"canonical-oscillating-finer", "gauss_x:0,1 x gauss_xi:2,0.5", r23 * std::exp(-8.0)},
      {"canonical-oscillating-finer", "gauss_x:0,1 x gauss_xi:0.5,1", r23 * std::exp(-0.125)},
      {"canonical-oscillating-matched", "gauss_x:0,1 x gauss_xi:2,0.5", r23},
      {"canonical-oscillating-matched", "gauss_x:0,1 x gauss_xi:0.5,1", r23 * std::exp(-1.125)},
      {"canonical-oscillating-coarser", "gauss_x:0,1 x bump_xi:2,0.5", 0.0}};
  for (const auto& [name, test, value] : limits) {
    const double d = std::abs(predicted_of(name, test) - value);
    c.require(d < 1e-9, name + " [" + test + "] prediction - closed form", d);
  }
  return c;
}

Criterion sampling_theorem() {
  Criterion c;
  convergence(c, "discretized-oscillating", 2e-2);
  const double r23 = std::sqrt(2.0 / 3.0);
  const auto& rep = report("discretized-oscillating");
  for (const auto& o : rep.observables) {
    const bool on_comb = o.name.find("bump_xi:0,") == std::string::npos;
    const double d = std::abs(predicted_of("discretized-oscillating", o.name) - (on_comb ? r23 : 0.0));
    c.require(d < 1e-9, "comb prediction [" + o.name + "]", d);
  }
  for (const auto& ch : rep.checks) c.require(ch.passed, ch.name, ch.value);
  return c;
}

Criterion composition_and_defect() {
  Criterion c;
  convergence(c, "composition-bspline0-bspline1", 2e-2);
  convergence(c, "shannon-asymptotic", 2e-2);
  // sum_k |psi-hat(xi0 + 2 pi k)|^2 |phi-hat(xi0)|^2 with xi0 = 2, phi = B0, psi = B1.
  const double b0 = std::pow(std::sin(1.0), 2.0);
  double folded = 0.0;
  for (long k = -200000; k <= 200000; ++k) {
    const double half = 1.0 + kPi * static_cast<double>(k);
    folded += std::pow(std::sin(half) / half, 4.0);
  }
  const double d = std::abs(predicted_of("composition-bspline0-bspline1", "mass") - b0 * folded);
  c.require(d < 1e-9, "composition mass prediction", d);
  c.require(std::abs(predicted_of("shannon-asymptotic", "mass") - 1.0) < 1e-12, "shannon mass prediction",
            predicted_of("shannon-asymptotic", "mass"));
  return c;
}

Criterion counterexamples() {
  Criterion c;
  for (int i = 1; i <= 3; ++i) {
    const std::string name = "counterexample-" + std::to_string(i);
    const auto& rep = report(name);
    c.require(!rep.gate.empty(), name + " gate fired", 0.0);
    c.require(!rows_at(rep, 128).empty(), name + " rows at k=128", 0.0);
    for (const auto* r : rows_at(rep, 128)) {
      c.require(r->abs_err < 2e-2, name + " corrected err", r->abs_err);
      c.require(r->naive_err && *r->naive_err > 1e-1, name + " naive err", r->naive_err.value_or(0.0));
    }
  }
  for (const auto& e : registry()) {
    const auto spec = e.build();
    if (spec.counterexample) continue;
    c.require(report(e.name).gate.empty(), e.name + " raised a gate", 1.0);
  }
  return c;
}

Criterion fine_sampling() {
  Criterion c;
  const auto& haar = report("filtering-haar");
  const auto haar_last = rows_at(haar, 128);
  c.require(!haar_last.empty() && haar_last[0]->value.real() < 5e-2, "haar mass",
            haar_last.empty() ? 1.0 : haar_last[0]->value.real());
  convergence(c, "filtering-sinc", 2e-2);
  const double sinc_mass = predicted_of("filtering-sinc", "mass");
  c.require(std::abs(sinc_mass - 1.0) < 1e-12, "sinc predicted mass", sinc_mass);
  for (const char* name : {"filtering-haar", "filtering-sinc"}) {
    for (const auto& ch : report(name).checks) c.require(ch.passed, std::string(name) + " " + ch.name, ch.value);
  }
  return c;
}

Criterion h_oscillation() {
  Criterion c;
  const auto ce = *find_experiment("ce-osc");
  for (double R : {2.0, 5.0, 10.0}) {
    const double v = h_oscillation_diagnostic(ce, ce.schedule.ks.back(), R);
    c.require(v >= 0.99, "ce-osc sigma mass R=" + std::to_string(static_cast<int>(R)), v);
  }
  int decaying = 0;
  for (const auto& e : registry()) {
    const auto spec = e.build();
    if (!spec.gate.empty() || spec.family.kind == FamilyKind::ce_osc) continue;
    const auto prof = spec.pipeline.reconstruction_profile();
    if (!prof) continue;
    ++decaying;
    const double v = h_oscillation_diagnostic(spec, spec.schedule.ks.back(), 10.0);
    c.require(v < 1e-2, e.name + " sigma mass R=10", v);
  }
  c.require(decaying > 0, "decaying-profile experiments", decaying);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion (*)()>> criteria{
      {"1 exact identities", identities},
      {"2 tau values and basis classification", tau_values},
      {"3 canonical Wigner limits", canonical_limits},
      {"4 sampling theorem", sampling_theorem},
      {"5 composition and defect mass", composition_and_defect},
      {"6 counterexamples and gates", counterexamples},
      {"7 h << eps filtering", fine_sampling},
      {"8 h-oscillation pathology", h_oscillation}};
  int failed = 0;
  for (const auto& [label, fn] : criteria) {
    Criterion c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %s%s%s\n", c.ok ? "PASS" : "FAIL", label, c.detail.empty() ? "" : ": ",
                c.detail.c_str());
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
