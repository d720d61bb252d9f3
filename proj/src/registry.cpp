#include <cmath>
#include <numbers>

#include "phasefold/errors.hpp"
#include "phasefold/experiments.hpp"

namespace phasefold {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScaleSchedule schedule(const char* h, const char* eps, std::vector<int> ks = {4, 8, 16, 32, 64, 128}) {
  ScaleSchedule s;
  s.ks = std::move(ks);
  if (h) s.h = PowerRule::parse(h);
  s.eps = PowerRule::parse(eps);
  return s;
}

ExperimentSpec base(std::string name, std::string anchor, std::string family, FamilyParams params,
                    ScaleSchedule sched, Pipeline pipeline) {
  ExperimentSpec spec;
  spec.name = std::move(name);
  spec.anchor = std::move(anchor);
  spec.family = make_family(family, params);
  spec.schedule = std::move(sched);
  spec.pipeline = std::move(pipeline);
  return spec;
}

// Derives the prediction through the gated measure algebra, recording a gate that fires.
PredictedMeasure derive(ExperimentSpec& spec) {
  try {
    auto mu = predict(spec.family, spec.schedule, spec.pipeline, true);
    spec.predicted_description = mu.describe();
    return mu;
  } catch (const NDViolated& e) {
    spec.gate = e.kind();
    spec.gate_message = e.what();
  } catch (const MSViolated& e) {
    spec.gate = e.kind();
    spec.gate_message = e.what();
  }
  return {};
}

void pairing(ExperimentSpec& spec, const std::string& test, const PredictedMeasure& mu,
             const PredictedMeasure* naive = nullptr) {
  Observable o;
  o.name = test;
  o.kind = ObservableKind::pairing;
  o.test = parse_test_function(test);
  o.predicted = pair_predicted(mu, *o.test);
  if (naive) o.naive = pair_predicted(*naive, *o.test);
  spec.observables.push_back(std::move(o));
}

void mass(ExperimentSpec& spec) {
  Observable o;
  o.name = "mass";
  o.kind = ObservableKind::mass;
  o.predicted = predicted_mass(spec.family, spec.schedule, spec.pipeline);
  spec.observables.push_back(std::move(o));
}

ExperimentSpec canonical(ExampleKind kind, ScaleRegime regime) {
  const bool conc = kind == ExampleKind::concentrating;
  const char* eps = regime == ScaleRegime::finer ? "k^-2" : regime == ScaleRegime::matched ? "1/k" : "k^-0.25";
  const char* rname = regime == ScaleRegime::finer ? "finer" : regime == ScaleRegime::matched ? "matched" : "coarser";
  FamilyParams p;
  if (conc) p.x0 = 0.5;
  std::string anchor;
  if (conc) {
    anchor = regime == ScaleRegime::finer     ? "k^{1/2} rho(k(x-x0)) at eps k -> 0: mu = delta_{x0} x delta_0"
             : regime == ScaleRegime::matched ? "k^{1/2} rho(k(x-x0)) at eps = 1/k: mu = delta_{x0} x |rho-hat|^2 / (2 pi)"
                                              : "k^{1/2} rho(k(x-x0)) at eps k -> infinity: mu = 0";
  } else {
    anchor = regime == ScaleRegime::finer     ? "rho(x) e^{i k x xi0} at eps k -> 0: mu = |rho|^2 x delta_0"
             : regime == ScaleRegime::matched ? "rho(x) e^{i k x xi0} at eps = 1/k: mu = |rho|^2 x delta_{xi0}"
                                              : "rho(x) e^{i k x xi0} at eps k -> infinity: mu = 0";
  }
  auto spec = base(std::string("canonical-") + (conc ? "concentrating-" : "oscillating-") + rname, anchor,
                   conc ? "concentrating" : "oscillating", p, schedule(nullptr, eps), Pipeline{});
  const auto mu = derive(spec);
  if (regime == ScaleRegime::coarser) {
    // Mass escapes to |xi| = infinity at rate 1/(eps k); compact xi-windows keep the test sharp.
    pairing(spec, conc ? "gauss_x:0.5,1 x bump_xi:0,0.5" : "gauss_x:0,1 x bump_xi:0,0.5", mu);
    pairing(spec, conc ? "gauss_x:0.5,1 x bump_xi:1.5,0.5" : "gauss_x:0,1 x bump_xi:2,0.5", mu);
  } else if (conc) {
    pairing(spec, "gauss_x:0.5,1 x gauss_xi:0,1", mu);
    pairing(spec, "gauss_x:0.5,0.5 x gauss_xi:1,0.5", mu);
  } else {
    pairing(spec, "gauss_x:0,1 x gauss_xi:2,0.5", mu);
    pairing(spec, "gauss_x:0,1 x gauss_xi:0.5,1", mu);
  }
  return spec;
}

ExperimentSpec discretized_oscillating() {
  auto spec = base("discretized-oscillating",
                   "S_delta^h of rho(x) e^{i k x xi0} at h = eps = 1/k: mu = |rho|^2 x sum_n delta_{xi0 + 2 pi n}",
                   "oscillating", {}, schedule("1/k", "1/k"), parse_pipeline("sample", Profile::delta(), {}, 0.0));
  const auto mu = derive(spec);
  pairing(spec, "gauss_x:0,1 x bump_xi:2,1", mu);
  pairing(spec, "gauss_x:0,1 x bump_xi:-4.283185307179586,1", mu);
  pairing(spec, "gauss_x:0,1 x bump_xi:0,0.5", mu);
  spec.extra_checks = [](const ExperimentSpec& s, const ConvergenceReport&) {
    const StageValue out = evaluate_stage(s, 64);
    const double eps = s.schedule.eps(64);
    const Factor phi = Factor::gauss(0.0, 1.0);
    const cplx a = pair_M(*out.discrete, eps, TestFunction::separable(phi, Factor::bump(2.0, 1.0)));
    const cplx b = pair_M(*out.discrete, eps, TestFunction::separable(phi, Factor::bump(2.0 + kTwoPi, 1.0)));
    const double d = std::abs(a - b);
    return std::vector<Check>{{"translated-chi periodicity at k=64", d, 1e-6, d < 1e-6}};
  };
  return spec;
}

ExperimentSpec sampled_bspline0() {
  auto spec = base("sampled-oscillating-bspline0",
                   "S_phi^h of rho(x) e^{i k x xi0} at h = eps = 1/k: mu^phi = |phi-hat(xi0)|^2 |rho|^2 x lattice comb",
                   "oscillating", {}, schedule("1/k", "1/k"), parse_pipeline("sample", Profile::bspline(0), {}, 0.0));
  const auto mu = derive(spec);
  pairing(spec, "gauss_x:0,1 x bump_xi:2,1", mu);
  pairing(spec, "gauss_x:0,1 x bump_xi:8.283185307179586,1", mu);
  mass(spec);
  return spec;
}

ExperimentSpec composition_b0_b1() {
  FamilyParams p;
  p.half_length = 8.0;
  auto spec = base("composition-bspline0-bspline1",
                   "T_psi^h S_phi^h at h = eps: mu_{phi,psi} = |psi-hat(xi)|^2 sum_n |phi-hat(xi + 2 pi n)|^2 mu(x, xi + 2 pi n); "
                   "defect mass tau_psi(xi0) |phi-hat(xi0)|^2",
                   "oscillating", p, schedule("1/k", "1/k"),
                   parse_pipeline("sample_then_reconstruct", Profile::bspline(0), Profile::bspline(1), 0.0));
  const auto mu = derive(spec);
  mass(spec);
  pairing(spec, "gauss_x:0,1 x bump_xi:2,1", mu);
  pairing(spec, "gauss_x:0,1 x bump_xi:-4.283185307179586,1", mu);
  return spec;
}

ExperimentSpec shannon_asymptotic() {
  auto spec = base("shannon-asymptotic",
                   "T_sinc^h S_delta^h at h = eps: mu_S = 1_Q(xi) sum_n mu(x, xi + 2 pi n); nu_S = nu when mu lives in Q",
                   "oscillating", {}, schedule("1/k", "1/k"),
                   parse_pipeline("discretize_then_bandlimit", std::nullopt, std::nullopt, 0.0));
  const auto mu = derive(spec);
  mass(spec);
  pairing(spec, "gauss_x:0,1 x bump_xi:2,1", mu);
  return spec;
}

ExperimentSpec projection_b1() {
  FamilyParams p;
  p.half_length = 8.0;
  auto spec = base("projection-bspline1",
                   "orthogonal projection onto V_psi^h at h = eps: mu_P = |psi-hat|^2 / tau_psi periodized; "
                   "defect mass |psi-hat(xi0)|^2 / tau_psi(xi0)",
                   "oscillating", p, schedule("1/k", "1/k"),
                   parse_pipeline("project", std::nullopt, Profile::bspline(1), 0.0));
  const auto mu = derive(spec);
  mass(spec);
  pairing(spec, "gauss_x:0,1 x bump_xi:2,1", mu);
  return spec;
}

ExperimentSpec counterexample(int which) {
  static const char* anchors[] = {
      "reconstruction with sinc at a discontinuity of phi-hat: mu_phi = sin^2(x/2)/(pi^2 x^2) x (delta_pi + delta_-pi), "
      "not |phi-hat|^2 mu",
      "sampling with sinc at a discontinuity of phi-hat: mu^phi = sin^2(x/2)/(pi^2 x^2) x comb, "
      "not the periodized |phi-hat|^2 mu",
      "discretization of two half-bands folding onto one node: mu^delta = sin^2(x)/(pi^2 x^2) x comb, "
      "not the periodization of mu"};
  static const char* corrected[] = {
      "pm:x=sinc2half(0)*xi=point(3.141592653589793) + pm:x=sinc2half(0)*xi=point(-3.141592653589793)",
      "pm:x=sinc2half(0)*xi=comb(3.141592653589793)",
      "pm:x=sinc2(0)*xi=comb(3.141592653589793)"};
  Pipeline pipe = which == 1   ? parse_pipeline("reconstruct", std::nullopt, Profile::sinc(), 0.0)
                  : which == 2 ? parse_pipeline("sample", Profile::sinc(), std::nullopt, 0.0)
                               : parse_pipeline("sample", Profile::delta(), std::nullopt, 0.0);
  pipe.check_edges = false;
  const std::string name = "counterexample-" + std::to_string(which);
  auto spec = base(name, anchors[which - 1], name, {}, schedule("1/k", "1/k"), pipe);
  spec.counterexample = true;
  derive(spec);
  const auto fixed = parse_measure(corrected[which - 1]);
  const auto naive = predict(spec.family, spec.schedule, spec.pipeline, false);
  spec.predicted_description = fixed.describe() + "  [naive: " + naive.describe() + "]";
  if (which == 3) {
    pairing(spec, "gauss_x:0,1 x flat_xi:9.42477796076938,6.78,1", fixed, &naive);
  } else {
    pairing(spec, "gauss_x:0,2 x bump_xi:-3.141592653589793,1.5", fixed, &naive);
  }
  return spec;
}

ExperimentSpec filtering(bool haar) {
  FamilyParams p;
  p.half_length = 8.0;
  auto spec = base(haar ? "filtering-haar" : "filtering-sinc",
                   haar ? "h << eps with zero-mean phi: mu^phi = |phi-hat(0)|^2 mu = 0, oscillations are filtered out"
                        : "h << eps with phi = psi = sinc: mu_{phi,psi} = |phi-hat(0)|^2 tau_psi(0) mu = mu",
                   "oscillating", p, schedule("k^-2", "1/k"),
                   haar ? parse_pipeline("sample", Profile::haar(), std::nullopt, 0.0)
                        : parse_pipeline("sample_then_reconstruct", Profile::sinc(), Profile::sinc(), 0.0));
  derive(spec);
  mass(spec);
  spec.tol = haar ? 5e-2 : 2e-2;
  spec.extra_checks = [](const ExperimentSpec&, const ConvergenceReport& rep) {
    // Monotone trend of the mass error over the whole schedule.
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
      worst = std::max(worst, rep.rows[i + 1].abs_err - 1.1 * rep.rows[i].abs_err);
    }
    return std::vector<Check>{{"monotone mass trend", worst, 1e-12, worst <= 1e-12}};
  };
  return spec;
}

ExperimentSpec ce_osc() {
  auto spec = base("ce-osc",
                   "U-hat = h^{-1} 1_(0,h) periodized with the ce-osc profile: int_Q sigma^R h |U-hat|^2 -> 1 for every R",
                   "ce-osc", {}, schedule("k^-3", "k^-3"), Pipeline{});
  spec.sigma_profile = Profile::ceosc();
  spec.tol = 1e-2;
  for (double R : {2.0, 5.0, 10.0}) {
    Observable o;
    o.name = "sigma-tail R=" + std::to_string(static_cast<int>(R));
    o.kind = ObservableKind::sigma_tail;
    o.R = R;
    o.predicted = 1.0;
    spec.observables.push_back(o);
  }
  spec.predicted_description = "1 (not h-oscillatory)";
  return spec;
}

ExperimentSpec zero_family() {
  auto spec = base("zero-family", "u_k = 0: every Wigner pairing vanishes", "zero", {}, schedule(nullptr, "1/k"),
                   Pipeline{});
  const auto mu = derive(spec);
  pairing(spec, "gauss_x:0,1 x gauss_xi:0,1", mu);
  return spec;
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<std::function<ExperimentSpec()>> builders;
    for (auto kind : {ExampleKind::concentrating, ExampleKind::oscillating}) {
      for (auto regime : {ScaleRegime::finer, ScaleRegime::matched, ScaleRegime::coarser}) {
        builders.push_back([=] { return canonical(kind, regime); });
      }
    }
    builders.push_back(discretized_oscillating);
    builders.push_back(sampled_bspline0);
    builders.push_back(composition_b0_b1);
    builders.push_back(shannon_asymptotic);
    builders.push_back(projection_b1);
    for (int i = 1; i <= 3; ++i) builders.push_back([=] { return counterexample(i); });
    builders.push_back([] { return filtering(true); });
    builders.push_back([] { return filtering(false); });
    builders.push_back(ce_osc);
    builders.push_back(zero_family);
    std::vector<RegistryEntry> out;
    for (auto& b : builders) {
      const ExperimentSpec spec = b();
      out.push_back({spec.name, spec.anchor, b});
    }
    return out;
  }();
  return entries;
}

std::optional<ExperimentSpec> find_experiment(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e.build();
  }
  return std::nullopt;
}

}  // namespace phasefold
