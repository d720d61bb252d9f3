#include "phasefold/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "phasefold/errors.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out.push_back(c);
  }
  return out;
}

double to_number(const std::string& s, std::string_view context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw BadParams("cannot read '" + s + "' in rule '" + std::string(context) + "'");
  return v;
}

std::size_t next_pow2(double n) {
  std::size_t p = 1;
  while (static_cast<double>(p) < n) p <<= 1;
  return p;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

ScaleRegime scale_regime(const PowerRule& eps) {
  if (eps.p < -1.0 - 1e-12) return ScaleRegime::finer;
  if (eps.p > -1.0 + 1e-12) return ScaleRegime::coarser;
  if (!same(eps.c, 1.0)) throw BadParams("matched scale must be eps = 1/k exactly, got " + eps.describe());
  return ScaleRegime::matched;
}

Regime measure_regime(const ScaleSchedule& sched) {
  switch (sched.tag()) {
    case ScaleTag::h_ll_e: return Regime::h_ll_e;
    case ScaleTag::h_sim_e:
      if (!same(sched.h->c, sched.eps.c)) throw BadParams("predictions at h ~ eps need h = eps");
      return Regime::h_eq_e;
    case ScaleTag::eps_only: break;
  }
  throw BadParams("pipeline needs a sampling step h");
}

PredictedMeasure base_measure(const SequenceFamily& family, const ScaleSchedule& sched) {
  const auto& p = family.params;
  switch (family.kind) {
    case FamilyKind::zero: return {};
    case FamilyKind::concentrating:
      return canonical_example(ExampleKind::concentrating, scale_regime(sched.eps), p.x0, p.sigma);
    case FamilyKind::oscillating: {
      auto mu = canonical_example(ExampleKind::oscillating, scale_regime(sched.eps), p.xi0, p.sigma);
      for (auto& t : mu.terms) t.x.x0 = p.x0;
      return mu;
    }
    case FamilyKind::counterexample1: return parse_measure("pm:x=sinc2(0)*xi=comb(3.141592653589793)");
    case FamilyKind::counterexample2: return parse_measure("pm:x=sinc2(0)*xi=point(-3.141592653589793)");
    case FamilyKind::counterexample3:
      return parse_measure("pm:x=sinc2half(0)*xi=point(3.141592653589793) + pm:x=sinc2half(0)*xi=point(-3.141592653589793)");
    case FamilyKind::ce_osc: break;
  }
  throw BadParams("family '" + family.name + "' has no closed-form Wigner measure");
}

// Sampling profile equivalent to the pipeline's analysis step.
std::optional<Profile> analysis_profile(const Pipeline& p) {
  switch (p.kind) {
    case PipelineKind::sample:
    case PipelineKind::sample_then_reconstruct: return p.phi;
    case PipelineKind::discretize_then_bandlimit: return Profile::delta();
    case PipelineKind::project: return dual_profile(*p.psi, p.s);
    default: return std::nullopt;
  }
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

double PowerRule::operator()(int k) const { return c * std::pow(static_cast<double>(k), p); }

std::string PowerRule::describe() const {
  std::ostringstream os;
  os << c << "*k^" << p;
  return os.str();
}

PowerRule PowerRule::parse(std::string_view text) {
  const std::string s = strip(text);
  PowerRule r;
  if (auto slash = s.find("/k"); slash != std::string::npos) {
    r.c = slash == 0 ? 1.0 : to_number(s.substr(0, slash), text);
    const std::string rest = s.substr(slash + 2);
    if (rest.empty()) {
      r.p = -1.0;
    } else if (rest[0] == '^') {
      r.p = -to_number(rest.substr(1), text);
    } else {
      throw BadParams("cannot read rule '" + s + "'");
    }
  } else if (auto caret = s.find("k^"); caret != std::string::npos) {
    std::string pre = s.substr(0, caret);
    if (!pre.empty() && pre.back() == '*') pre.pop_back();
    r.c = pre.empty() ? 1.0 : to_number(pre, text);
    r.p = to_number(s.substr(caret + 2), text);
  } else if (s == "k") {
    r.p = 1.0;
  } else {
    r.c = to_number(s, text);
    r.p = 0.0;
  }
  if (!(r.c > 0.0)) throw BadParams("rule '" + s + "' must have a positive coefficient");
  return r;
}

ScaleTag ScaleSchedule::tag() const {
  if (!h) return ScaleTag::eps_only;
  return h->p < eps.p - 1e-12 ? ScaleTag::h_ll_e : ScaleTag::h_sim_e;
}

void ScaleSchedule::validate() const {
  if (ks.empty()) throw BadParams("schedule needs at least one k");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] <= 0) throw BadParams("k values must be positive");
    if (i > 0 && ks[i] <= ks[i - 1]) throw BadParams("k values must increase");
  }
  auto decreasing = [&](const PowerRule& r, const char* what) {
    if (!(r.p < 0.0)) throw BadParams(std::string(what) + "_k must decrease to 0, got " + r.describe());
  };
  decreasing(eps, "eps");
  if (!h) return;
  decreasing(*h, "h");
  if (ks.size() < 2) return;
  const double first = (*h)(ks.front()) / eps(ks.front());
  const double last = (*h)(ks.back()) / eps(ks.back());
  if (tag() == ScaleTag::h_sim_e) {
    if (std::abs(last - first) > 1e-9 * first) throw BadParams("h/eps is not constant along the schedule");
  } else if (!(last < 0.25 * first)) {
    throw BadParams("h/eps does not decrease along the schedule");
  }
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::trend_ok: return "trend_ok";
    case Verdict::failed: return "failed";
  }
  return "?";
}

bool errors_trend_ok(const std::vector<double>& e) {
  const std::size_t n = e.size();
  for (std::size_t i = n >= 3 ? n - 3 : 0; i + 1 < n; ++i) {
    if (!(e[i + 1] <= 1.1 * e[i] + 1e-12)) return false;
  }
  return true;
}

Verdict judge(const std::vector<double>& errors, double tol) {
  if (errors.empty()) return Verdict::failed;
  const bool trend = errors_trend_ok(errors);
  if (trend && errors.back() < tol) return Verdict::converged;
  return trend ? Verdict::trend_ok : Verdict::failed;
}

bool ConvergenceReport::passed() const {
  for (const auto& o : observables) {
    if (o.verdict != Verdict::converged) return false;
    if (counterexample && o.final_naive_error && !(*o.final_naive_error > 5.0 * tol)) return false;
  }
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

Pipeline parse_pipeline(std::string_view kind, const std::optional<Profile>& phi,
                        const std::optional<Profile>& psi, double s) {
  Pipeline p;
  p.phi = phi;
  p.psi = psi;
  p.s = s;
  if (kind == "identity") {
    p.kind = PipelineKind::identity;
  } else if (kind == "sample") {
    p.kind = PipelineKind::sample;
    if (!phi) throw BadParams("pipeline 'sample' needs a sampling profile");
  } else if (kind == "reconstruct") {
    p.kind = PipelineKind::reconstruct;
    if (!psi) throw BadParams("pipeline 'reconstruct' needs a reconstruction profile");
  } else if (kind == "sample_then_reconstruct") {
    p.kind = PipelineKind::sample_then_reconstruct;
    if (!phi || !psi) throw BadParams("pipeline 'sample_then_reconstruct' needs both profiles");
  } else if (kind == "discretize_then_bandlimit") {
    p.kind = PipelineKind::discretize_then_bandlimit;
  } else if (kind == "project") {
    p.kind = PipelineKind::project;
    if (!psi) throw BadParams("pipeline 'project' needs a reconstruction profile");
  } else {
    throw BadParams("unknown pipeline '" + std::string(kind) + "'");
  }
  return p;
}

std::string Pipeline::describe() const {
  switch (kind) {
    case PipelineKind::identity: return "identity";
    case PipelineKind::sample: return "sample(" + phi->name() + ")";
    case PipelineKind::reconstruct: return "reconstruct(" + psi->name() + ")";
    case PipelineKind::sample_then_reconstruct:
      return "sample_then_reconstruct(" + phi->name() + ", " + psi->name() + ")";
    case PipelineKind::discretize_then_bandlimit: return "discretize_then_bandlimit";
    case PipelineKind::project: {
      std::ostringstream os;
      os << "project(" << psi->name() << ", s=" << s << ")";
      return os.str();
    }
  }
  return "?";
}

std::optional<Profile> Pipeline::reconstruction_profile() const {
  switch (kind) {
    case PipelineKind::reconstruct:
    case PipelineKind::sample_then_reconstruct:
    case PipelineKind::project: return psi;
    case PipelineKind::discretize_then_bandlimit: return Profile::sinc();
    default: return std::nullopt;
  }
}

StageValue Pipeline::apply(const StageValue& in, double h, const SpatialWindow& window) const {
  const ReconstructOptions ro{Synthesis::automatic, truncation_budget};
  const SampleOptions so{check_edges ? SampleOptions{}.edge_budget : kInf};
  auto need_field = [&]() -> const ContinuousField& {
    if (!in.field) throw BadParams(describe() + " needs a continuous input");
    return *in.field;
  };
  StageValue out;
  switch (kind) {
    case PipelineKind::identity: return in;
    case PipelineKind::sample: out.discrete = sample(need_field(), *phi, h, so); break;
    case PipelineKind::reconstruct:
      if (!in.discrete) throw BadParams(describe() + " needs a discrete input");
      out.field = reconstruct(*in.discrete, *psi, h, window, ro);
      break;
    case PipelineKind::sample_then_reconstruct:
      out.field = reconstruct(sample(need_field(), *phi, h, so), *psi, h, window, ro);
      break;
    case PipelineKind::discretize_then_bandlimit:
      out.field = reconstruct(discretize(need_field(), h, so), Profile::sinc(), h, window, ro);
      break;
    case PipelineKind::project: out.field = project(need_field(), *psi, s, h, ro); break;
  }
  return out;
}

PredictedMeasure predict(const SequenceFamily& family, const ScaleSchedule& sched, const Pipeline& pipeline,
                         bool enforce_gates) {
  const PredictedMeasure mu = base_measure(family, sched);
  if (pipeline.kind == PipelineKind::identity) return mu;
  const Regime regime = measure_regime(sched);
  switch (pipeline.kind) {
    case PipelineKind::sample: return apply_sampling(mu, *pipeline.phi, regime, enforce_gates);
    case PipelineKind::reconstruct: return apply_reconstruction(mu, *pipeline.psi, regime, enforce_gates);
    case PipelineKind::sample_then_reconstruct:
      return apply_composition(mu, *pipeline.phi, *pipeline.psi, regime, enforce_gates);
    case PipelineKind::discretize_then_bandlimit:
      return apply_composition(mu, Profile::delta(), Profile::sinc(), regime, enforce_gates);
    case PipelineKind::project:
      if (pipeline.s != 0.0) throw BadParams("predictions for weighted projections are not available");
      return apply_composition(mu, dual_profile(*pipeline.psi, 0.0), *pipeline.psi, regime, enforce_gates);
    case PipelineKind::identity: break;
  }
  return mu;
}

double predicted_mass(const SequenceFamily& family, const ScaleSchedule& sched, const Pipeline& pipeline) {
  const PredictedMeasure mu = base_measure(family, sched);
  if (pipeline.kind == PipelineKind::identity) return x_marginal(mu).mass();
  const Regime regime = measure_regime(sched);
  const auto phi = analysis_profile(pipeline);
  const auto psi = pipeline.reconstruction_profile();
  if (!phi) throw BadParams("no mass prediction for " + pipeline.describe());
  // tau_sinc = 1, so a sinc synthesis stands in for "no reconstruction".
  return defect_from_wigner(mu, *phi, psi ? *psi : Profile::sinc(), 0.0, regime).mass();
}

SpatialWindow default_window(const ExperimentSpec& spec, int k, double h, double eps) {
  (void)eps;
  const auto& fam = spec.family;
  const double L = fam.default_half_length();
  double need = fam.max_frequency(k, h);
  if (spec.pipeline.check_edges) need *= 8.0 / 7.0;
  double n = 2.0 * L * need / kPi;
  if (auto psi = spec.pipeline.reconstruction_profile()) {
    const bool compact_fourier = psi->fourier_support().has_value();
    if (!compact_fourier && psi->has_spatial_kernel() && spec.schedule.tag() == ScaleTag::h_sim_e) {
      n = std::max(n, 32.0 * L / h);
    } else if (psi->kind() == ProfileKind::gaussian) {
      n = std::max(n, 2.0 * L * 9.0 / (kPi * h));
    }
  }
  return SpatialWindow(1, L, std::max<std::size_t>(256, next_pow2(n * (1.0 - 1e-12))));
}

StageValue evaluate_stage(const ExperimentSpec& spec, int k) {
  const double h = spec.schedule.h_at(k);
  const double eps = spec.schedule.eps(k);
  const SpatialWindow w = spec.window ? spec.window(k, h, eps) : default_window(spec, k, h, eps);
  return spec.pipeline.apply(spec.family.generate(k, h, w), h, w);
}

double h_oscillation_diagnostic(const ExperimentSpec& spec, int k, double R) {
  const auto profile = spec.sigma_profile ? spec.sigma_profile : spec.pipeline.reconstruction_profile();
  if (!profile) throw BadParams("experiment '" + spec.name + "' reconstructs with no profile");
  if (auto support = profile->fourier_support()) {
    const double reach = (2.0 * std::floor(R) - 1.0) * kPi;
    if (R >= 1.0 && support->first >= -reach && support->second <= reach) return 0.0;
  }
  const double h = spec.schedule.h_at(k);
  const double s = spec.pipeline.kind == PipelineKind::project ? spec.pipeline.s : 0.0;
  if (spec.family.discrete()) {
    return sigma_weighted_mass(spec.family.discrete_spectrum(h), h, *profile, s, R);
  }
  const auto phi = analysis_profile(spec.pipeline);
  if (!phi) throw BadParams("experiment '" + spec.name + "' has no discrete stage");
  const double eps = spec.schedule.eps(k);
  const SpatialWindow w = spec.window ? spec.window(k, h, eps) : default_window(spec, k, h, eps);
  const StageValue in = spec.family.generate(k, h, w);
  ContinuousField u = *in.field;
  if (s != 0.0) u = bessel_multiplier(u, s, h);
  const DiscreteField U = sample(u, *phi, h, {kInf});
  return sigma_weighted_mass(periodic_spectrum(U), h, *profile, s, R);
}

ConvergenceReport run_convergence(const ExperimentSpec& spec, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  spec.schedule.validate();
  ConvergenceReport rep;
  rep.experiment = spec.name;
  rep.predicted_description = spec.predicted_description;
  rep.gate = spec.gate;
  rep.gate_message = spec.gate_message;
  rep.counterexample = spec.counterexample;
  rep.tol = opts.tol.value_or(spec.tol);

  const auto& ks = spec.schedule.ks;
  const std::size_t nobs = spec.observables.size();
  const bool needs_stage = std::any_of(spec.observables.begin(), spec.observables.end(),
                                       [](const Observable& o) { return o.kind != ObservableKind::sigma_tail; });
  std::vector<std::vector<cplx>> values(ks.size(), std::vector<cplx>(nobs));

  parallel_for(ks.size(), opts.threads, [&](std::size_t i) {
    const int k = ks[i];
    const double eps = spec.schedule.eps(k);
    std::optional<StageValue> out;
    if (needs_stage) out = evaluate_stage(spec, k);
    for (std::size_t j = 0; j < nobs; ++j) {
      const Observable& o = spec.observables[j];
      switch (o.kind) {
        case ObservableKind::pairing:
          values[i][j] = out->field ? pair_m(*out->field, eps, *o.test) : pair_M(*out->discrete, eps, *o.test);
          break;
        case ObservableKind::mass: {
          const double n = out->field ? out->field->norm() : out->discrete->norm();
          values[i][j] = n * n;
          break;
        }
        case ObservableKind::sigma_tail: values[i][j] = h_oscillation_diagnostic(spec, k, o.R); break;
      }
    }
  });

  for (std::size_t j = 0; j < nobs; ++j) {
    const Observable& o = spec.observables[j];
    std::vector<double> errors;
    std::optional<double> naive_err;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const int k = ks[i];
      ReportRow row{o.name, k, spec.schedule.h_at(k), spec.schedule.eps(k), values[i][j], o.predicted,
                    std::abs(values[i][j] - o.predicted), std::nullopt, std::nullopt};
      if (o.naive) {
        row.naive = *o.naive;
        row.naive_err = std::abs(values[i][j] - *o.naive);
        naive_err = row.naive_err;
      }
      errors.push_back(row.abs_err);
      rep.rows.push_back(std::move(row));
    }
    rep.observables.push_back({o.name, judge(errors, rep.tol), errors.empty() ? 0.0 : errors.back(), naive_err,
                               errors_trend_ok(errors)});
  }
  if (spec.extra_checks) rep.checks = spec.extra_checks(spec, rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

double shannon_roundtrip(const ContinuousField& u, double h) {
  const auto& w = u.window();
  if (w.dim() != 1) throw BadParams("Shannon round trip is 1-D");
  const double p = 2.0 * w.half_length() / h;
  if (std::abs(p - std::round(p)) > 1e-9 * p) throw BadParams("Shannon round trip needs 2L/h to be an integer");
  const auto spec = u.spectrum();
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double m = std::norm(spec[i]);
    total += m;
    const double xi = w.freq(i);
    if (xi >= kPi / h * (1.0 - 1e-12) || xi < -kPi / h) outside += m;
  }
  if (outside > 1e-28 * total) {
    std::ostringstream os;
    os << "field has spectral mass fraction " << outside / total << " outside [-pi/h, pi/h) for h = " << h;
    throw NotBandLimited(os.str());
  }
  const double norm = u.norm();
  if (norm == 0.0) return 0.0;
  const DiscreteField U = discretize(u, h, {kInf});
  const ContinuousField v = reconstruct(U, Profile::sinc(), h, w, {Synthesis::spectral, kInf});
  double diff = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) diff += std::norm(v.values()[i] - u.values()[i]);
  return std::sqrt(w.cell_volume() * diff) / norm;
}

FilteringReport filtering_study(const Profile& phi, const std::optional<Profile>& psi,
                                const ScaleSchedule& schedule, const FamilyParams& params, int threads) {
  if (schedule.tag() != ScaleTag::h_ll_e) throw BadParams("filtering studies need h << eps");
  ExperimentSpec spec;
  spec.name = "filtering";
  FamilyParams fp = params;
  if (fp.half_length == 0.0) fp.half_length = 8.0;
  spec.family = make_family("oscillating", fp);
  spec.schedule = schedule;
  spec.pipeline = psi ? parse_pipeline("sample_then_reconstruct", phi, psi, 0.0)
                      : parse_pipeline("sample", phi, std::nullopt, 0.0);
  Observable mass{"mass", ObservableKind::mass, std::nullopt, 10.0,
                  predicted_mass(spec.family, schedule, spec.pipeline), std::nullopt};
  spec.observables.push_back(mass);
  const auto rep = run_convergence(spec, {threads, std::nullopt, 0});
  FilteringReport out;
  out.predicted = mass.predicted;
  std::vector<double> errors;
  for (const auto& row : rep.rows) {
    out.ks.push_back(row.k);
    out.masses.push_back(row.value.real());
    errors.push_back(row.abs_err);
  }
  out.monotone = true;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i + 1] <= 1.1 * errors[i] + 1e-12)) out.monotone = false;
  }
  return out;
}

}  // namespace phasefold
