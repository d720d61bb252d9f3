#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasefold/grid.hpp"
#include "phasefold/measures.hpp"
#include "phasefold/operators.hpp"
#include "phasefold/profiles.hpp"
#include "phasefold/testfn.hpp"
#include "phasefold/wigner.hpp"

namespace phasefold {

// c * k^p.
struct PowerRule {
  double c = 1.0;
  double p = -1.0;
  double operator()(int k) const;
  std::string describe() const;
  // Accepts "1/k", "1/k^2", "k^-0.25", "0.5/k", "c*k^p", "c".
  static PowerRule parse(std::string_view s);
};

enum class ScaleTag { h_ll_e, h_sim_e, eps_only };

struct ScaleSchedule {
  std::vector<int> ks{4, 8, 16, 32, 64, 128};
  std::optional<PowerRule> h;  // absent when no sampling happens
  PowerRule eps;

  ScaleTag tag() const;
  // Throws BadParams unless h_k, eps_k decrease to zero and the tag is consistent on the list.
  void validate() const;
  double h_at(int k) const { return h ? (*h)(k) : (eps)(k); }
};

struct FamilyParams {
  double x0 = 0.0;
  double xi0 = 2.0;
  double sigma = 1.0;
  double half_length = 0.0;  // 0 selects the family default
};

// Input of a pipeline at one k: a field on the line or a discrete field.
struct StageValue {
  std::optional<ContinuousField> field;
  std::optional<DiscreteField> discrete;
};

enum class FamilyKind { zero, concentrating, oscillating, counterexample1, counterexample2, counterexample3, ce_osc };

struct SequenceFamily {
  FamilyKind kind;
  std::string name;
  FamilyParams params;

  // Resolution the family needs: largest significant frequency at this k (continuous families).
  double max_frequency(int k, double h) const;
  double default_half_length() const;
  bool discrete() const { return kind == FamilyKind::counterexample1 || kind == FamilyKind::ce_osc; }
  StageValue generate(int k, double h, const SpatialWindow& window) const;
  // Spectrum of the discrete families as a 2 pi-periodic function (exact, with breakpoints).
  PeriodicSpectrum discrete_spectrum(double h) const;
};

SequenceFamily make_family(std::string_view name, const FamilyParams& params = {});
std::vector<std::string> family_names();

enum class PipelineKind { identity, sample, reconstruct, sample_then_reconstruct, discretize_then_bandlimit, project };

struct Pipeline {
  PipelineKind kind = PipelineKind::identity;
  std::optional<Profile> phi;  // sampling profile
  std::optional<Profile> psi;  // reconstruction profile
  double s = 0.0;
  bool check_edges = true;
  // Passed to reconstruct(); spectral synthesis is used while the truncated tail stays below it.
  double truncation_budget = 1e-4;

  StageValue apply(const StageValue& in, double h, const SpatialWindow& window) const;
  std::string describe() const;
  // Profile whose sigma tail governs the h-oscillation of the output, if any.
  std::optional<Profile> reconstruction_profile() const;
};

Pipeline parse_pipeline(std::string_view kind, const std::optional<Profile>& phi,
                        const std::optional<Profile>& psi, double s);

// pairing: <m or M, a>; mass: squared norm of the output; sigma_tail: h_oscillation_diagnostic at R.
enum class ObservableKind { pairing, mass, sigma_tail };

struct Observable {
  std::string name;
  ObservableKind kind = ObservableKind::pairing;
  std::optional<TestFunction> test;  // for pairings
  double R = 10.0;                   // for sigma_tail
  double predicted = 0.0;
  std::optional<double> naive;       // counterexample runs: the uncorrected formula
};

struct ReportRow {
  std::string test;
  int k;
  double h;
  double eps;
  cplx value;
  double predicted;
  double abs_err;
  std::optional<double> naive;
  std::optional<double> naive_err;
};

enum class Verdict { converged, trend_ok, failed };
std::string_view verdict_name(Verdict v);

// Extra pass/fail facts an experiment establishes beside the convergence table.
struct Check {
  std::string name;
  double value;
  double threshold;
  bool passed;
};

struct ObservableSummary {
  std::string name;
  Verdict verdict;
  double final_error;
  std::optional<double> final_naive_error;
  bool trend_ok;
};

struct ConvergenceReport {
  std::string experiment;
  std::vector<ReportRow> rows;
  std::vector<ObservableSummary> observables;
  std::vector<Check> checks;
  std::string predicted_description;
  std::string gate;  // "", "NDViolated" or "MSViolated"
  std::string gate_message;
  bool counterexample = false;
  double tol = 2e-2;
  double seconds = 0.0;
  std::vector<std::string> notes;

  bool passed() const;
};

// verdict = converged iff last error < tol and errors over the final three k are non-increasing
// up to 10% slack (plus an absolute floor of 1e-12).
bool errors_trend_ok(const std::vector<double>& errors);
Verdict judge(const std::vector<double>& errors, double tol);

struct ExperimentSpec {
  std::string name;
  std::string anchor;       // statement of the result being checked
  std::string description;
  SequenceFamily family;
  ScaleSchedule schedule;
  Pipeline pipeline;
  std::vector<Observable> observables;
  double tol = 2e-2;
  bool counterexample = false;
  std::string gate;          // gate raised while deriving the prediction
  std::string gate_message;
  std::string predicted_description;
  // Window policy: overrides the automatic half-length / resolution when set.
  std::function<SpatialWindow(int k, double h, double eps)> window;
  // Additional checks evaluated after the sweep.
  std::function<std::vector<Check>(const ExperimentSpec&, const ConvergenceReport&)> extra_checks;
  std::optional<Profile> sigma_profile;
};

struct RunOptions {
  int threads = 1;
  std::optional<double> tol;
  std::uint64_t seed = 0;
};

SpatialWindow default_window(const ExperimentSpec& spec, int k, double h, double eps);
ConvergenceReport run_convergence(const ExperimentSpec& spec, const RunOptions& opts = {});

// The pipeline output at one k, as the harness computes it.
StageValue evaluate_stage(const ExperimentSpec& spec, int k);

// ||T_sinc S_delta u - u|| / ||u||; throws NotBandLimited unless the spectrum of u vanishes
// outside [-pi/h, pi/h).
double shannon_roundtrip(const ContinuousField& u, double h);

struct FilteringReport {
  std::vector<int> ks;
  std::vector<double> masses;
  double predicted;
  bool monotone;
};
FilteringReport filtering_study(const Profile& phi, const std::optional<Profile>& psi,
                                const ScaleSchedule& schedule, const FamilyParams& params = {},
                                int threads = 1);

// Predicted measure for a family under a pipeline, deriving it from the canonical examples and
// the measure algebra. Gate errors propagate.
PredictedMeasure predict(const SequenceFamily& family, const ScaleSchedule& schedule, const Pipeline& pipeline,
                         bool enforce_gates = true);
// Predicted squared norm of the pipeline output (defect-measure mass).
double predicted_mass(const SequenceFamily& family, const ScaleSchedule& schedule, const Pipeline& pipeline);

// Registry.
struct RegistryEntry {
  std::string name;
  std::string anchor;
  std::function<ExperimentSpec()> build;
};
const std::vector<RegistryEntry>& registry();
std::optional<ExperimentSpec> find_experiment(std::string_view name);

// sigma^R-weighted mass of the discrete data entering reconstruction at the given k
// (criterion-style h-oscillation diagnostic).
double h_oscillation_diagnostic(const ExperimentSpec& spec, int k, double R);

}  // namespace phasefold
