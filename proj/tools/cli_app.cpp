#include "cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "phasefold/errors.hpp"
#include "phasefold/io.hpp"
#include "phasefold/measures.hpp"
#include "phasefold/operators.hpp"
#include "phasefold/profiles.hpp"
#include "phasefold/wigner.hpp"

namespace phasefold::cli {

namespace {

using nlohmann::json;

std::string num(double v, const char* fmt = "%.12g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw BadParams(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw BadParams("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw BadParams(where + "." + key + " is missing or has the wrong type");
  }
}

std::optional<Profile> profile_key(const json& profiles, const char* key) {
  if (!profiles.contains(key)) return std::nullopt;
  return parse_profile(get<std::string>(profiles, key, "profiles"));
}

PredictedMeasure measure_or_derived(const std::string& text, const ExperimentSpec& spec, bool gates) {
  if (text == "derived") return predict(spec.family, spec.schedule, spec.pipeline, gates);
  return parse_measure(text);
}

struct Globals {
  std::string out_dir;
  std::optional<double> tol;
  int threads = 1;
  std::uint64_t seed = 0;
};

void emit(const std::string& text, const Globals& g, const std::string& file, std::ostream& out) {
  if (g.out_dir.empty()) {
    out << text;
    return;
  }
  std::filesystem::create_directories(g.out_dir);
  const std::string path = (std::filesystem::path(g.out_dir) / file).string();
  write_file_atomic(path, text);
  out << "wrote " << path << '\n';
}

void list_registry(std::ostream& os) {
  for (const auto& e : registry()) os << e.name << "\t" << e.anchor << '\n';
}

int cmd_experiment(const std::string& target, const Globals& g, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  const std::filesystem::path path(target);
  if (std::filesystem::is_regular_file(path)) {
    json config;
    try {
      config = json::parse(read_text(target));
    } catch (const json::parse_error& e) {
      throw BadParams(std::string("config is not valid JSON: ") + e.what());
    }
    spec = spec_from_config(config, path.stem().string());
  } else if (auto found = find_experiment(target)) {
    spec = std::move(*found);
  } else {
    err << "unknown experiment '" << target << "'; registered experiments:\n";
    list_registry(err);
    return kUsage;
  }
  if (!spec.gate.empty() && !spec.counterexample) {
    err << spec.gate << ": " << spec.gate_message << '\n';
    return kGate;
  }

  const ConvergenceReport rep = run_convergence(spec, {g.threads, g.tol, g.seed});
  const std::string dir = g.out_dir.empty() ? "." : g.out_dir;
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir) / spec.name;
  write_file_atomic(base.string() + ".csv", report_csv(rep));
  write_file_atomic(base.string() + ".json", report_summary_json(rep, &spec));

  out << "experiment " << spec.name << "\n  " << spec.anchor << '\n';
  out << "predicted: " << rep.predicted_description << '\n';
  if (!rep.gate.empty()) out << "gate: " << rep.gate << " (expected for this counterexample)\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-11s %-11s %-13s %-13s %-10s", "k", "h", "eps", "value", "predicted",
                "abs_err");
  out << line << (rep.counterexample ? " naive         naive_err" : "") << '\n';
  std::string current;
  for (const auto& r : rep.rows) {
    if (r.test != current) {
      current = r.test;
      out << "[" << current << "]\n";
    }
    std::snprintf(line, sizeof line, "%-4d %-11.4g %-11.4g %-13.6g %-13.6g %-10.3g", r.k, r.h, r.eps,
                  r.value.real(), r.predicted, r.abs_err);
    out << line;
    if (r.naive) {
      std::snprintf(line, sizeof line, " %-13.6g %-10.3g", *r.naive, *r.naive_err);
      out << line;
    }
    out << '\n';
  }
  for (const auto& o : rep.observables) {
    out << o.name << ": " << verdict_name(o.verdict) << ", final error " << num(o.final_error, "%.3g");
    if (o.final_naive_error) out << ", naive error " << num(*o.final_naive_error, "%.3g");
    out << '\n';
  }
  for (const auto& c : rep.checks) {
    out << "check " << c.name << ": " << num(c.value, "%.3g") << (c.passed ? " <= " : " > ")
        << num(c.threshold, "%.3g") << '\n';
  }
  out << (rep.passed() ? "PASSED" : "FAILED") << " (tol " << num(rep.tol, "%.3g") << ", "
      << num(rep.seconds, "%.2f") << " s)\n";
  return rep.passed() ? kOk : kNotConverged;
}

int cmd_tau(const std::string& profile, double s, const std::vector<double>& xis, std::ostream& out) {
  const Profile p = parse_profile(profile);
  std::string line;
  for (double xi : xis) {
    if (!line.empty()) line += ' ';
    line += num(tau(p, s, xi).value);
  }
  out << line << '\n';
  return kOk;
}

int cmd_classify(const std::string& profile, double s, std::ostream& out) {
  const auto c = basis_classify(parse_profile(profile), s, 4096, 1e-12);
  out << verdict_name(c.verdict) << " A=" << num(c.lower, "%.6g") << " B=" << num(c.upper, "%.6g") << '\n';
  return kOk;
}

SpatialWindow covering_window(const DiscreteField& u) {
  double reach = 0.0;
  for (int axis = 0; axis < u.dim(); ++axis) {
    const double lo = u.h() * static_cast<double>(u.first()[axis]);
    const double hi = u.h() * static_cast<double>(u.first()[axis] + static_cast<long>(u.extent()[axis]) - 1);
    reach = std::max({reach, std::abs(lo), std::abs(hi)});
  }
  const double L = std::max(reach + 8.0 * u.h(), 1.0);
  std::size_t n = 256;
  while (static_cast<double>(n) < 16.0 * L / u.h()) n *= 2;
  return SpatialWindow(u.dim(), L, n);
}

}  // namespace

ExperimentSpec spec_from_config(const json& config, const std::string& name) {
  only_keys(config, {"family", "params", "schedule", "pipeline", "profiles", "testfns", "predicted", "tol"}, "config");
  ExperimentSpec spec;
  spec.name = name;
  spec.anchor = "user configuration";

  FamilyParams params;
  if (config.contains("params")) {
    const json& p = config["params"];
    only_keys(p, {"x0", "xi0", "sigma", "half_length"}, "params");
    if (p.contains("x0")) params.x0 = get<double>(p, "x0", "params");
    if (p.contains("xi0")) params.xi0 = get<double>(p, "xi0", "params");
    if (p.contains("sigma")) params.sigma = get<double>(p, "sigma", "params");
    if (p.contains("half_length")) params.half_length = get<double>(p, "half_length", "params");
  }
  spec.family = make_family(get<std::string>(config, "family", "config"), params);

  if (config.contains("schedule")) {
    const json& s = config["schedule"];
    only_keys(s, {"k", "h", "eps"}, "schedule");
    if (s.contains("k")) spec.schedule.ks = get<std::vector<int>>(s, "k", "schedule");
    if (s.contains("h")) spec.schedule.h = PowerRule::parse(get<std::string>(s, "h", "schedule"));
    if (s.contains("eps")) spec.schedule.eps = PowerRule::parse(get<std::string>(s, "eps", "schedule"));
  }
  spec.schedule.validate();

  std::optional<Profile> phi, psi;
  if (config.contains("profiles")) {
    const json& pr = config["profiles"];
    only_keys(pr, {"phi", "psi", "sigma"}, "profiles");
    phi = profile_key(pr, "phi");
    psi = profile_key(pr, "psi");
    spec.sigma_profile = profile_key(pr, "sigma");
  }
  std::string kind = "identity";
  double s = 0.0;
  bool check_edges = true;
  if (config.contains("pipeline")) {
    const json& pl = config["pipeline"];
    if (pl.is_string()) {
      kind = pl.get<std::string>();
    } else {
      only_keys(pl, {"kind", "s", "check_edges"}, "pipeline");
      kind = get<std::string>(pl, "kind", "pipeline");
      if (pl.contains("s")) s = get<double>(pl, "s", "pipeline");
      if (pl.contains("check_edges")) check_edges = get<bool>(pl, "check_edges", "pipeline");
    }
  }
  spec.pipeline = parse_pipeline(kind, phi, psi, s);
  spec.pipeline.check_edges = check_edges;
  if (config.contains("tol")) spec.tol = get<double>(config, "tol", "config");

  // Gate check through the measure algebra.
  try {
    spec.predicted_description = predict(spec.family, spec.schedule, spec.pipeline, true).describe();
  } catch (const NDViolated& e) {
    spec.gate = e.kind();
    spec.gate_message = e.what();
  } catch (const MSViolated& e) {
    spec.gate = e.kind();
    spec.gate_message = e.what();
  }

  PredictedMeasure mu;
  std::optional<PredictedMeasure> naive;
  const json predicted = config.value("predicted", json("derived"));
  if (predicted.is_object()) {
    only_keys(predicted, {"corrected", "naive"}, "predicted");
    spec.counterexample = true;
    mu = parse_measure(get<std::string>(predicted, "corrected", "predicted"));
    naive = measure_or_derived(predicted.value("naive", std::string("derived")), spec, false);
    spec.predicted_description = mu.describe() + "  [naive: " + naive->describe() + "]";
  } else if (!predicted.is_string()) {
    throw BadParams("predicted must be \"derived\", a measure spec or {corrected, naive}");
  } else if (spec.gate.empty()) {
    mu = measure_or_derived(predicted.get<std::string>(), spec, true);
    spec.predicted_description = mu.describe();
  }
  if (!spec.gate.empty() && !spec.counterexample) return spec;

  if (!config.contains("testfns") || !config["testfns"].is_array() || config["testfns"].empty()) {
    throw BadParams("testfns must be a non-empty array");
  }
  for (const auto& t : config["testfns"]) {
    if (!t.is_string()) throw BadParams("testfns entries must be strings");
    const std::string text = t.get<std::string>();
    Observable o;
    o.name = text;
    if (text == "mass") {
      if (!spec.gate.empty()) throw BadParams("the mass observable needs a prediction the gates allow");
      o.kind = ObservableKind::mass;
      o.predicted = predicted_mass(spec.family, spec.schedule, spec.pipeline);
    } else if (text.rfind("sigma_tail:", 0) == 0) {
      // sigma_tail:<R>=<expected>
      const auto eq = text.find('=');
      if (eq == std::string::npos) throw BadParams("sigma_tail observables are written sigma_tail:<R>=<expected>");
      try {
        o.R = std::stod(text.substr(11, eq - 11));
        o.predicted = std::stod(text.substr(eq + 1));
      } catch (const std::exception&) {
        throw BadParams("bad sigma_tail observable '" + text + "'");
      }
      o.kind = ObservableKind::sigma_tail;
    } else {
      o.test = parse_test_function(text);
      o.predicted = pair_predicted(mu, *o.test);
      if (naive) o.naive = pair_predicted(*naive, *o.test);
    }
    spec.observables.push_back(std::move(o));
  }
  return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"phasefold: sampling, reconstruction and Wigner-measure experiments", "phasefold"};
  app.fallthrough();
  Globals g;
  bool list_flag = false;
  app.add_option("--out", g.out_dir, "Output directory for reports and fields");
  app.add_option("--tol", g.tol, "Override the experiment tolerance");
  app.add_option("--threads", g.threads, "Worker threads for per-k evaluations")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed recorded with the run");
  app.add_flag("--list", list_flag, "List registered experiments");

  std::string target;
  auto* experiment = app.add_subcommand("experiment", "Run a registered experiment or a JSON config");
  experiment->add_option("target", target, "Experiment name or config path")->required();

  auto* list = app.add_subcommand("list", "List registered experiments with the statements they check");

  std::string profile;
  double s = 0.0;
  std::vector<double> xis;
  auto* tau_cmd = app.add_subcommand("tau", "Evaluate tau_phi^s at the given frequencies");
  tau_cmd->add_option("profile", profile)->required();
  tau_cmd->add_option("s", s)->required();
  tau_cmd->add_option("xi", xis)->required();

  auto* classify = app.add_subcommand("classify", "Classify {phi(x/h - n)} as orthonormal, Riesz or Bessel");
  classify->add_option("profile", profile)->required();
  classify->add_option("s", s)->required();

  double h = 0.0;
  std::string field_path;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a field: S_phi^h u");
  sample_cmd->add_option("profile", profile)->required();
  sample_cmd->add_option("step", h, "Grid step h")->required();
  sample_cmd->add_option("field", field_path, "Continuous field CSV")->required();

  double half_length = 0.0;
  std::size_t points = 0;
  auto* recon_cmd = app.add_subcommand("reconstruct", "Reconstruct a discrete field: T_phi^h U");
  recon_cmd->add_option("profile", profile)->required();
  recon_cmd->add_option("field", field_path, "Discrete field CSV")->required();
  recon_cmd->add_option("--half-length", half_length, "Output window half-length");
  recon_cmd->add_option("--points", points, "Output nodes per axis (power of two)");

  auto* project_cmd = app.add_subcommand("project", "Orthogonal projection onto V_psi^h");
  project_cmd->add_option("profile", profile)->required();
  project_cmd->add_option("s", s)->required();
  project_cmd->add_option("step", h, "Grid step h")->required();
  project_cmd->add_option("field", field_path, "Continuous field CSV")->required();

  std::string testfn;
  double eps = 0.0;
  bool discrete = false;
  auto* pair_cmd = app.add_subcommand("pair", "Pair the Wigner transform of a field with a test function");
  pair_cmd->add_option("field", field_path)->required();
  pair_cmd->add_option("testfn", testfn)->required();
  pair_cmd->add_option("--eps", eps)->required();
  pair_cmd->add_flag("--discrete", discrete, "Treat the field as discrete (pair M^eps)");

  std::size_t stride = 1;
  auto* wigner_cmd = app.add_subcommand("wigner", "Emit the Wigner transform as x,xi,re,im CSV");
  wigner_cmd->add_option("field", field_path)->required();
  wigner_cmd->add_option("--eps", eps)->required();
  wigner_cmd->add_option("--stride", stride, "Keep every n-th x node");

  app.require_subcommand(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (list_flag || list->parsed()) {
      list_registry(out);
      return kOk;
    }
    if (experiment->parsed()) return cmd_experiment(target, g, out, err);
    if (tau_cmd->parsed()) return cmd_tau(profile, s, xis, out);
    if (classify->parsed()) return cmd_classify(profile, s, out);
    if (sample_cmd->parsed()) {
      const auto u = parse_continuous_field(read_text(field_path));
      emit(field_csv(sample(u, parse_profile(profile), h)), g, "sample.csv", out);
      return kOk;
    }
    if (recon_cmd->parsed()) {
      const auto U = parse_discrete_field(read_text(field_path));
      SpatialWindow w = covering_window(U);
      if (half_length > 0.0 || points > 0) {
        w = SpatialWindow(U.dim(), half_length > 0.0 ? half_length : w.half_length(),
                          points > 0 ? points : w.points_per_axis());
      }
      emit(field_csv(reconstruct(U, parse_profile(profile), U.h(), w)), g, "reconstruct.csv", out);
      return kOk;
    }
    if (project_cmd->parsed()) {
      const auto u = parse_continuous_field(read_text(field_path));
      emit(field_csv(project(u, parse_profile(profile), s, h)), g, "project.csv", out);
      return kOk;
    }
    if (pair_cmd->parsed()) {
      const auto a = parse_test_function(testfn);
      const std::string text = read_text(field_path);
      const cplx v = discrete ? pair_M(parse_discrete_field(text), eps, a) : pair_m(parse_continuous_field(text), eps, a);
      out << num(v.real(), "%.17g") << ' ' << num(v.imag(), "%.17g") << '\n';
      return kOk;
    }
    if (wigner_cmd->parsed()) {
      const auto W = wigner_transform(parse_continuous_field(read_text(field_path)), eps, stride);
      std::string csv = "x,xi,re,im\n";
      for (std::size_t i = 0; i < W.xs.size(); ++i) {
        for (std::size_t k = 0; k < W.xis.size(); ++k) {
          const cplx v = W.at(i, k);
          csv += num(W.xs[i], "%.17g") + ',' + num(W.xis[k], "%.17g") + ',' + num(v.real(), "%.17g") + ',' +
                 num(v.imag(), "%.17g") + '\n';
        }
      }
      emit(csv, g, "wigner.csv", out);
      return kOk;
    }
    err << app.help();
    return kUsage;
  } catch (const NonSummableTail& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kGate;
  } catch (const NDViolated& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kGate;
  } catch (const MSViolated& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kGate;
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace phasefold::cli
