#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "phasefold/errors.hpp"
#include "phasefold/io.hpp"

namespace phasefold {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BadParams("cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw BadParams("failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw BadParams("cannot move report into '" + path + "'");
  }
}

std::string report_csv(const ConvergenceReport& report) {
  const bool naive = std::any_of(report.rows.begin(), report.rows.end(), [](const ReportRow& r) { return r.naive.has_value(); });
  std::string out = "test,k,h,eps,value_re,value_im,predicted,abs_err";
  if (naive) out += ",naive,naive_err";
  out += '\n';
  for (const auto& r : report.rows) {
    out += quoted(r.test) + ',' + std::to_string(r.k) + ',' + num(r.h) + ',' + num(r.eps) + ',' + num(r.value.real()) +
           ',' + num(r.value.imag()) + ',' + num(r.predicted) + ',' + num(r.abs_err);
    if (naive) out += ',' + (r.naive ? num(*r.naive) : "") + ',' + (r.naive_err ? num(*r.naive_err) : "");
    out += '\n';
  }
  return out;
}

std::string report_summary_json(const ConvergenceReport& report, const ExperimentSpec* spec) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  if (spec) {
    j["anchor"] = spec->anchor;
    j["family"] = spec->family.name;
    j["pipeline"] = spec->pipeline.describe();
    j["eps"] = spec->schedule.eps.describe();
    if (spec->schedule.h) j["h"] = spec->schedule.h->describe();
    j["k"] = spec->schedule.ks;
  }
  j["predicted"] = report.predicted_description;
  j["tol"] = report.tol;
  j["counterexample"] = report.counterexample;
  j["gate"] = report.gate.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(report.gate);
  if (!report.gate_message.empty()) j["gate_message"] = report.gate_message;
  auto& obs = j["observables"] = nlohmann::ordered_json::array();
  for (const auto& o : report.observables) {
    nlohmann::ordered_json e;
    e["name"] = o.name;
    e["verdict"] = std::string(verdict_name(o.verdict));
    e["final_error"] = o.final_error;
    e["trend_ok"] = o.trend_ok;
    if (o.final_naive_error) e["final_naive_error"] = *o.final_naive_error;
    obs.push_back(e);
  }
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed}});
  }
  j["passed"] = report.passed();
  j["seconds"] = report.seconds;
  return j.dump(2) + "\n";
}

}  // namespace phasefold
