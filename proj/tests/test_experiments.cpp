#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "phasefold/errors.hpp"
#include "phasefold/experiments.hpp"
#include "phasefold/io.hpp"

using namespace phasefold;

namespace {

constexpr double kPi = std::numbers::pi;

// sum_k 1 / (1 + pi k)^4, so that tau_{B1}(2) = sin^4(1) * lattice_sum().
double lattice_sum() {
  double s = 0.0;
  for (long k = -200000; k <= 200000; ++k) s += std::pow(1.0 + kPi * static_cast<double>(k), -4.0);
  return s;
}

const ReportRow& last_row(const ConvergenceReport& rep, const std::string& test) {
  const ReportRow* found = nullptr;
  for (const auto& r : rep.rows) {
    if (r.test == test) found = &r;
  }
  REQUIRE(found != nullptr);
  return *found;
}

}  // namespace

TEST_CASE("power rules") {
  CHECK(PowerRule::parse("1/k").p == -1.0);
  const auto r = PowerRule::parse("0.5/k^2");
  CHECK(r.c == 0.5);
  CHECK(r.p == -2.0);
  CHECK(r(4) == doctest::Approx(0.5 / 16.0));
  CHECK(PowerRule::parse("k^-0.25").p == -0.25);
  CHECK(PowerRule::parse("3*k^-3").c == 3.0);
  CHECK(PowerRule::parse("2").p == 0.0);
  CHECK_THROWS_AS(PowerRule::parse("1/j"), BadParams);
  CHECK_THROWS_AS(PowerRule::parse("-1/k"), BadParams);
  CHECK_THROWS_AS(PowerRule::parse("abc"), BadParams);
}

TEST_CASE("schedule validation and regime tags") {
  ScaleSchedule s;
  s.eps = PowerRule::parse("1/k");
  CHECK(s.tag() == ScaleTag::eps_only);
  CHECK_NOTHROW(s.validate());
  s.h = PowerRule::parse("1/k");
  CHECK(s.tag() == ScaleTag::h_sim_e);
  CHECK_NOTHROW(s.validate());
  s.h = PowerRule::parse("k^-2");
  CHECK(s.tag() == ScaleTag::h_ll_e);
  CHECK_NOTHROW(s.validate());
  s.h = PowerRule::parse("1");
  CHECK_THROWS_AS(s.validate(), BadParams);
  s.h.reset();
  s.ks = {4, 4};
  CHECK_THROWS_AS(s.validate(), BadParams);
  s.ks = {};
  CHECK_THROWS_AS(s.validate(), BadParams);
}

TEST_CASE("family factory") {
  CHECK(make_family("oscillating").kind == FamilyKind::oscillating);
  CHECK(make_family("ce-osc").discrete());
  CHECK_FALSE(make_family("counterexample-2").discrete());
  CHECK(family_names().size() == 7);
  CHECK_THROWS_AS(make_family("nope"), BadParams);
  FamilyParams bad;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(make_family("oscillating", bad), BadParams);
  bad.sigma = 1.0;
  bad.half_length = -1.0;
  CHECK_THROWS_AS(make_family("oscillating", bad), BadParams);
}

TEST_CASE("verdicts") {
  CHECK(errors_trend_ok({0.5, 0.2, 0.1, 0.05}));
  CHECK(errors_trend_ok({0.5, 0.2, 0.1, 0.105}));  // within 10% slack
  CHECK_FALSE(errors_trend_ok({0.5, 0.2, 0.1, 0.2}));
  CHECK(errors_trend_ok({9.0, 0.1, 0.1, 0.1}));     // only the final three count
  CHECK(judge({0.1, 0.01, 0.001}, 2e-2) == Verdict::converged);
  CHECK(judge({0.3, 0.2, 0.1}, 2e-2) == Verdict::trend_ok);
  CHECK(judge({0.001, 0.01, 0.1}, 2e-2) == Verdict::failed);
  CHECK(judge({}, 2e-2) == Verdict::failed);
  CHECK(verdict_name(Verdict::trend_ok) == "trend_ok");
}

TEST_CASE("registry") {
  const auto& reg = registry();
  CHECK(reg.size() == 18);
  std::set<std::string> names;
  for (const auto& e : reg) {
    names.insert(e.name);
    CHECK_FALSE(e.anchor.empty());
  }
  CHECK(names.size() == reg.size());
  CHECK(find_experiment("shannon-asymptotic").has_value());
  CHECK_FALSE(find_experiment("missing").has_value());
}

TEST_CASE("predicted masses match closed forms") {
  const double s1 = std::sin(1.0);
  const auto sampled = *find_experiment("sampled-oscillating-bspline0");
  CHECK(predicted_mass(sampled.family, sampled.schedule, sampled.pipeline) == doctest::Approx(s1 * s1).epsilon(1e-10));
  const double sum = lattice_sum();
  const auto comp = *find_experiment("composition-bspline0-bspline1");
  CHECK(predicted_mass(comp.family, comp.schedule, comp.pipeline) ==
        doctest::Approx(s1 * s1 * s1 * s1 * s1 * s1 * sum).epsilon(1e-9));
  const auto proj = *find_experiment("projection-bspline1");
  CHECK(predicted_mass(proj.family, proj.schedule, proj.pipeline) == doctest::Approx(1.0 / sum).epsilon(1e-9));
  const auto shannon = *find_experiment("shannon-asymptotic");
  CHECK(predicted_mass(shannon.family, shannon.schedule, shannon.pipeline) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("every registered experiment passes") {
  for (const auto& e : registry()) {
    CAPTURE(e.name);
    const auto spec = e.build();
    const auto rep = run_convergence(spec);
    CHECK(rep.passed());
    CHECK(rep.rows.size() == spec.observables.size() * spec.schedule.ks.size());
    // Gates fire exactly on the counterexamples.
    CHECK(spec.counterexample == !rep.gate.empty());
  }
}

TEST_CASE("oscillating limit matches the closed form") {
  const auto rep = run_convergence(*find_experiment("canonical-oscillating-matched"));
  // int |rho|^2 e^{-x^2/2} dx = sqrt(2/3), chi(2) = 1.
  const auto& row = last_row(rep, "gauss_x:0,1 x gauss_xi:2,0.5");
  CHECK(row.predicted == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(std::abs(row.value - row.predicted) < 2e-2);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  const auto spec = *find_experiment("composition-bspline0-bspline1");
  const auto a = report_csv(run_convergence(spec, {1, std::nullopt, 0}));
  const auto b = report_csv(run_convergence(spec, {1, std::nullopt, 0}));
  const auto c = report_csv(run_convergence(spec, {3, std::nullopt, 0}));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.rfind("test,k,h,eps,value_re,value_im,predicted,abs_err", 0) == 0);
  const auto cex = report_csv(run_convergence(*find_experiment("counterexample-1")));
  CHECK(cex.find("naive,naive_err") != std::string::npos);
}

TEST_CASE("tolerance override changes the verdict") {
  const auto spec = *find_experiment("discretized-oscillating");
  const auto strict = run_convergence(spec, {1, 1e-12, 0});
  CHECK_FALSE(strict.passed());
}

TEST_CASE("filtering study") {
  ScaleSchedule s;
  s.ks = {8, 16, 32, 64};
  s.h = PowerRule::parse("k^-2");
  s.eps = PowerRule::parse("1/k");
  const auto haar = filtering_study(Profile::haar(), std::nullopt, s);
  CHECK(haar.predicted == 0.0);
  CHECK(haar.masses.back() < 5e-2);
  CHECK(haar.monotone);
  const auto sinc = filtering_study(Profile::sinc(), Profile::sinc(), s);
  CHECK(sinc.predicted == doctest::Approx(1.0));
  CHECK(std::abs(sinc.masses.back() - 1.0) < 2e-2);
  s.h = PowerRule::parse("1/k");
  CHECK_THROWS_AS(filtering_study(Profile::haar(), std::nullopt, s), BadParams);
}

TEST_CASE("h-oscillation diagnostic separates decaying profiles from ce-osc") {
  const auto ce = *find_experiment("ce-osc");
  for (double R : {2.0, 5.0, 10.0}) CHECK(h_oscillation_diagnostic(ce, ce.schedule.ks.back(), R) >= 0.99);
  const auto comp = *find_experiment("composition-bspline0-bspline1");
  CHECK(h_oscillation_diagnostic(comp, comp.schedule.ks.back(), 10.0) < 1e-2);
}

TEST_CASE("pipeline output at one k") {
  const auto spec = *find_experiment("discretized-oscillating");
  const auto out = evaluate_stage(spec, 16);
  REQUIRE(out.discrete.has_value());
  CHECK(out.discrete->h() == doctest::Approx(1.0 / 16.0));
  const auto id = evaluate_stage(*find_experiment("canonical-oscillating-matched"), 16);
  REQUIRE(id.field.has_value());
  CHECK(id.field->norm() == doctest::Approx(1.0).epsilon(1e-8));
}
