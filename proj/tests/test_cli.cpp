#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli_app.hpp"
#include "phasefold/io.hpp"
#include "phasefold/operators.hpp"

using namespace phasefold;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("phasefold_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string slurp(const fs::path& p) { return read_text(p.string()); }

ContinuousField packet(const SpatialWindow& w) {
  return ContinuousField::from_function(w, [](double x) { return std::exp(-0.5 * x * x) * std::polar(1.0, 3.0 * x); });
}

}  // namespace

TEST_CASE("tau and classify") {
  auto r = run_cli({"tau", "sinc", "0", "0.0", "1.0", "3.0"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "1 1 1\n");
  r = run_cli({"tau", "bspline:1", "0", "3.141592653589793"});
  CHECK(std::abs(std::stod(r.out) - 1.0 / 3.0) < 1e-10);
  r = run_cli({"classify", "bspline:1", "0"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("riesz A=0.333", 0) == 0);
  CHECK(run_cli({"tau", "delta", "0", "0"}).code == cli::kGate);
  CHECK(run_cli({"tau", "wavelet", "0", "0"}).code == cli::kUsage);
  CHECK(run_cli({"bogus"}).code == cli::kUsage);
}

TEST_CASE("listing experiments") {
  const auto r = run_cli({"list"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("counterexample-3\t") != std::string::npos);
  CHECK(run_cli({"--list"}).out == r.out);
  const auto unknown = run_cli({"experiment", "no-such-thing"});
  CHECK(unknown.code == cli::kUsage);
  CHECK(unknown.err.find("shannon-asymptotic") != std::string::npos);
}

TEST_CASE("experiment reports are written atomically and reproducibly") {
  const auto dir = scratch_dir("exp");
  auto r = run_cli({"--out", dir.string(), "experiment", "counterexample-1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("PASSED") != std::string::npos);
  CHECK(r.out.find("naive") != std::string::npos);
  const std::string first = slurp(dir / "counterexample-1.csv");
  CHECK(fs::exists(dir / "counterexample-1.json"));
  CHECK_FALSE(fs::exists(dir / "counterexample-1.csv.tmp"));
  r = run_cli({"--out", dir.string(), "--threads", "2", "experiment", "counterexample-1"});
  CHECK(slurp(dir / "counterexample-1.csv") == first);
  r = run_cli({"--out", dir.string(), "--tol", "1e-14", "experiment", "discretized-oscillating"});
  CHECK(r.code == cli::kNotConverged);
  fs::remove_all(dir);
}

TEST_CASE("experiment configs") {
  const auto dir = scratch_dir("config");
  write(dir / "good.json", R"json({
    "family": "oscillating",
    "schedule": {"k": [8, 16, 32, 64], "h": "1/k", "eps": "1/k"},
    "pipeline": "sample",
    "profiles": {"phi": "bspline:0"},
    "testfns": ["gauss_x:0,1 x bump_xi:2,1", "mass"]
  })json");
  auto r = run_cli({"--out", dir.string(), "experiment", (dir / "good.json").string()});
  CHECK(r.code == cli::kOk);
  CHECK(fs::exists(dir / "good.csv"));

  write(dir / "typo.json", R"json({"family": "oscillating", "testfns": ["mass"], "tolerance": 1})json");
  r = run_cli({"experiment", (dir / "typo.json").string()});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("tolerance") != std::string::npos);

  // Sinc sampling with an atom on the edge of its band: the gate refuses the run.
  write(dir / "gated.json", R"json({
    "family": "oscillating",
    "params": {"xi0": 3.141592653589793},
    "schedule": {"h": "1/k", "eps": "1/k"},
    "pipeline": "sample",
    "profiles": {"phi": "sinc"},
    "testfns": ["gauss_x:0,1 x bump_xi:3,1"]
  })json");
  r = run_cli({"experiment", (dir / "gated.json").string()});
  CHECK(r.code == cli::kGate);
  CHECK(r.err.find("NDViolated") != std::string::npos);

  write(dir / "broken.json", "{ not json");
  CHECK(run_cli({"experiment", (dir / "broken.json").string()}).code == cli::kUsage);

  // Counterexample mode with an explicit corrected measure.
  write(dir / "cex.json", R"json({
    "family": "counterexample-3",
    "schedule": {"h": "1/k", "eps": "1/k"},
    "pipeline": {"kind": "sample", "check_edges": false},
    "profiles": {"phi": "delta"},
    "predicted": {"corrected": "pm:x=sinc2(0)*xi=comb(3.141592653589793)"},
    "testfns": ["gauss_x:0,1 x flat_xi:9.42477796076938,6.78,1"]
  })json");
  r = run_cli({"--out", dir.string(), "experiment", (dir / "cex.json").string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("MSViolated") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("field commands") {
  const auto dir = scratch_dir("fields");
  const SpatialWindow w(1, 8.0, 512);
  const auto u = packet(w);
  write(dir / "u.csv", field_csv(u));

  auto r = run_cli({"sample", "bspline:0", "0.25", (dir / "u.csv").string()});
  REQUIRE(r.code == cli::kOk);
  const auto U = parse_discrete_field(r.out);
  const auto ref = sample(u, Profile::bspline(0), 0.25);
  REQUIRE(U.size() == ref.size());
  for (std::size_t i = 0; i < U.size(); ++i) CHECK(std::abs(U.values()[i] - ref.values()[i]) < 1e-12);

  write(dir / "U.csv", r.out);
  r = run_cli({"reconstruct", "sinc", (dir / "U.csv").string(), "--half-length", "8", "--points", "512"});
  REQUIRE(r.code == cli::kOk);
  const auto v = parse_continuous_field(r.out);
  CHECK(v.window().size() == 512);

  r = run_cli({"--out", dir.string(), "project", "bspline:1", "0", "0.125", (dir / "u.csv").string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("wrote") == 0);
  CHECK(fs::exists(dir / "project.csv"));

  r = run_cli({"pair", (dir / "u.csv").string(), "gauss_x:0,1 x gauss_xi:3,1", "--eps", "1"});
  REQUIRE(r.code == cli::kOk);
  double re = 0.0, im = 0.0;
  std::istringstream(r.out) >> re >> im;
  // chi(D) u = e^{3ix} e^{-x^2/4} / sqrt(2), so the pairing is int e^{-5x^2/4} dx / sqrt(2) = sqrt(2 pi / 5).
  CHECK(re == doctest::Approx(std::sqrt(2.0 * std::numbers::pi / 5.0)).epsilon(1e-8));
  CHECK(std::abs(im) < 1e-10);

  r = run_cli({"pair", (dir / "U.csv").string(), "gauss_x:0,1 x bump_xi:0,1", "--eps", "0.25", "--discrete"});
  CHECK(r.code == cli::kOk);

  r = run_cli({"wigner", (dir / "u.csv").string(), "--eps", "1", "--stride", "64"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.rfind("x,xi,re,im\n", 0) == 0);

  CHECK(run_cli({"sample", "sinc", "0.25", (dir / "missing.csv").string()}).code == cli::kUsage);
  fs::remove_all(dir);
}
