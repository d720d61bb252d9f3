#include "phasefold/testfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "phasefold/errors.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + sep.size();
  }
  return out;
}

double to_double(std::string_view s) {
  const std::string str(trim(s));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw BadParams("expected a number, got '" + str + "'");
  }
  if (used != str.size()) throw BadParams("expected a number, got '" + str + "'");
  return v;
}

}  // namespace

Factor Factor::gauss(double center, double width) {
  if (!(width > 0.0)) throw BadParams("gauss factor width must be positive");
  return {FactorKind::gauss, center, width, 0.0, 0, 1.0};
}

Factor Factor::bump(double center, double width) {
  if (!(width > 0.0)) throw BadParams("bump factor width must be positive");
  return {FactorKind::bump, center, width, 0.0, 0, 1.0};
}

Factor Factor::flat(double center, double width, double taper) {
  if (!(width >= 0.0) || !(taper > 0.0)) throw BadParams("flat factor needs width >= 0 and taper > 0");
  return {FactorKind::flat, center, width, taper, 0, 1.0};
}

Factor Factor::one() { return {}; }

Factor Factor::hermite(double center, double width, int degree) {
  if (!(width > 0.0) || degree < 0) throw BadParams("hermite factor needs width > 0 and degree >= 0");
  return {FactorKind::hermite, center, width, 0.0, degree, 1.0};
}

double Factor::operator()(double t) const {
  switch (kind) {
    case FactorKind::one:
      return amplitude;
    case FactorKind::gauss: {
      const double u = (t - center) / width;
      return amplitude * std::exp(-0.5 * u * u);
    }
    case FactorKind::bump: {
      const double u = (t - center) / width;
      if (std::abs(u) >= 1.0) return 0.0;
      return amplitude * 0.5 * (1.0 + std::cos(kPi * u));
    }
    case FactorKind::flat: {
      const double d = std::abs(t - center);
      if (d <= width) return amplitude;
      if (d >= width + taper) return 0.0;
      return amplitude * 0.5 * (1.0 + std::cos(kPi * (d - width) / taper));
    }
    case FactorKind::hermite: {
      const double u = (t - center) / width;
      return amplitude * std::pow(u, degree) * std::exp(-0.5 * u * u);
    }
  }
  return 0.0;
}

std::optional<std::pair<double, double>> Factor::support() const {
  if (kind == FactorKind::bump) return std::make_pair(center - width, center + width);
  if (kind == FactorKind::flat) return std::make_pair(center - width - taper, center + width + taper);
  return std::nullopt;
}

std::pair<double, double> Factor::effective_support(double tol) const {
  if (auto s = support()) return *s;
  if (kind == FactorKind::one) {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
  }
  // t^n e^{-t^2/2} < tol beyond r with r^2/2 - n log r >= log(1/tol).
  double r = std::sqrt(2.0 * std::log(1.0 / tol));
  for (int it = 0; it < 50; ++it) {
    r = std::sqrt(2.0 * (std::log(1.0 / tol) + degree * std::log(std::max(r, 1.0))));
  }
  return {center - r * width, center + r * width};
}

std::vector<double> Factor::breakpoints() const {
  if (kind == FactorKind::bump) return {center - width, center + width};
  if (kind == FactorKind::flat) {
    return {center - width - taper, center - width, center + width, center + width + taper};
  }
  return {};
}

Factor Factor::affine(double a, double b) const {
  if (a == 0.0) throw BadParams("degenerate affine change of variables");
  Factor f = *this;
  if (kind == FactorKind::one) return f;
  // base((a t + b - c) / w) = base((t - (c - b)/a) / (w/a)); reflection via parity.
  f.center = (center - b) / a;
  const double scale = 1.0 / std::abs(a);
  if (kind == FactorKind::flat) {
    f.width = width * scale;
    f.taper = taper * scale;
  } else {
    f.width = width * scale;
  }
  if (a < 0.0 && kind == FactorKind::hermite && degree % 2 == 1) f.amplitude = -amplitude;
  return f;
}

std::string Factor::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (amplitude != 1.0) os << amplitude << "*";
  switch (kind) {
    case FactorKind::one: os << "one"; break;
    case FactorKind::gauss: os << "gauss:" << center << "," << width; break;
    case FactorKind::bump: os << "bump:" << center << "," << width; break;
    case FactorKind::flat: os << "flat:" << center << "," << width << "," << taper; break;
    case FactorKind::hermite: os << "hermite:" << center << "," << width << "," << degree; break;
  }
  return os.str();
}

TestFunction TestFunction::separable(const Factor& x, const Factor& xi, double coeff) {
  return {1, {TestTerm{coeff, {x}, {xi}}}};
}

TestFunction TestFunction::separable2(const Factor& x1, const Factor& x2, const Factor& xi1,
                                      const Factor& xi2, double coeff) {
  return {2, {TestTerm{coeff, {x1, x2}, {xi1, xi2}}}};
}

double x_part(const TestTerm& t, const Vec2& x, int dim) {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= t.x[static_cast<std::size_t>(k)](x[static_cast<std::size_t>(k)]);
  return v;
}

double xi_part(const TestTerm& t, const Vec2& xi, int dim) {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= t.xi[static_cast<std::size_t>(k)](xi[static_cast<std::size_t>(k)]);
  return v;
}

double TestFunction::operator()(double x, double xi) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.coeff * t.x[0](x) * t.xi[0](xi);
  return v;
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i) os << " + ";
    if (t.coeff != 1.0) os << t.coeff << "*";
    for (std::size_t k = 0; k < t.x.size(); ++k) {
      if (k) os << "&";
      auto d = t.x[k].describe();
      const auto colon = d.find(':');
      os << (colon == std::string::npos ? d + "_x" : d.insert(colon, "_x"));
    }
    os << " x ";
    for (std::size_t k = 0; k < t.xi.size(); ++k) {
      if (k) os << "&";
      auto d = t.xi[k].describe();
      const auto colon = d.find(':');
      os << (colon == std::string::npos ? d + "_xi" : d.insert(colon, "_xi"));
    }
  }
  return os.str();
}

Factor parse_factor(std::string_view spec, char variable) {
  spec = trim(spec);
  double amplitude = 1.0;
  if (const auto star = spec.find('*'); star != std::string_view::npos) {
    amplitude = to_double(spec.substr(0, star));
    spec = trim(spec.substr(star + 1));
  }
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const auto under = head.rfind('_');
  if (under == std::string_view::npos) throw BadParams("factor '" + std::string(spec) + "' lacks _x or _xi");
  const std::string_view name = head.substr(0, under);
  const std::string_view var = head.substr(under + 1);
  if ((variable == 'x' && var != "x") || (variable == 'k' && var != "xi")) {
    throw BadParams("factor '" + std::string(spec) + "' is on the wrong variable");
  }
  std::vector<double> p;
  if (colon != std::string_view::npos) {
    for (auto part : split(spec.substr(colon + 1), ",")) p.push_back(to_double(part));
  }
  auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw BadParams("factor '" + std::string(name) + "' takes " + std::to_string(n) + " parameters");
    }
  };
  Factor f;
  if (name == "gauss") {
    need(2);
    f = Factor::gauss(p[0], p[1]);
  } else if (name == "bump") {
    need(2);
    f = Factor::bump(p[0], p[1]);
  } else if (name == "flat") {
    need(3);
    f = Factor::flat(p[0], p[1], p[2]);
  } else if (name == "one") {
    need(0);
    f = Factor::one();
  } else if (name == "hermite") {
    need(3);
    if (p[2] != std::floor(p[2])) throw BadParams("hermite degree must be an integer");
    f = Factor::hermite(p[0], p[1], static_cast<int>(p[2]));
  } else {
    throw BadParams("unknown factor kind '" + std::string(name) + "'");
  }
  f.amplitude = amplitude;
  return f;
}

TestFunction parse_test_function(std::string_view spec) {
  TestFunction tf;
  tf.dim = 0;
  for (auto term_str : split(spec, " + ")) {
    term_str = trim(term_str);
    TestTerm term;
    const auto parts = split(term_str, " x ");
    if (parts.size() != 2) throw BadParams("test term '" + std::string(term_str) + "' must read '<x factor> x <xi factor>'");
    std::string_view xs = trim(parts[0]);
    // Optional leading coefficient "c*" applies when followed by another '*'-free factor.
    if (const auto star = xs.find('*'); star != std::string_view::npos) {
      const auto rest = xs.substr(star + 1);
      if (rest.find('*') == std::string_view::npos) {
        try {
          term.coeff = to_double(xs.substr(0, star));
          xs = rest;
        } catch (const BadParams&) {
        }
      }
    }
    for (auto f : split(xs, "&")) term.x.push_back(parse_factor(f, 'x'));
    for (auto f : split(parts[1], "&")) term.xi.push_back(parse_factor(f, 'k'));
    if (term.x.size() != term.xi.size() || term.x.size() > 2) {
      throw BadParams("test term needs matching per-axis factor counts (1 or 2)");
    }
    const int d = static_cast<int>(term.x.size());
    if (tf.dim != 0 && tf.dim != d) throw BadParams("test terms of different dimensions");
    tf.dim = d;
    tf.terms.push_back(std::move(term));
  }
  if (tf.terms.empty()) throw BadParams("empty test function");
  return tf;
}

}  // namespace phasefold
