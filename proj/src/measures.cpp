#include "phasefold/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "phasefold/errors.hpp"
#include "phasefold/quadrature.hpp"

namespace phasefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGateTol = 1e-9;
constexpr double kMsRange = kTwoPi * 64.0;
constexpr double kRoundoffSq = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double weight_product(const std::vector<XiWeight>& ws, double xi) {
  double v = 1.0;
  for (const auto& w : ws) {
    v *= w(xi);
    if (v == 0.0) break;
  }
  return v;
}

bool weights_decay(const std::vector<XiWeight>& ws) {
  for (const auto& w : ws) {
    if (w.kind != XiWeight::Kind::fourier_sq) continue;
    const auto k = w.profile.kind();
    if (k != ProfileKind::delta && k != ProfileKind::ceosc) return true;
  }
  return false;
}

std::vector<double> weight_breaks(const std::vector<XiWeight>& ws, double lo, double hi) {
  std::vector<double> out;
  for (const auto& w : ws) {
    if (w.kind == XiWeight::Kind::bessel) continue;
    if (w.kind == XiWeight::Kind::fourier_sq) {
      for (double d : w.profile.discontinuities(lo, hi)) out.push_back(d);
    } else {
      // tau is 2 pi-periodic: its breaks are the reduced discontinuities of the profile.
      const double reach = kTwoPi * 64.0;
      std::vector<double> base;
      for (double d : w.profile.discontinuities(-reach, reach)) base.push_back(reduce_angle(d));
      for (double b : quad::periodic_breaks(lo, hi, base, kTwoPi)) out.push_back(b);
    }
  }
  return out;
}

// Support of the gauss2hat density up to ~1e-17 relative.
std::pair<double, double> density_support(const XiFactor& f) {
  const double r = 6.5 / f.sigma;
  return {f.xi0 - r, f.xi0 + r};
}

struct XiIntegrand {
  std::function<double(double)> g;
  double lo = -kInf;
  double hi = kInf;
  std::vector<double> breaks;
  double resolution = 0.05;
};

// int g d F for an unscaled xi-factor F.
double integrate_xi(const XiFactor& f, const XiIntegrand& in) {
  switch (f.kind) {
    case XiKind::point:
      return f.weight_at(f.xi0) * in.g(f.xi0);
    case XiKind::comb: {
      if (std::isfinite(in.lo) && std::isfinite(in.hi)) {
        double sum = 0.0;
        for (double node : f.nodes(in.lo, in.hi)) sum += f.weight_at(node) * in.g(node);
        return sum;
      }
      if (!f.summable()) {
        throw UnsupportedPairing("a non-summable lattice comb " + f.describe() +
                                 " pairs only with compactly supported xi test functions");
      }
      double sum = f.weight_at(f.xi0) * in.g(f.xi0);
      for (int sign : {1, -1}) {
        int quiet = 0;
        double peak = std::abs(sum);
        for (long n = 1; n < 1000000 && quiet < 16; ++n) {
          const double node = f.xi0 + sign * kTwoPi * static_cast<double>(n);
          const double term = f.weight_at(node) * in.g(node);
          sum += term;
          peak = std::max(peak, std::abs(term));
          quiet = std::abs(term) <= 1e-18 * std::max(peak, 1e-300) || term == 0.0 ? quiet + 1 : 0;
        }
      }
      return sum;
    }
    case XiKind::density: {
      const auto [a, b] = density_support(f);
      const double lo = std::max(a, in.lo);
      const double hi = std::min(b, in.hi);
      if (!(hi > lo)) return 0.0;
      std::vector<double> breaks = in.breaks;
      breaks.push_back(f.xi0);
      for (double d : weight_breaks(f.weights, lo, hi)) breaks.push_back(d);
      const double width = std::min(in.resolution, 0.125 / f.sigma);
      return quad::composite(
          quad::RealFn([&](double xi) { return f.weight_at(xi) * f.base_density(xi) * in.g(xi); }), lo,
          hi, breaks, 16, width);
    }
    case XiKind::periodic: {
      if (!std::isfinite(in.lo) || !std::isfinite(in.hi)) {
        throw UnsupportedPairing("a periodized density " + f.describe() +
                                 " pairs only with compactly supported xi test functions");
      }
      const auto [a, b] = density_support(f);
      std::vector<double> breaks = in.breaks;
      for (double d : weight_breaks(f.weights, in.lo, in.hi)) breaks.push_back(d);
      std::vector<double> base{f.xi0};
      for (double d : weight_breaks(f.base, a, b)) base.push_back(d);
      for (double d : quad::periodic_breaks(in.lo, in.hi, base, kTwoPi)) breaks.push_back(d);
      auto value = [&](double xi) {
        const double outer = in.g(xi);
        if (outer == 0.0) return 0.0;
        double sum = 0.0;
        const long n_lo = static_cast<long>(std::ceil((a - xi) / kTwoPi));
        const long n_hi = static_cast<long>(std::floor((b - xi) / kTwoPi));
        for (long n = n_lo; n <= n_hi; ++n) {
          const double eta = xi + kTwoPi * static_cast<double>(n);
          sum += f.base_density(eta) * weight_product(f.base, eta);
        }
        return outer * f.weight * weight_product(f.weights, xi) * sum;
      };
      const double width = std::min(in.resolution, 0.125 / f.sigma);
      return quad::composite(quad::RealFn(value), in.lo, in.hi, breaks, 16, width);
    }
  }
  return 0.0;
}

XiIntegrand from_factor(const Factor& chi) {
  XiIntegrand in;
  in.g = [chi](double xi) { return chi(xi); };
  if (chi.kind != FactorKind::one) {
    const auto [a, b] = chi.effective_support(1e-16);
    in.lo = a;
    in.hi = b;
    in.resolution = std::min(0.05, chi.width / 16.0);
    if (chi.kind == FactorKind::flat) in.resolution = std::min(0.05, chi.taper / 16.0);
  }
  in.breaks = chi.breakpoints();
  return in;
}

double xi_mass_with(const XiFactor& f, const std::function<double(double)>& c,
                    const std::vector<double>& breaks) {
  if (f.scale != 1.0) throw BadParams("rescaled xi-factors only support pairings");
  XiIntegrand in;
  in.g = c;
  in.breaks = breaks;
  if (f.kind == XiKind::periodic) {
    throw UnsupportedPairing("a periodized density has infinite xi-mass");
  }
  return integrate_xi(f, in);
}

void require_unscaled(const PredictedMeasure& mu) {
  for (const auto& t : mu.terms) {
    if (t.xi.scale != 1.0) throw BadParams("operator formulas need measures in the unscaled xi variable");
  }
}

std::optional<double> discontinuity_near(const Profile& phi, double xi) {
  for (double d : phi.discontinuities(xi - 1.0, xi + 1.0)) {
    if (std::abs(d - xi) <= kGateTol * std::max(1.0, std::abs(xi))) return d;
  }
  return std::nullopt;
}

bool x_singular_pair(const XFactor& a, const XFactor& b) {
  if (a.singular() && b.singular()) return std::abs(a.x0 - b.x0) > kGateTol;
  return a.singular() != b.singular();
}

double fourier_sq_at(const Profile& phi, double xi) { return phi.fourier_sq(xi); }

}  // namespace

double XFactor::density(double x) const {
  const double t = x - x0;
  switch (kind) {
    case XKind::point:
      return 0.0;
    case XKind::gauss2:
      return weight * std::exp(-t * t / (sigma * sigma)) / (sigma * std::sqrt(kPi));
    case XKind::sinc2: {
      if (std::abs(t) < 1e-8) return weight / (kPi * kPi);
      const double s = std::sin(t);
      return weight * s * s / (kPi * kPi * t * t);
    }
    case XKind::sinc2half: {
      if (std::abs(t) < 1e-8) return weight * 0.25 / (kPi * kPi);
      const double s = std::sin(0.5 * t);
      return weight * s * s / (kPi * kPi * t * t);
    }
  }
  return 0.0;
}

double XFactor::mass() const {
  switch (kind) {
    case XKind::point:
    case XKind::gauss2:
      return weight;
    case XKind::sinc2:
      return weight / kPi;
    case XKind::sinc2half:
      return weight / kTwoPi;
  }
  return 0.0;
}

std::string XFactor::describe() const {
  std::string w = weight == 1.0 ? "" : "," + num(weight);
  switch (kind) {
    case XKind::point: return "point(" + num(x0) + w + ")";
    case XKind::gauss2: return "gauss2(" + num(x0) + (sigma == 1.0 ? "" : "," + num(sigma)) + ")" + (weight == 1.0 ? "" : "*" + num(weight));
    case XKind::sinc2: return "sinc2(" + num(x0) + ")" + (weight == 1.0 ? "" : "*" + num(weight));
    case XKind::sinc2half: return "sinc2half(" + num(x0) + ")" + (weight == 1.0 ? "" : "*" + num(weight));
  }
  return "?";
}

double XiWeight::operator()(double xi) const {
  switch (kind) {
    case Kind::fourier_sq:
      return profile.fourier_sq(xi);
    case Kind::tau:
      return phasefold::tau(profile, s, xi).value;
    case Kind::bessel:
      return std::pow(japanese(xi), 2.0 * s);
  }
  return 0.0;
}

double XiFactor::weight_at(double xi) const {
  double v = weight * weight_product(weights, xi);
  if (kind == XiKind::comb || kind == XiKind::point) v *= weight_product(base, xi0);
  return v;
}

double XiFactor::base_density(double xi) const {
  const double t = xi - xi0;
  return sigma * std::exp(-sigma * sigma * t * t) / std::sqrt(kPi);
}

std::vector<double> XiFactor::nodes(double lo, double hi) const {
  std::vector<double> out;
  if (kind == XiKind::point) {
    if (xi0 >= lo && xi0 <= hi) out.push_back(xi0);
    return out;
  }
  if (kind != XiKind::comb) return out;
  const long n_lo = static_cast<long>(std::ceil((lo - xi0) / kTwoPi));
  const long n_hi = static_cast<long>(std::floor((hi - xi0) / kTwoPi));
  for (long n = n_lo; n <= n_hi; ++n) out.push_back(xi0 + kTwoPi * static_cast<double>(n));
  return out;
}

bool XiFactor::summable() const {
  if (kind == XiKind::point || kind == XiKind::density) return true;
  if (kind == XiKind::periodic) return false;
  return weights_decay(weights);
}

std::string XiFactor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case XiKind::point: os << "point(" << num(xi0); break;
    case XiKind::comb: os << "comb(" << num(xi0); break;
    case XiKind::density: os << "gauss2hat(" << num(xi0) << "," << num(sigma); break;
    case XiKind::periodic: os << "periodized gauss2hat(" << num(xi0) << "," << num(sigma); break;
  }
  if (weight != 1.0) os << "," << num(weight);
  os << ")";
  auto list = [&](const std::vector<XiWeight>& ws, const char* where) {
    for (const auto& w : ws) {
      os << "*";
      switch (w.kind) {
        case XiWeight::Kind::fourier_sq: os << "|" << w.profile.name() << "^|^2"; break;
        case XiWeight::Kind::tau: os << "tau[" << w.profile.name() << ",s=" << num(w.s) << "]"; break;
        case XiWeight::Kind::bessel: os << "<.>^" << num(2 * w.s); break;
      }
      os << where;
    }
  };
  list(base, "@base");
  list(weights, "");
  if (scale != 1.0) os << " rescaled by " << num(scale);
  return os.str();
}

std::string PredictedMeasure::describe() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    if (terms[i].coeff != 1.0) os << num(terms[i].coeff) << "*";
    os << terms[i].x.describe() << " (x) " << terms[i].xi.describe();
  }
  return os.str();
}

double XMeasure::mass() const {
  double m = 0.0;
  for (const auto& [c, x] : terms) m += c * x.mass();
  return m;
}

double XMeasure::pair(const Factor& phi) const {
  double v = 0.0;
  for (const auto& [c, x] : terms) v += c * pair_x(x, phi);
  return v;
}

std::string_view regime_name(Regime r) { return r == Regime::h_eq_e ? "h=eps" : "h<<eps"; }

double pair_x(const XFactor& x, const Factor& phi) {
  if (x.kind == XKind::point) return x.weight * phi(x.x0);
  if (phi.kind == FactorKind::one) return phi.amplitude * x.mass();
  const auto [a, b] = phi.effective_support(1e-16);
  double width = std::min(0.1, phi.width / 16.0);
  if (phi.kind == FactorKind::flat) width = std::min(width, phi.taper / 16.0);
  if (x.kind == XKind::gauss2) width = std::min(width, x.sigma / 8.0);
  std::vector<double> breaks = phi.breakpoints();
  breaks.push_back(x.x0);
  return quad::composite(quad::RealFn([&](double t) { return x.density(t) * phi(t); }), a, b, breaks, 16,
                         width);
}

double pair_xi(const XiFactor& xi, const Factor& chi) {
  const Factor rescaled = xi.scale == 1.0 ? chi : chi.affine(1.0 / xi.scale, 0.0);
  return integrate_xi(xi, from_factor(rescaled));
}

double pair_predicted(const PredictedMeasure& mu, const TestFunction& a) {
  if (a.dim != 1) throw BadParams("predicted measures are 1-D");
  double total = 0.0;
  for (const auto& term : mu.terms) {
    for (const auto& t : a.terms) {
      const double px = pair_x(term.x, t.x[0]);
      if (px == 0.0) continue;
      total += term.coeff * t.coeff * px * pair_xi(term.xi, t.xi[0]);
    }
  }
  return total;
}

void check_nd(const PredictedMeasure& mu, const Profile& phi, Regime regime) {
  require_unscaled(mu);
  if (mu.terms.empty()) return;
  if (regime == Regime::h_ll_e) {
    if (auto d = discontinuity_near(phi, 0.0)) {
      throw NDViolated("the Fourier transform of " + phi.name() + " is discontinuous at xi = 0");
    }
    return;
  }
  for (std::size_t i = 0; i < mu.terms.size(); ++i) {
    const auto& f = mu.terms[i].xi;
    if (f.kind == XiKind::density || f.kind == XiKind::periodic) continue;
    for (double node : f.nodes(-kMsRange, kMsRange)) {
      if (f.weight_at(node) == 0.0) continue;
      if (auto d = discontinuity_near(phi, node)) {
        throw NDViolated("term " + std::to_string(i) + " has an atom at xi = " + num(node) +
                         " on a discontinuity of the Fourier transform of " + phi.name());
      }
    }
  }
}

void check_ms(const PredictedMeasure& mu, const Profile& phi) {
  require_unscaled(mu);
  struct Atom {
    std::size_t term;
    double xi;
  };
  struct Band {
    std::size_t term;
    double lo, hi;
  };
  std::vector<Atom> atoms;
  std::vector<Band> bands;
  for (std::size_t i = 0; i < mu.terms.size(); ++i) {
    const auto& f = mu.terms[i].xi;
    if (f.kind == XiKind::point || f.kind == XiKind::comb) {
      // Weights below the squared unit roundoff of the peak are residues of exact zeros.
      std::vector<std::pair<double, double>> weighted;
      double peak = 0.0;
      for (double node : f.nodes(-kMsRange, kMsRange)) {
        const double v = std::abs(f.weight_at(node) * fourier_sq_at(phi, node));
        weighted.emplace_back(node, v);
        peak = std::max(peak, v);
      }
      const double floor = peak * kRoundoffSq;
      std::vector<double> live;
      for (const auto& [node, v] : weighted) {
        if (v > floor) live.push_back(node);
      }
      if (live.size() > 1) {
        throw MSViolated("term " + std::to_string(i) + " places weighted atoms at xi = " + num(live[0]) +
                         " and xi = " + num(live[1]) + ", whose 2 pi-translates coincide");
      }
      if (!live.empty()) atoms.push_back({i, live[0]});
      continue;
    }
    if (f.kind == XiKind::periodic) {
      throw MSViolated("term " + std::to_string(i) + " is already periodic in xi; its translates coincide");
    }
    auto [lo, hi] = density_support(f);
    if (auto sup = phi.fourier_support()) {
      lo = std::max(lo, sup->first);
      hi = std::min(hi, sup->second);
    }
    if (!(hi > lo)) continue;
    if (hi - lo > kTwoPi + kGateTol) {
      throw MSViolated("term " + std::to_string(i) + " carries an absolutely continuous xi-density on [" +
                       num(lo) + ", " + num(hi) + "], longer than one period: its translates overlap");
    }
    bands.push_back({i, lo, hi});
  }
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      const double gap = std::remainder(atoms[a].xi - atoms[b].xi, kTwoPi);
      if (std::abs(gap) > kGateTol) continue;
      if (x_singular_pair(mu.terms[atoms[a].term].x, mu.terms[atoms[b].term].x)) continue;
      throw MSViolated("atoms at xi = " + num(atoms[a].xi) + " (term " + std::to_string(atoms[a].term) +
                       ") and xi = " + num(atoms[b].xi) + " (term " + std::to_string(atoms[b].term) +
                       ") differ by a lattice vector and share non-singular x-factors");
    }
  }
  for (std::size_t a = 0; a < bands.size(); ++a) {
    for (std::size_t b = a + 1; b < bands.size(); ++b) {
      if (x_singular_pair(mu.terms[bands[a].term].x, mu.terms[bands[b].term].x)) continue;
      if (!mu.terms[bands[a].term].x.singular() || !mu.terms[bands[b].term].x.singular()) {
        throw MSViolated("xi-densities of terms " + std::to_string(bands[a].term) + " and " +
                         std::to_string(bands[b].term) + " are not certified disjoint modulo 2 pi");
      }
    }
  }
}

PredictedMeasure apply_reconstruction(const PredictedMeasure& mu, const Profile& phi, Regime regime,
                                      bool enforce_gates) {
  require_unscaled(mu);
  if (enforce_gates) check_nd(mu, phi, regime);
  PredictedMeasure out;
  for (auto term : mu.terms) {
    if (regime == Regime::h_ll_e) {
      term.coeff *= phi.fourier_sq(0.0);
    } else {
      term.xi.weights.push_back({XiWeight::Kind::fourier_sq, phi, 0.0});
      if (term.xi.kind == XiKind::point && term.xi.weight_at(term.xi.xi0) == 0.0) term.coeff = 0.0;
    }
    if (term.coeff != 0.0) out.terms.push_back(std::move(term));
  }
  return out;
}

PredictedMeasure apply_sampling(const PredictedMeasure& mu, const Profile& phi, Regime regime,
                                bool enforce_gates) {
  require_unscaled(mu);
  if (enforce_gates) {
    check_nd(mu, phi, regime);
    if (regime == Regime::h_eq_e) check_ms(mu, phi);
  }
  PredictedMeasure out;
  for (auto term : mu.terms) {
    if (regime == Regime::h_ll_e) {
      term.coeff *= phi.fourier_sq(0.0);
      if (term.coeff != 0.0) out.terms.push_back(std::move(term));
      continue;
    }
    XiFactor& f = term.xi;
    const XiWeight w{XiWeight::Kind::fourier_sq, phi, 0.0};
    switch (f.kind) {
      case XiKind::point: {
        const double v = f.weight_at(f.xi0) * phi.fourier_sq(f.xi0);
        XiFactor comb;
        comb.kind = XiKind::comb;
        comb.xi0 = f.xi0;
        comb.weight = v;
        f = comb;
        if (v == 0.0) term.coeff = 0.0;
        break;
      }
      case XiKind::comb: {
        XiFactor weighted = f;
        weighted.weights.push_back(w);
        if (!weighted.summable()) {
          throw NonSummableTail("folding the comb " + f.describe() + " with " + phi.name() + " diverges");
        }
        XiIntegrand all;
        all.g = [](double) { return 1.0; };
        const double total = integrate_xi(weighted, all);
        XiFactor comb;
        comb.kind = XiKind::comb;
        comb.xi0 = reduce_angle(f.xi0);
        comb.weight = total;
        f = comb;
        if (total == 0.0) term.coeff = 0.0;
        break;
      }
      case XiKind::density: {
        XiFactor p = f;
        p.kind = XiKind::periodic;
        p.base = f.weights;
        p.base.push_back(w);
        p.weights.clear();
        f = p;
        break;
      }
      case XiKind::periodic:
        throw BadParams("a periodized density cannot be folded again");
    }
    if (term.coeff != 0.0) out.terms.push_back(std::move(term));
  }
  return out;
}

PredictedMeasure apply_composition(const PredictedMeasure& mu, const Profile& phi, const Profile& psi,
                                   Regime regime, bool enforce_gates) {
  return apply_reconstruction(apply_sampling(mu, phi, regime, enforce_gates), psi, regime, enforce_gates);
}

XMeasure defect_from_wigner(const PredictedMeasure& mu, const Profile& phi, const Profile& psi,
                            double s_prime, Regime regime) {
  require_unscaled(mu);
  XMeasure out;
  const double reach = kTwoPi * 64.0;
  std::vector<double> breaks;
  for (double d : phi.discontinuities(-reach, reach)) breaks.push_back(d);
  std::vector<double> psi_base;
  for (double d : psi.discontinuities(-reach, reach)) psi_base.push_back(reduce_angle(d));
  for (double b : quad::periodic_breaks(-reach, reach, psi_base, kTwoPi)) breaks.push_back(b);

  for (const auto& term : mu.terms) {
    double mass = 0.0;
    if (regime == Regime::h_ll_e) {
      const double c = tau(psi, s_prime, 0.0).value * phi.fourier_sq(0.0);
      mass = c == 0.0 ? 0.0 : c * xi_mass_with(term.xi, [](double) { return 1.0; }, {});
    } else {
      mass = xi_mass_with(
          term.xi, [&](double xi) { return tau(psi, s_prime, xi).value * phi.fourier_sq(xi); }, breaks);
    }
    if (mass != 0.0) out.terms.push_back({term.coeff * mass, term.x});
  }
  return out;
}

XMeasure x_marginal(const PredictedMeasure& mu) {
  XMeasure out;
  for (const auto& term : mu.terms) {
    const double mass = pair_xi(term.xi, Factor::one());
    if (mass != 0.0) out.terms.push_back({term.coeff * mass, term.x});
  }
  return out;
}

PredictedMeasure periodize_xi(const PredictedMeasure& mu, double s) {
  require_unscaled(mu);
  PredictedMeasure out;
  const XiWeight bessel{XiWeight::Kind::bessel, Profile::sinc(), s};
  for (auto term : mu.terms) {
    XiFactor& f = term.xi;
    switch (f.kind) {
      case XiKind::point: {
        XiFactor comb;
        comb.kind = XiKind::comb;
        comb.xi0 = f.xi0;
        comb.weight = f.weight_at(f.xi0) * bessel(f.xi0);
        f = comb;
        break;
      }
      case XiKind::comb: {
        XiFactor weighted = f;
        weighted.weights.push_back(bessel);
        if (!weighted.summable()) {
          throw NonSummableTail("periodizing the comb " + f.describe() + " diverges");
        }
        XiIntegrand all;
        all.g = [](double) { return 1.0; };
        XiFactor comb;
        comb.kind = XiKind::comb;
        comb.xi0 = reduce_angle(f.xi0);
        comb.weight = integrate_xi(weighted, all);
        f = comb;
        break;
      }
      case XiKind::density: {
        XiFactor p = f;
        p.kind = XiKind::periodic;
        p.base = f.weights;
        p.base.push_back(bessel);
        p.weights.clear();
        f = p;
        break;
      }
      case XiKind::periodic:
        throw BadParams("measure is already periodic in xi");
    }
    out.terms.push_back(std::move(term));
  }
  return out;
}

PredictedMeasure scale_change(const PredictedMeasure& mu, double c) {
  if (!(c > 0.0)) throw BadParams("scale change factor must be positive");
  PredictedMeasure out = mu;
  for (auto& t : out.terms) t.xi.scale *= c;
  return out;
}

PredictedMeasure canonical_example(ExampleKind kind, ScaleRegime regime, double center, double sigma) {
  PredictedMeasure mu;
  if (regime == ScaleRegime::coarser) return mu;
  MeasureTerm t;
  if (kind == ExampleKind::concentrating) {
    t.x = {XKind::point, center, 1.0, 1.0};
    if (regime == ScaleRegime::finer) {
      t.xi.kind = XiKind::point;
      t.xi.xi0 = 0.0;
    } else {
      t.xi.kind = XiKind::density;
      t.xi.xi0 = 0.0;
      t.xi.sigma = sigma;
    }
  } else {
    t.x = {XKind::gauss2, 0.0, 1.0, sigma};
    t.xi.kind = XiKind::point;
    t.xi.xi0 = regime == ScaleRegime::finer ? 0.0 : center;
  }
  mu.terms.push_back(t);
  return mu;
}

}  // namespace phasefold
