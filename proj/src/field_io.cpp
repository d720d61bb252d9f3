#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasefold/errors.hpp"
#include "phasefold/io.hpp"

namespace phasefold {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Table {
  int coords = 1;
  std::vector<std::vector<double>> rows;
};

Table parse_table(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  Table t;
  if (!std::getline(in, line)) throw BadParams("empty field file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line == "coord,re,im") {
    t.coords = 1;
  } else if (line == "coord,coord2,re,im") {
    t.coords = 2;
  } else {
    throw BadParams("field header must be 'coord,re,im' or 'coord,coord2,re,im', got '" + line + "'");
  }
  const std::size_t width = static_cast<std::size_t>(t.coords) + 2;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      try {
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0) throw BadParams("bad number '" + cell + "' on line " + std::to_string(lineno));
    }
    if (row.size() != width) throw BadParams("line " + std::to_string(lineno) + " has the wrong number of columns");
    t.rows.push_back(std::move(row));
  }
  if (t.rows.empty()) throw BadParams("field file has no data rows");
  return t;
}

// Spacing and count of an equally spaced ascending sequence.
std::pair<double, std::size_t> spacing(const std::vector<double>& xs) {
  if (xs.size() < 2) throw BadParams("need at least two coordinates per axis");
  const double d = xs[1] - xs[0];
  if (!(d > 0.0)) throw BadParams("coordinates must increase");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs(xs[i] - xs[0] - d * static_cast<double>(i)) > 1e-9 * std::max(1.0, std::abs(xs[i]))) {
      throw BadParams("coordinates are not equally spaced");
    }
  }
  return {d, xs.size()};
}

std::vector<double> axis(const Table& t, int which, std::size_t n_fast) {
  std::vector<double> xs;
  if (which == 0) {
    for (std::size_t i = 0; i < t.rows.size(); i += n_fast) xs.push_back(t.rows[i][0]);
  } else {
    for (std::size_t j = 0; j < n_fast; ++j) xs.push_back(t.rows[j][1]);
  }
  return xs;
}

std::size_t fast_count(const Table& t) {
  if (t.coords == 1) return 1;
  std::size_t n = 1;
  while (n < t.rows.size() && t.rows[n][0] == t.rows[0][0]) ++n;
  if (t.rows.size() % n != 0) throw BadParams("2-D field is not a full rectangular grid");
  return n;
}

std::vector<cplx> values_of(const Table& t) {
  std::vector<cplx> v;
  v.reserve(t.rows.size());
  for (const auto& r : t.rows) v.emplace_back(r[r.size() - 2], r[r.size() - 1]);
  return v;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadParams("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string field_csv(const ContinuousField& f) {
  const auto& w = f.window();
  const std::size_t n = w.points_per_axis();
  std::string out = w.dim() == 1 ? "coord,re,im\n" : "coord,coord2,re,im\n";
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const cplx v = f.values()[i];
    if (w.dim() == 1) {
      out += num(w.node(i));
    } else {
      out += num(w.node(i / n)) + ',' + num(w.node(i % n));
    }
    out += ',' + num(v.real()) + ',' + num(v.imag()) + '\n';
  }
  return out;
}

std::string field_csv(const DiscreteField& u) {
  std::string out = u.dim() == 1 ? "coord,re,im\n" : "coord,coord2,re,im\n";
  const auto ext = u.extent();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx v = u.values()[i];
    if (u.dim() == 1) {
      out += num(u.node(i));
    } else {
      const double x1 = u.h() * static_cast<double>(u.first()[0] + static_cast<long>(i / ext[1]));
      const double x2 = u.h() * static_cast<double>(u.first()[1] + static_cast<long>(i % ext[1]));
      out += num(x1) + ',' + num(x2);
    }
    out += ',' + num(v.real()) + ',' + num(v.imag()) + '\n';
  }
  return out;
}

ContinuousField parse_continuous_field(std::string_view csv) {
  const Table t = parse_table(csv);
  const std::size_t nf = fast_count(t);
  const auto xs = axis(t, 0, nf);
  const auto [dx, n] = spacing(xs);
  const double L = -xs.front();
  if (std::abs(L - 0.5 * dx * static_cast<double>(n)) > 1e-9 * std::max(1.0, L)) {
    throw BadParams("continuous field nodes must be -L + j dx, j = 0..N-1, with N dx = 2L");
  }
  if (t.coords == 2) {
    if (nf != n) throw BadParams("2-D continuous fields need the same number of nodes per axis");
    const auto ys = axis(t, 1, nf);
    if (std::abs(ys.front() - xs.front()) > 1e-9 * std::max(1.0, L)) throw BadParams("2-D window axes differ");
  }
  return ContinuousField(SpatialWindow(t.coords, L, n), values_of(t));
}

DiscreteField parse_discrete_field(std::string_view csv) {
  const Table t = parse_table(csv);
  const std::size_t nf = fast_count(t);
  const auto xs = axis(t, 0, nf);
  const auto [h, n] = spacing(xs);
  const long first = std::lround(xs.front() / h);
  if (std::abs(xs.front() - h * static_cast<double>(first)) > 1e-9 * std::max(1.0, std::abs(xs.front()))) {
    throw BadParams("discrete field coordinates must be integer multiples of the spacing");
  }
  if (t.coords == 1) return DiscreteField(h, first, values_of(t));
  const auto ys = axis(t, 1, nf);
  const auto [h2, m] = spacing(ys);
  if (std::abs(h2 - h) > 1e-9 * h) throw BadParams("2-D discrete field needs equal spacing per axis");
  const long first2 = std::lround(ys.front() / h);
  return DiscreteField(h, {first, first2}, {n, m}, values_of(t));
}

}  // namespace phasefold
