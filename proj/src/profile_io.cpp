#include "critexp/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "critexp/error.hpp"

namespace critexp {

namespace {

struct LineReader {
  std::istream& in;
  std::string source;
  int line_no = 0;

  // Next non-blank, non-comment line, trimmed.
  bool next(std::string& out) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto e = line.find_last_not_of(" \t\r");
      out = line.substr(b, e - b + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source + ":" + std::to_string(line_no) + ": " + what);
  }
};

double parse_double(const std::string& field, const LineReader& r) {
  const auto b = field.find_first_not_of(" \t");
  const auto e = field.find_last_not_of(" \t");
  if (b == std::string::npos) r.fail("empty field");
  double v = 0.0;
  const char* first = field.data() + b;
  const char* last = field.data() + e + 1;
  if (*first == '+') ++first;
  const auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) r.fail("not a number: '" + field.substr(b, e - b + 1) + "'");
  return v;
}

std::vector<double> parse_row(const std::string& line, const LineReader& r) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(parse_double(field, r));
  if (!line.empty() && line.back() == ',') r.fail("trailing comma");
  return out;
}

std::string strip_spaces(std::string s) {
  std::erase_if(s, [](char c) { return c == ' ' || c == '\t'; });
  return s;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path.string() + "'");
  return f;
}

}  // namespace

AnyProfile read_profile(std::istream& in, const std::string& source) {
  LineReader r{in, source};
  std::string line;
  if (!r.next(line)) r.fail("empty profile file");
  const std::string header = strip_spaces(line);
  const bool radial = header == "r,u";
  if (!radial && header != "t,w") r.fail("expected header 'r,u' or 't,w', got '" + line + "'");

  std::vector<double> x;
  std::vector<double> y;
  while (r.next(line)) {
    const auto row = parse_row(line, r);
    if (row.size() != 2) r.fail("expected two comma-separated values");
    if (!x.empty() && !(row[0] > x.back())) r.fail("first column must be strictly increasing");
    if (x.empty() && row[0] != 0.0) r.fail("first column must start at 0");
    x.push_back(row[0]);
    y.push_back(row[1]);
  }
  if (x.size() < 2) r.fail("profile needs at least two rows");
  if (radial) return RadialProfile(std::move(x), std::move(y));
  return HalfLineProfile(std::move(x), std::move(y));
}

AnyProfile load_profile(const std::filesystem::path& path) {
  auto f = open(path);
  return read_profile(f, path.string());
}

RadialProfile load_radial_profile(const std::filesystem::path& path) {
  auto p = load_profile(path);
  if (auto* u = std::get_if<RadialProfile>(&p)) return *u;
  throw ParseError(path.string() + ": expected a radial profile (header 'r,u')");
}

void write_profile(std::ostream& out, const RadialProfile& u) {
  out << "r,u\n" << std::setprecision(17);
  for (std::size_t i = 0; i < u.size(); ++i) out << u.grid()[i] << ',' << u.values()[i] << '\n';
}

void write_profile(std::ostream& out, const HalfLineProfile& w) {
  out << "t,w\n" << std::setprecision(17);
  for (std::size_t i = 0; i < w.size(); ++i) out << w.grid()[i] << ',' << w.values()[i] << '\n';
}

PolarSample read_polar_sample(std::istream& in, const std::string& source) {
  LineReader r{in, source};
  std::string line;
  if (!r.next(line)) r.fail("empty sample file");
  if (strip_spaces(line) == "nr,ntheta" && !r.next(line)) r.fail("missing dimensions");
  const auto dims = parse_row(line, r);
  if (dims.size() != 2) r.fail("expected 'nr,ntheta'");
  for (double d : dims) {
    if (!(d >= 2.0) || d != std::floor(d) || d > 1e6) r.fail("dimensions must be integers >= 2");
  }
  const auto nr = static_cast<std::size_t>(dims[0]);
  const auto nt = static_cast<std::size_t>(dims[1]);

  std::vector<double> values;
  values.reserve(nr * nt);
  std::size_t rows = 0;
  while (r.next(line)) {
    if (rows == nr) r.fail("more than nr rows");
    const auto row = parse_row(line, r);
    if (row.size() != nt) r.fail("expected " + std::to_string(nt) + " values in row");
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows != nr) r.fail("expected " + std::to_string(nr) + " rows, got " + std::to_string(rows));
  std::vector<double> radii(nr);
  for (std::size_t i = 0; i < nr; ++i) radii[i] = static_cast<double>(i) / static_cast<double>(nr - 1);
  radii.back() = 1.0;
  return PolarSample(std::move(radii), nt, std::move(values));
}

PolarSample load_polar_sample(const std::filesystem::path& path) {
  auto f = open(path);
  return read_polar_sample(f, path.string());
}

void write_polar_sample(std::ostream& out, const PolarSample& s) {
  out << s.n_radii() << ',' << s.n_angles() << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < s.n_radii(); ++i) {
    for (std::size_t j = 0; j < s.n_angles(); ++j) {
      if (j) out << ',';
      out << s(i, j);
    }
    out << '\n';
  }
}

}  // namespace critexp
