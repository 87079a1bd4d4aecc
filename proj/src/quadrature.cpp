#include "critexp/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cfloat>
#include <queue>
#include <string>

#include "critexp/error.hpp"

namespace critexp {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a, b, value, err;
  int depth;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel make_panel(const ScalarFunction& f, double a, double b, int depth) {
  double err = 0.0;
  double l1 = 0.0;
  const double est = Kronrod::integrate(f, a, b, 0, 0.0, &err, &l1);
  // With max_depth = 0 Boost reports |K - G| on the reference interval
  // [-1, 1] without the (b - a)/2 Jacobian (L1 does carry it).
  err *= 0.5 * (b - a);
  // Below round-off the estimate cannot improve; treat the panel as exact.
  if (err <= 64.0 * DBL_EPSILON * l1) err = 0.0;
  return {a, b, est, err, depth};
}

// Global adaptive scheme: always bisect the panel with the largest error
// estimate, until the summed estimate meets the tolerance or the panel
// budget or depth limit is reached.
double adaptive(const ScalarFunction& f, double a, double b, const QuadratureSpec& q) {
  constexpr std::size_t kMaxPanels = 4096;
  std::priority_queue<Panel> heap;
  heap.push(make_panel(f, a, b, 0));
  double total_err = heap.top().err;
  std::vector<Panel> done;
  while (!heap.empty() && total_err > q.abs_tol && heap.size() + done.size() < kMaxPanels) {
    const Panel p = heap.top();
    heap.pop();
    if (p.depth >= q.max_refinement || p.err == 0.0) {
      done.push_back(p);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      done.push_back(p);
      continue;
    }
    const Panel l = make_panel(f, p.a, mid, p.depth + 1);
    const Panel r = make_panel(f, mid, p.b, p.depth + 1);
    total_err += l.err + r.err - p.err;
    heap.push(l);
    heap.push(r);
  }
  double acc = 0.0;
  for (const auto& p : done) acc += p.value;
  for (; !heap.empty(); heap.pop()) acc += heap.top().value;
  return acc;
}

double simpson(const ScalarFunction& f, double a, double b, const QuadratureSpec& q) {
  long panels = 2;
  auto rule = [&](long n) {
    const double h = (b - a) / static_cast<double>(n);
    double acc = f(a) + f(b);
    for (long i = 1; i < n; ++i) {
      acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    }
    return acc * h / 3.0;
  };
  double prev = rule(panels);
  for (int level = 0; level < q.max_refinement && panels < (1L << 24); ++level) {
    panels *= 2;
    const double cur = rule(panels);
    if (std::abs(cur - prev) <= 15.0 * q.abs_tol) {
      return cur + (cur - prev) / 15.0;
    }
    prev = cur;
  }
  return prev;
}

template <int N>
UnitRule make_rule() {
  using Gauss = boost::math::quadrature::gauss<double, N>;
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  UnitRule r;
  // Boost stores the non-negative half of the symmetric rule.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.5);
      r.weights.push_back(0.5 * w[i]);
      continue;
    }
    r.nodes.push_back(0.5 * (1.0 - x[i]));
    r.weights.push_back(0.5 * w[i]);
    r.nodes.push_back(0.5 * (1.0 + x[i]));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) {
    throw PreconditionError("quadrature abs_tol must be > 0");
  }
  if (max_refinement < 0) {
    throw PreconditionError("quadrature max_refinement must be >= 0");
  }
}

std::string_view to_string(QuadratureMethod m) {
  return m == QuadratureMethod::adaptive ? "adaptive" : "composite-simpson";
}

QuadratureMethod quadrature_method_from_string(std::string_view s) {
  if (s == "adaptive") return QuadratureMethod::adaptive;
  if (s == "composite-simpson") return QuadratureMethod::composite_simpson;
  throw PreconditionError("unknown quadrature method '" + std::string(s) + "'");
}

double integrate(const ScalarFunction& f, double a, double b, const QuadratureSpec& q) {
  q.validate();
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, q);
  if (q.method == QuadratureMethod::composite_simpson) {
    return simpson(f, a, b, q);
  }
  return adaptive(f, a, b, q);
}

const UnitRule& gauss_legendre_unit(int n) {
  static const UnitRule r4 = make_rule<4>();
  static const UnitRule r8 = make_rule<8>();
  static const UnitRule r16 = make_rule<16>();
  switch (n) {
    case 4: return r4;
    case 8: return r8;
    case 16: return r16;
    default: throw PreconditionError("Gauss-Legendre order must be 4, 8 or 16");
  }
}

}  // namespace critexp
