#include "critexp/bounds.hpp"

#include <cmath>
#include <future>
#include <numbers>

#include "critexp/candidates.hpp"

namespace critexp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double rel_gap(double lhs, double rhs) {
  const double scale = std::abs(lhs);
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}
}  // namespace

double concentration_upper_bound(const WeightExponent& w) {
  return 2.0 * kPi * kE / (w.alpha() + 2.0);
}

double candidate_margin(const WeightExponent& w, const QuadratureSpec& q) {
  return candidate_value(w, q).value - (kE + 1.0);
}

RadialIdentityReport radial_identity_check(const WeightExponent& w, const OptimizerConfig& cfg,
                                           const QuadratureSpec& q, double gamma) {
  cfg.validate();
  const double eps = w.epsilon();
  const WeightExponent flat(0.0);
  const double g0 = gamma * eps;

  auto left = std::async(std::launch::async, [&] { return maximize_radial(w, gamma, cfg, q); });
  OptimizerResult right = maximize_radial(flat, g0, cfg, q);
  OptimizerResult lhs = left.get();

  RadialIdentityReport r;
  r.alpha = w;
  r.gamma = gamma;
  r.lhs = lhs.value;
  r.rhs = right.value;
  r.rel_gap = rel_gap(lhs.value, eps * right.value);
  r.lhs_disk = weighted_exp_functional(pull_back(lhs.profile, w), w, gamma, q);
  r.rhs_disk = weighted_exp_functional(pull_back(right.profile, flat), flat, g0, q);
  r.rel_gap_disk = rel_gap(r.lhs_disk, eps * r.rhs_disk);
  r.lhs_converged = lhs.converged;
  r.rhs_converged = right.converged;
  r.left = std::move(lhs);
  r.right = std::move(right);
  return r;
}

AlphaStarReport alpha_star_estimate(double tol, const QuadratureSpec& q, double cap,
                                    int max_iters) {
  if (!(tol > 0.0)) throw PreconditionError("threshold tolerance must be > 0");
  if (!(cap > 0.0)) throw PreconditionError("bracket cap must be > 0");
  auto margin = [&](double a) { return candidate_margin(WeightExponent(a), q); };

  AlphaStarReport r;
  r.tol = tol;
  r.bracket_cap = cap;
  r.margin_at_zero = margin(0.0);
  if (!(r.margin_at_zero > 0.0)) {
    throw PreconditionError("candidate margin is not positive at alpha = 0");
  }
  // Geometric scan for the first sign change.
  double lo = 0.0;
  double hi = -1.0;
  for (double a = 1e-6; a < cap; a *= 2.0) {
    if (!(margin(a) > 0.0)) {
      hi = a;
      break;
    }
    lo = a;
  }
  if (hi < 0.0) {
    if (margin(cap) > 0.0) {
      r.positive_on_bracket = true;
      r.alpha_star = r.lower = r.upper = cap;
      return r;
    }
    hi = cap;
  }
  int it = 0;
  while (hi - lo > tol && it < max_iters) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
    ++it;
  }
  r.lower = lo;
  r.upper = hi;
  r.alpha_star = lo;
  r.iterations = it;
  return r;
}

ExponentConvexityReport exponent_convexity_check(const RadialProfile& u, const WeightExponent& w,
                                             const QuadratureSpec& q) {
  if (!(w.alpha() > 0.0)) throw PreconditionError("exponent_convexity_check requires alpha > 0");
  ExponentConvexityReport r;
  if (u.is_zero()) {
    r.degenerate = true;
    return r;
  }
  const double eps = w.epsilon();
  const RadialProfile v = ssw_transform(u, w);
  const WeightExponent flat(0.0);
  r.lhs = weighted_exp_functional(v, flat, 4.0 * kPi, q);
  r.rhs = weighted_exp_functional(u, w, 4.0 * kPi, q) / (eps * eps);
  r.margin = r.lhs - r.rhs;

  const double k = 4.0 * kPi * eps;
  r.derivative =
      radial_integral(v, flat, [k](double x) { return k * x * x * std::exp(k * x * x); }, q) / eps;
  r.derivative_bound = weighted_exp_functional(v, flat, k, q) / eps;
  r.holds = r.margin > 0.0 && r.derivative > r.derivative_bound;
  return r;
}

}  // namespace critexp
