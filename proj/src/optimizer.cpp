#include "critexp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "critexp/candidates.hpp"
#include "critexp/transforms.hpp"

namespace critexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-16;
constexpr double kMaxStep = 1e6;

// Solve K d = g for the stiffness matrix of E(w) = sum (w_{i+1}-w_i)^2/h_i
// restricted to the free nodes 1..n-1 (w_0 = 0, natural condition at T).
std::vector<double> solve_stiffness(std::span<const double> t, std::span<const double> g) {
  const std::size_t n = t.size();
  const std::size_t m = n - 1;
  std::vector<double> diag(m), off(m, 0.0), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double left = 1.0 / (t[i] - t[i - 1]);
    const double right = i + 1 < n ? 1.0 / (t[i + 1] - t[i]) : 0.0;
    diag[k] = left + right;
    off[k] = -right;  // coupling between k and k+1
    rhs[k] = g[i];
  }
  // Thomas algorithm.
  for (std::size_t k = 1; k < m; ++k) {
    const double f = off[k - 1] / diag[k - 1];
    diag[k] -= f * off[k - 1];
    rhs[k] -= f * rhs[k - 1];
  }
  std::vector<double> d(n, 0.0);
  d[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    d[k + 1] = (rhs[k] - off[k] * d[k + 2]) / diag[k];
  }
  return d;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

HalfLineProfile initial_profile(const OptimizerConfig& cfg) {
  switch (cfg.init) {
    case InitKind::candidate: return carleson_chang_candidate();
    case InitKind::moser: return concentrating_sequence(cfg.moser_n);
    case InitKind::custom: break;
  }
  return *cfg.custom_init;
}

double theta_integral(double center, double s, double alpha) {
  if (alpha == 0.0) return 2.0 * kPi;
  if (center == 0.0) return 2.0 * kPi * std::pow(s, alpha);
  // Periodic trapezoid rule; the integrand is analytic in theta because the
  // circle stays away from the origin, so convergence is geometric.
  constexpr int kAngles = 256;
  double acc = 0.0;
  for (int j = 0; j < kAngles; ++j) {
    const double th = 2.0 * kPi * j / kAngles;
    const double x = center + s * std::cos(th);
    const double y = s * std::sin(th);
    acc += std::pow(x * x + y * y, 0.5 * alpha);
  }
  return acc * 2.0 * kPi / kAngles;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (grid_nodes < 16) throw PreconditionError("optimizer grid needs at least 16 nodes");
  if (t_max && !(*t_max > 0.0 && std::isfinite(*t_max))) {
    throw PreconditionError("optimizer horizon must be positive and finite");
  }
  if (!(step_init > 0.0)) throw PreconditionError("initial step must be > 0");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw PreconditionError("backtracking factor must lie in (0, 1)");
  }
  if (!(value_tol > 0.0)) throw PreconditionError("value tolerance must be > 0");
  if (max_iters < 1) throw PreconditionError("max_iters must be >= 1");
  if (init == InitKind::moser && moser_n < 1) throw PreconditionError("moser init needs n >= 1");
  if (init == InitKind::custom && !custom_init) {
    throw PreconditionError("custom init requested without a profile");
  }
  if (!(concentration_rho > 0.0 && concentration_rho < 1.0)) {
    throw PreconditionError("concentration rho must lie in (0, 1)");
  }
}

HalfLineObjective::HalfLineObjective(std::vector<double> grid, double exponent_factor)
    : grid_(std::move(grid)), c_(exponent_factor) {
  if (grid_.size() < 2 || grid_.front() != 0.0) {
    throw PreconditionError("objective grid must start at 0 with at least two nodes");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) throw PreconditionError("objective grid must increase");
  }
  if (!(c_ > 0.0)) throw PreconditionError("exponent factor must be > 0");
}

double HalfLineObjective::value(std::span<const double> w) const {
  const UnitRule& gl = gauss_legendre_unit(8);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double h = grid_[i + 1] - grid_[i];
    double seg = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double s = gl.nodes[k];
      const double wv = w[i] + s * (w[i + 1] - w[i]);
      seg += gl.weights[k] * std::expm1(c_ * wv * wv) * std::exp(-(grid_[i] + s * h));
    }
    acc += h * seg;
  }
  const double wt = w.back();
  return acc + std::expm1(c_ * wt * wt) * std::exp(-grid_.back());
}

std::vector<double> HalfLineObjective::gradient(std::span<const double> w) const {
  const UnitRule& gl = gauss_legendre_unit(8);
  std::vector<double> g(grid_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double h = grid_[i + 1] - grid_[i];
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double s = gl.nodes[k];
      const double wv = w[i] + s * (w[i + 1] - w[i]);
      const double d = h * gl.weights[k] * 2.0 * c_ * wv *
                       std::exp(c_ * wv * wv - (grid_[i] + s * h));
      g[i] += (1.0 - s) * d;
      g[i + 1] += s * d;
    }
  }
  const double wt = w.back();
  g.back() += 2.0 * c_ * wt * std::exp(c_ * wt * wt - grid_.back());
  g[0] = 0.0;
  return g;
}

double HalfLineObjective::dirichlet(std::span<const double> w) const {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double d = w[i + 1] - w[i];
    e += d * d / (grid_[i + 1] - grid_[i]);
  }
  return e;
}

OptimizerResult maximize_radial(const WeightExponent& wt, double gamma, const OptimizerConfig& cfg,
                                const QuadratureSpec& q) {
  cfg.validate();
  q.validate();
  if (!(gamma > 0.0) || gamma > 4.0 * kPi) {
    throw PreconditionError("optimizer requires 0 < gamma <= 4 pi");
  }
  const double gamma_factor = gamma / (4.0 * kPi);
  const double c = gamma_factor * wt.epsilon();
  const double horizon = cfg.t_max.value_or(default_horizon(c));
  const int n = cfg.grid_nodes;

  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = horizon * i / (n - 1);
  t.back() = horizon;
  HalfLineObjective obj(t, c);

  const HalfLineProfile init = initial_profile(cfg);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = init(t[i]);
  w[0] = 0.0;
  auto normalize = [&](std::vector<double>& v) {
    const double e = obj.dirichlet(v);
    if (!(e > 0.0)) return false;
    const double s = 1.0 / std::sqrt(e);
    for (double& x : v) x *= s;
    return true;
  };
  if (!normalize(w)) throw PreconditionError("initial profile has zero Dirichlet energy");

  OptimizerResult res;
  double f = obj.value(w);
  res.initial_value = kPi * wt.epsilon() * f;
  double step = cfg.step_init;
  std::vector<double> trial(n);
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const std::vector<double> g = obj.gradient(w);
    std::vector<double> d = solve_stiffness(t, g);
    const double radial = dot(w, g);  // <w, d>_K with |w|_K = 1
    for (int i = 0; i < n; ++i) d[i] -= radial * w[i];
    const double slope = dot(g, d);
    if (slope <= cfg.value_tol * std::max(f, 1.0)) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    double s = std::min(step, kMaxStep);
    while (s >= kMinStep) {
      for (int i = 0; i < n; ++i) trial[i] = w[i] + s * d[i];
      if (normalize(trial)) {
        const double ft = obj.value(trial);
        if (std::isfinite(ft) && ft >= f + kArmijo * s * slope) {
          w.swap(trial);
          f = ft;
          accepted = true;
          break;
        }
      }
      s *= cfg.backtrack_factor;
    }
    if (!accepted) break;  // backtracking exhausted
    res.trace.push_back(kPi * wt.epsilon() * f);
    step = 2.0 * s;
  }

  const double tail = w.back();
  res.profile = HalfLineProfile(t, w, tail);
  res.iterations = it;
  res.excess = halfline_excess(res.profile, wt, q, gamma_factor);
  res.value = kPi * wt.epsilon() * res.excess;
  res.concentration = concentration_metric(pull_back(res.profile, wt), cfg.concentration_rho);
  res.t_max = horizon;
  res.grid_nodes = n;
  res.alpha = wt;
  res.gamma = gamma;
  return res;
}

double concentration_metric(const RadialProfile& u, double rho) {
  if (!(rho > 0.0 && rho < u.radius())) {
    throw PreconditionError("concentration rho must lie in (0, R)");
  }
  const double total = dirichlet_norm_radial(u);
  if (!(total > 0.0)) throw PreconditionError("concentration of a constant profile is undefined");
  return dirichlet_energy_outside(u, rho) / total;
}

ProbeReport concentration_values(const WeightExponent& wt, double gamma,
                                 std::span<const int> n_list, const ConcentrationSite& site,
                                 const QuadratureSpec& q) {
  q.validate();
  if (!(gamma > 0.0)) throw PreconditionError("gamma must be > 0");
  if (!(site.center >= 0.0 && site.radius > 0.0 && site.center + site.radius <= 1.0)) {
    throw PreconditionError("concentration disk must lie inside the unit disk");
  }
  if (site.center > 0.0 && site.center <= site.radius) {
    throw PreconditionError("off-centre concentration disk must not contain the origin");
  }
  const double c = gamma / (4.0 * kPi);
  const double al = wt.alpha();
  const double half_d2 = 0.5 * site.radius * site.radius;
  auto theta = [&](double t) {
    return theta_integral(site.center, site.radius * std::exp(-0.5 * t), al);
  };

  ProbeReport rep;
  rep.gamma = gamma;
  rep.alpha = wt;
  rep.site = site;
  for (int n : n_list) {
    if (n < 1) throw PreconditionError("sequence index must be >= 1");
    const double nn = n;
    rep.n.push_back(n);
    if ((c - 1.0) * nn > kOverflowExponent) {
      rep.values.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    // u_n = t/sqrt(n) in Moser time on [0, n]; area element (delta^2/2) e^{-t} dt.
    auto body = [&](double t) {
      const double w = t / std::sqrt(nn);
      return half_d2 * std::expm1(c * w * w) * std::exp(-t) * theta(t);
    };
    const double head = integrate(body, 0.0, nn, q);
    // Plateau w = sqrt(n) for t > n, written relative to t = n to keep the
    // exponentials in range.
    auto rest = [&](double tau) { return std::exp(-tau) * theta(nn + tau); };
    const double tail_int = integrate(rest, 0.0, 60.0, q);
    const double tail = half_d2 * std::exp((c - 1.0) * nn) * -std::expm1(-c * nn) * tail_int;
    rep.values.push_back(head + tail);
  }
  return rep;
}

ProbeReport supercritical_probe(const WeightExponent& wt, double gamma, std::span<const int> n_list,
                                const ConcentrationSite& site, const QuadratureSpec& q) {
  if (!(gamma > 4.0 * kPi)) throw PreconditionError("supercritical probe requires gamma > 4 pi");
  return concentration_values(wt, gamma, n_list, site, q);
}

}  // namespace critexp
