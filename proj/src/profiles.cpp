#include "critexp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace critexp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(std::span<const double> grid, std::span<const double> values, const char* what) {
  if (grid.size() < 2) {
    throw InvalidProfile(std::string(what) + ": at least two nodes are required");
  }
  if (grid.size() != values.size()) {
    throw InvalidProfile(std::string(what) + ": grid and values differ in length");
  }
  if (grid.front() != 0.0) {
    throw InvalidProfile(std::string(what) + ": first grid point must be 0");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(values[i])) {
      throw InvalidProfile(std::string(what) + ": non-finite node");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidProfile(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

std::size_t locate(std::span<const double> grid, double x) {
  // Segment index i with grid[i] <= x < grid[i+1], clamped to [0, m-2].
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  auto i = static_cast<std::size_t>(std::distance(grid.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, grid.size() - 2);
}

// (s_a + s_b)/(s_b - s_a) for s = r^p, 0 < r_a < r_b.
double power_ratio(double p, double ra, double rb) {
  const double x = p * std::log(rb / ra);
  const double em1 = std::expm1(x);
  return (2.0 + em1) / em1;
}

double radial_segment_energy(const Chart& c, double ra, double rb, double ua, double ub) {
  const double du = ub - ua;
  if (du == 0.0) return 0.0;
  if (c.is_power()) {
    const double p = c.exponent();
    const double ratio = ra == 0.0 ? 1.0 : power_ratio(p, ra, rb);
    return kPi * p * du * du * ratio;
  }
  // Linear in s = -2 ln r: 2 pi * 2 du^2/|ds|.
  return 4.0 * kPi * du * du / (2.0 * std::log(rb / ra));
}

double halfline_segment_energy(const Chart& c, double ta, double tb, double wa, double wb) {
  const double dw = wb - wa;
  if (dw == 0.0) return 0.0;
  if (!c.is_power()) return dw * dw / (tb - ta);
  const double p = c.exponent();
  const double em1 = std::expm1(-0.5 * p * (tb - ta));
  return dw * dw * p * (2.0 + em1) / (-4.0 * em1);
}

// e^{-t} (e^{c w^2} - 1) without overflow in the intermediate product.
double excess_integrand(double c, double w, double t) {
  const double x = c * w * w;
  if (x < 1.0) return std::expm1(x) * std::exp(-t);
  return std::exp(x - t) - std::exp(-t);
}

}  // namespace

Chart Chart::power(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw PreconditionError("chart exponent must be finite and > 0");
  }
  return Chart(Kind::power, exponent);
}

// ---------------------------------------------------------------------------
// RadialProfile

RadialProfile::RadialProfile(std::vector<double> grid, std::vector<double> values, Chart chart)
    : grid_(std::move(grid)), values_(std::move(values)), chart_(chart) {
  check_grid(grid_, values_, "radial profile");
  if (!chart_.is_power() && values_[0] != values_[1]) {
    throw InvalidProfile("radial profile: a logarithmic chart needs a flat first segment");
  }
}

double RadialProfile::segment_value(std::size_t i, double r) const {
  const double ra = grid_[i];
  const double rb = grid_[i + 1];
  const double ua = values_[i];
  const double ub = values_[i + 1];
  if (ua == ub) return ua;
  double lambda = 0.0;
  if (chart_.is_power()) {
    const double p = chart_.exponent();
    if (ra == 0.0) {
      lambda = p == 1.0 ? r / rb : std::pow(r / rb, p);
    } else if (p == 1.0) {
      lambda = (r - ra) / (rb - ra);
    } else {
      lambda = std::expm1(p * std::log(r / ra)) / std::expm1(p * std::log(rb / ra));
    }
  } else {
    lambda = std::log(r / ra) / std::log(rb / ra);
  }
  return ua + lambda * (ub - ua);
}

double RadialProfile::operator()(double r) const {
  if (r <= 0.0) return values_.front();
  if (r >= grid_.back()) return values_.back();
  return segment_value(locate(grid_, r), r);
}

bool RadialProfile::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

bool RadialProfile::is_nonincreasing() const {
  return std::is_sorted(values_.rbegin(), values_.rend());
}

bool RadialProfile::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

RadialProfile RadialProfile::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return RadialProfile(grid_, std::move(v), chart_);
}

RadialProfile RadialProfile::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw PreconditionError("dilation factor must be > 0");
  std::vector<double> g(grid_);
  for (double& x : g) x *= lambda;
  return RadialProfile(std::move(g), values_, chart_);
}

// ---------------------------------------------------------------------------
// HalfLineProfile

HalfLineProfile::HalfLineProfile(std::vector<double> grid, std::vector<double> values,
                                 double tail_value, Chart chart)
    : grid_(std::move(grid)), values_(std::move(values)), tail_(tail_value), chart_(chart) {
  check_grid(grid_, values_, "half-line profile");
  if (values_.front() != 0.0) {
    throw InvalidProfile("half-line profile: w(0) must be 0");
  }
  if (!std::isfinite(tail_)) {
    throw InvalidProfile("half-line profile: tail value must be finite");
  }
  if (!chart_.is_power()) {
    const double last = values_.back();
    if (std::abs(tail_ - last) > 1e-12 * std::max(1.0, std::abs(last))) {
      throw InvalidProfile("half-line profile: constant tail must continue w(T)");
    }
    tail_ = last;
  }
}

HalfLineProfile::HalfLineProfile(std::vector<double> grid, std::vector<double> values)
    : HalfLineProfile(grid, values, values.empty() ? 0.0 : values.back()) {}

double HalfLineProfile::segment_value(std::size_t i, double t) const {
  const double ta = grid_[i];
  const double tb = grid_[i + 1];
  const double wa = values_[i];
  const double wb = values_[i + 1];
  if (wa == wb) return wa;
  double lambda = 0.0;
  if (chart_.is_power()) {
    const double h = -0.5 * chart_.exponent();
    lambda = std::expm1(h * (t - ta)) / std::expm1(h * (tb - ta));
  } else {
    lambda = (t - ta) / (tb - ta);
  }
  return wa + lambda * (wb - wa);
}

double HalfLineProfile::tail_segment_value(double t) const {
  const double wt = values_.back();
  if (!chart_.is_power() || tail_ == wt) return tail_;
  // Linear in s = e^{-pt/2} between (s_T, w_T) and (0, tail).
  const double frac = std::exp(-0.5 * chart_.exponent() * (t - horizon()));
  return tail_ + frac * (wt - tail_);
}

double HalfLineProfile::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= horizon()) return tail_segment_value(t);
  return segment_value(locate(grid_, t), t);
}

bool HalfLineProfile::is_zero() const {
  return tail_ == 0.0 &&
         std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

HalfLineProfile HalfLineProfile::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return HalfLineProfile(grid_, std::move(v), tail_ * factor, chart_);
}

// ---------------------------------------------------------------------------
// Dirichlet energies

double dirichlet_norm_radial(const RadialProfile& u) {
  return dirichlet_energy_outside(u, 0.0);
}

double dirichlet_energy_outside(const RadialProfile& u, double rho) {
  const auto g = u.grid();
  const auto v = u.values();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (g[i + 1] <= rho) continue;
    if (g[i] >= rho) {
      acc += radial_segment_energy(u.chart(), g[i], g[i + 1], v[i], v[i + 1]);
    } else {
      acc += radial_segment_energy(u.chart(), rho, g[i + 1], u.segment_value(i, rho), v[i + 1]);
    }
  }
  return acc;
}

double dirichlet_norm_halfline(const HalfLineProfile& w) {
  return dirichlet_energy_before(w, std::numeric_limits<double>::infinity());
}

double dirichlet_energy_before(const HalfLineProfile& w, double t_cut) {
  const auto g = w.grid();
  const auto v = w.values();
  const Chart& c = w.chart();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size() && g[i] < t_cut; ++i) {
    if (g[i + 1] <= t_cut) {
      acc += halfline_segment_energy(c, g[i], g[i + 1], v[i], v[i + 1]);
    } else {
      acc += halfline_segment_energy(c, g[i], t_cut, v[i], w.segment_value(i, t_cut));
    }
  }
  if (c.is_power() && t_cut > w.horizon()) {
    const double p = c.exponent();
    const double dw = w.tail_value() - v.back();
    const double full = dw * dw * p / 4.0;
    if (std::isinf(t_cut)) {
      acc += full;
    } else {
      // Energy of the tail segment up to t_cut scales with 1 - s(t_cut)^2/s_T^2.
      acc += full * -std::expm1(-p * (t_cut - w.horizon()));
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Functionals

double radial_integral(const RadialProfile& u, const WeightExponent& w, const ScalarFunction& phi,
                       const QuadratureSpec& q) {
  q.validate();
  const auto g = u.grid();
  const double total = u.radius();
  const double a1 = w.alpha() + 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    QuadratureSpec local = q;
    local.abs_tol = q.abs_tol * (g[i + 1] - g[i]) / total / (2.0 * kPi);
    auto f = [&](double r) { return phi(u.segment_value(i, r)) * std::pow(r, a1); };
    acc += integrate(f, g[i], g[i + 1], local);
  }
  return 2.0 * kPi * acc;
}

double weighted_exp_functional(const RadialProfile& u, const WeightExponent& w, double gamma,
                               const QuadratureSpec& q) {
  if (!(gamma > 0.0)) throw PreconditionError("gamma must be > 0");
  double peak = 0.0;
  for (double v : u.values()) peak = std::max(peak, v * v);
  if (gamma * peak > kOverflowExponent) {
    return std::numeric_limits<double>::infinity();
  }
  return radial_integral(u, w, [gamma](double v) { return std::expm1(gamma * v * v); }, q);
}

double halfline_excess(const HalfLineProfile& w, const WeightExponent& wt, const QuadratureSpec& q,
                       double gamma_factor) {
  q.validate();
  if (!(gamma_factor > 0.0)) throw PreconditionError("gamma factor must be > 0");
  const double c = gamma_factor * wt.epsilon();
  const auto g = w.grid();
  const auto v = w.values();

  for (std::size_t i = 0; i < g.size(); ++i) {
    if (c * v[i] * v[i] - g[i] > kOverflowExponent) {
      return std::numeric_limits<double>::infinity();
    }
  }
  const double horizon = w.horizon();
  const double tail = w.tail_value();
  if (c * tail * tail - (w.chart().is_power() ? 0.0 : horizon) > kOverflowExponent) {
    return std::numeric_limits<double>::infinity();
  }

  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    QuadratureSpec local = q;
    local.abs_tol = 0.5 * q.abs_tol * (g[i + 1] - g[i]) / horizon;
    auto f = [&](double t) { return excess_integrand(c, w.segment_value(i, t), t); };
    acc += integrate(f, g[i], g[i + 1], local);
  }

  if (!w.chart().is_power() || tail == v.back()) {
    acc += std::expm1(c * tail * tail) * std::exp(-horizon);
  } else {
    // \int_T^inf (e^{cw^2}-1) e^{-t} dt = 2 \int_0^{rho_T} (e^{cw^2}-1) rho d rho, rho = e^{-t/2},
    // with w linear in rho^p from tail (rho = 0) to w(T) (rho = rho_T).
    const double rho_t = std::exp(-0.5 * horizon);
    const double p = w.chart().exponent();
    const double wt_end = v.back();
    auto f = [&](double rho) {
      const double lambda = std::pow(rho / rho_t, p);
      const double val = tail + lambda * (wt_end - tail);
      return 2.0 * std::expm1(c * val * val) * rho;
    };
    QuadratureSpec local = q;
    local.abs_tol = 0.5 * q.abs_tol;
    acc += integrate(f, 0.0, rho_t, local);
  }
  return acc;
}

double halfline_functional(const HalfLineProfile& w, const WeightExponent& wt,
                           const QuadratureSpec& q, double gamma_factor) {
  return 1.0 + halfline_excess(w, wt, q, gamma_factor);
}

FunctionalReport evaluate(const RadialProfile& u, const WeightExponent& w, double gamma,
                          const QuadratureSpec& q) {
  FunctionalReport r;
  r.dirichlet = dirichlet_norm_radial(u);
  r.exp_integral = weighted_exp_functional(u, w, gamma, q);
  r.alpha = w;
  r.gamma = gamma;
  return r;
}

double default_horizon(double exponent_factor) {
  constexpr double kCap = 50.0;
  if (exponent_factor >= 1.0) return kCap;
  return std::min(kCap, std::log(1e12) / (1.0 - exponent_factor));
}

}  // namespace critexp
