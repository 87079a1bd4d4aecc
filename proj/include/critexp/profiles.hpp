#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "critexp/quadrature.hpp"
#include "critexp/weight.hpp"

namespace critexp {

/// Exponent threshold above which e^x is treated as overflow.
inline constexpr double kOverflowExponent = 700.0;

/// Coordinate in which a profile is linear between consecutive nodes.
///
/// Stated on the radial variable r in (0, 1]: `power(p)` is linear in r^p and
/// `logarithmic` is linear in -2 ln r. Through the Moser substitution
/// r = e^{-t/2} these become linear in e^{-pt/2} and linear in t. The two
/// changes of variable used throughout the library map each chart to another
/// chart of the same family, so transformed profiles represent exactly the
/// transformed function instead of a re-interpolation of it.
class Chart {
 public:
  enum class Kind { power, logarithmic };

  static Chart power(double exponent);
  static Chart logarithmic() { return Chart(Kind::logarithmic, 0.0); }

  Kind kind() const { return kind_; }
  bool is_power() const { return kind_ == Kind::power; }
  /// Only meaningful for power charts.
  double exponent() const { return exponent_; }

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  Chart(Kind k, double p) : kind_(k), exponent_(p) {}
  Kind kind_;
  double exponent_;
};

/// A radial function u(|x|) on the disk of radius R = grid.back().
///
/// Nodes r_0 = 0 < r_1 < ... < r_m; between nodes u is linear in the chart
/// coordinate (linear in r by default). For r >= R the last value is returned.
class RadialProfile {
 public:
  RadialProfile(std::vector<double> grid, std::vector<double> values,
                Chart chart = Chart::power(1.0));

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  const Chart& chart() const { return chart_; }
  std::size_t size() const { return grid_.size(); }
  double radius() const { return grid_.back(); }

  double operator()(double r) const;
  /// Value at r restricted to segment [r_i, r_{i+1}].
  double segment_value(std::size_t i, double r) const;

  bool vanishes_at_boundary() const { return values_.back() == 0.0; }
  bool is_nonnegative() const;
  bool is_nonincreasing() const;
  bool is_zero() const;

  RadialProfile scaled(double factor) const;
  /// r -> u(r / lambda): same values on the grid multiplied by lambda.
  RadialProfile dilated(double lambda) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  Chart chart_;
};

/// A function w(t) on the half-line in Moser coordinates.
///
/// Nodes t_0 = 0 < ... < t_k = T with w(0) = 0. With the default
/// (logarithmic) chart w is piecewise linear in t and equals tail_value for
/// t >= T. With a power chart the segment beyond T runs linearly in e^{-pt/2}
/// from w(T) to tail_value = w(+infinity).
class HalfLineProfile {
 public:
  HalfLineProfile(std::vector<double> grid, std::vector<double> values, double tail_value,
                  Chart chart = Chart::logarithmic());
  /// Constant tail extension w(t) = w(T).
  HalfLineProfile(std::vector<double> grid, std::vector<double> values);

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double tail_value() const { return tail_; }
  const Chart& chart() const { return chart_; }
  std::size_t size() const { return grid_.size(); }
  double horizon() const { return grid_.back(); }

  double operator()(double t) const;
  double segment_value(std::size_t i, double t) const;
  /// Value on the tail segment t >= T.
  double tail_segment_value(double t) const;

  bool is_zero() const;
  HalfLineProfile scaled(double factor) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  double tail_;
  Chart chart_;
};

struct FunctionalReport {
  double dirichlet = 0.0;
  double exp_integral = 0.0;
  WeightExponent alpha;
  double gamma = 4.0 * std::numbers::pi;
};

/// Squared Dirichlet norm 2 pi \int |u'|^2 r dr, exact for the chart.
double dirichlet_norm_radial(const RadialProfile& u);
/// 2 pi \int_rho^R |u'|^2 r dr.
double dirichlet_energy_outside(const RadialProfile& u, double rho);

/// \int_0^infinity |w'|^2 dt, exact for the chart (tail included).
double dirichlet_norm_halfline(const HalfLineProfile& w);
/// \int_0^{t_cut} |w'|^2 dt.
double dirichlet_energy_before(const HalfLineProfile& w, double t_cut);

/// 2 pi \int_0^R phi(u(r)) r^{alpha+1} dr.
double radial_integral(const RadialProfile& u, const WeightExponent& w,
                       const ScalarFunction& phi, const QuadratureSpec& q);

/// \int_B (e^{gamma u^2} - 1)|x|^alpha dx for radial u; +infinity when
/// gamma u^2 exceeds kOverflowExponent at some node.
double weighted_exp_functional(const RadialProfile& u, const WeightExponent& w, double gamma,
                               const QuadratureSpec& q = {});

/// \int_0^infinity (e^{c w^2} - 1) e^{-t} dt with c = gamma_factor * epsilon.
/// Evaluated without forming the leading 1, so small profiles keep full
/// relative precision. +infinity when c w^2 - t exceeds kOverflowExponent.
double halfline_excess(const HalfLineProfile& w, const WeightExponent& wt,
                       const QuadratureSpec& q = {}, double gamma_factor = 1.0);

/// \int_0^infinity e^{c w^2 - t} dt = 1 + halfline_excess.
double halfline_functional(const HalfLineProfile& w, const WeightExponent& wt,
                           const QuadratureSpec& q = {}, double gamma_factor = 1.0);

FunctionalReport evaluate(const RadialProfile& u, const WeightExponent& w, double gamma,
                          const QuadratureSpec& q = {});

/// Default half-line horizon for exponent factor c = (gamma/4pi) epsilon:
/// ln(1e12)/(1-c) so that e^{(c-1)T} < 1e-12, capped at 50 (and 50 for c >= 1).
double default_horizon(double exponent_factor);

}  // namespace critexp
