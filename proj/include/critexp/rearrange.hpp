#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "critexp/profiles.hpp"
#include "critexp/weight.hpp"

namespace critexp {

/// Nonnegative samples u(r_i, theta_j) on a polar grid of the unit disk.
///
/// radii: 0 = r_0 < ... < r_{nr-1} = 1; angles theta_j = 2 pi j / ntheta.
/// Values are stored row-major (one row per radius) and vanish on the
/// boundary ring r = 1.
class PolarSample {
 public:
  PolarSample(std::vector<double> radii, std::size_t n_angles, std::vector<double> values);

  /// Samples f(x, y) on a uniform radial grid; the boundary ring is set to 0.
  static PolarSample from_function(std::size_t n_radii, std::size_t n_angles,
                                   const std::function<double(double, double)>& f);
  /// Samples a radial profile on a uniform radial grid.
  static PolarSample from_radial(const RadialProfile& u, std::size_t n_radii,
                                 std::size_t n_angles);

  std::span<const double> radii() const { return radii_; }
  std::span<const double> values() const { return values_; }
  std::size_t n_radii() const { return radii_.size(); }
  std::size_t n_angles() const { return n_angles_; }
  double angle_step() const;
  double angle(std::size_t j) const { return angle_step() * static_cast<double>(j); }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_angles_ + j]; }
  double max_value() const;

 private:
  std::vector<double> radii_;
  std::size_t n_angles_;
  std::vector<double> values_;
};

struct RearrangeOptions {
  /// Sub-rays per angular cell; values on sub-rays interpolate linearly in theta.
  int angular_subdivision = 4;
  /// Target number of levels for the distribution function.
  std::size_t level_budget = 65536;
  /// Bounds on the number of sub-levels inserted between consecutive sample values.
  int max_level_subdivision = 16;
};

/// The function a PolarSample stands for: each angular cell is split into
/// sub-wedges of angle `ray_angle`, and on each sub-wedge u is the piecewise
/// linear radial profile along the sub-wedge's centre ray.
struct WedgeModel {
  std::vector<RadialProfile> rays;
  double ray_angle = 0.0;
};

WedgeModel wedge_model(const PolarSample& s, int angular_subdivision);

/// t -> mu({u > t}) tabulated on ascending levels.
///
/// mass[k] = mu({u > levels[k]}) (right-continuous value) and
/// mass_at_or_above[k] = mu({u >= levels[k]}) (left limit). The two differ
/// only on plateaus. measure is Lebesgue when alpha = 0.
class DistributionFunction {
 public:
  DistributionFunction(std::vector<double> levels, std::vector<double> mass,
                       std::vector<double> mass_at_or_above, WeightExponent measure,
                       double total_mass);

  std::span<const double> levels() const { return levels_; }
  std::span<const double> mass() const { return mass_; }
  std::span<const double> mass_at_or_above() const { return left_; }
  const WeightExponent& measure() const { return measure_; }
  bool is_lebesgue() const { return measure_.alpha() == 0.0; }
  double total_mass() const { return total_; }

  /// phi(t); linear between tabulated levels, right-continuous at plateaus.
  double operator()(double t) const;

 private:
  std::vector<double> levels_;
  std::vector<double> mass_;
  std::vector<double> left_;
  WeightExponent measure_;
  double total_;
};

DistributionFunction distribution_function(const PolarSample& s, const WeightExponent& w,
                                           const RearrangeOptions& opt = {});

/// u*(r) = inf{t : phi(t) <= pi r^2} on [0, sqrt(mu(B)/pi)].
RadialProfile invert_distribution(const DistributionFunction& phi);

/// Closed-form mu_alpha-rearrangement of a rearranged profile on [0, 1]:
/// r -> u(r^eps eps^{-eps/2}) on [0, sqrt(eps)].
RadialProfile mu_rearrange_radial(const RadialProfile& u, const WeightExponent& w);

/// Rearrangement of an arbitrary sample through its distribution function.
/// With alpha = 0 this is the Schwarz symmetrization.
RadialProfile mu_rearrange_general(const PolarSample& s, const WeightExponent& w,
                                   const RearrangeOptions& opt = {});

/// \int_B |grad u|^2 dx on the polar grid. Differences are centred on cell
/// edges: radial differences along each ray (one-sided out of r = 0) and
/// angular differences with the 1/r factor on each ring r_i > 0.
double polar_dirichlet_energy(const PolarSample& s);

struct PolyaSzegoReport {
  double dirichlet_original = 0.0;
  double dirichlet_rearranged = 0.0;
  double ratio = 0.0;
  double tolerance = 0.02;
  bool within_tolerance = false;
};

PolyaSzegoReport polya_szego_check(const PolarSample& s, const WeightExponent& w,
                                   const RearrangeOptions& opt = {}, double tolerance = 0.02);

}  // namespace critexp
