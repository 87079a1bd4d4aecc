#pragma once

#include <optional>
#include <span>
#include <vector>

#include "critexp/profiles.hpp"
#include "critexp/quadrature.hpp"
#include "critexp/weight.hpp"

namespace critexp {

enum class InitKind { candidate, moser, custom };

struct OptimizerConfig {
  int grid_nodes = 513;
  /// Horizon T of the half-line grid; default_horizon((gamma/4pi) eps) when unset.
  std::optional<double> t_max;
  double step_init = 1.0;
  double backtrack_factor = 0.5;
  double value_tol = 1e-11;
  int max_iters = 20000;
  InitKind init = InitKind::candidate;
  int moser_n = 4;
  std::optional<HalfLineProfile> custom_init;
  /// rho used for the reported concentration metric.
  double concentration_rho = 0.5;

  void validate() const;
};

struct OptimizerResult {
  double value = 0.0;   ///< estimate of \int_B (e^{gamma u^2}-1)|x|^alpha dx at the maximizer
  double excess = 0.0;  ///< \int_0^inf (e^{c w^2}-1) e^{-t} dt at the maximizer
  HalfLineProfile profile{{0.0, 1.0}, {0.0, 0.0}};
  int iterations = 0;
  bool converged = false;
  double concentration = 0.0;
  double t_max = 0.0;
  int grid_nodes = 0;
  WeightExponent alpha;
  double gamma = 0.0;
  double initial_value = 0.0;
  std::vector<double> trace;  ///< functional value after each accepted step
};

/// Discretized excess objective on a fixed half-line grid,
///   F(w) = \sum_seg GL8 \int (e^{c w^2}-1) e^{-t} dt + (e^{c w_T^2}-1) e^{-T},
/// as a smooth function of the node values (w_0 = 0 held fixed).
class HalfLineObjective {
 public:
  HalfLineObjective(std::vector<double> grid, double exponent_factor);

  std::span<const double> grid() const { return grid_; }
  double exponent_factor() const { return c_; }

  double value(std::span<const double> w) const;
  /// dF/dw_i for every node (entry 0 is 0).
  std::vector<double> gradient(std::span<const double> w) const;
  /// \sum (w_{i+1} - w_i)^2 / h_i.
  double dirichlet(std::span<const double> w) const;

 private:
  std::vector<double> grid_;
  double c_;
};

/// Projected ascent for S^rad(alpha, gamma) on the unit Dirichlet sphere.
///
/// Ascent directions are H^1 gradients (the Euclidean gradient preconditioned
/// by the stiffness matrix) projected on the tangent space of the sphere;
/// each trial point is renormalized to unit energy and accepted under an
/// Armijo condition with backtracking.
OptimizerResult maximize_radial(const WeightExponent& w, double gamma,
                                const OptimizerConfig& cfg = {}, const QuadratureSpec& q = {});

/// Fraction of Dirichlet energy in the annulus rho < r < R.
double concentration_metric(const RadialProfile& u, double rho);

/// Where the concentrating Moser family is placed for the divergence probe:
/// centred at (center, 0) and supported in the disk of the given radius.
struct ConcentrationSite {
  double center = 0.5;
  double radius = 0.4;
};

struct ProbeReport {
  std::vector<int> n;
  std::vector<double> values;  ///< +infinity marks overflow
  double gamma = 0.0;
  WeightExponent alpha;
  ConcentrationSite site;
};

/// \int_B (e^{gamma u_n^2}-1)|x|^alpha dx for the Moser functions
/// u_n(x) = m_n(|x - x_0|/delta), where m_n is concentrating_sequence(n) pulled
/// back to the unit disk. Any gamma > 0; centre 0 with radius 1 is the
/// radial family.
ProbeReport concentration_values(const WeightExponent& w, double gamma, std::span<const int> n_list,
                                 const ConcentrationSite& site = {}, const QuadratureSpec& q = {});

/// concentration_values restricted to gamma > 4 pi.
ProbeReport supercritical_probe(const WeightExponent& w, double gamma, std::span<const int> n_list,
                                const ConcentrationSite& site = {}, const QuadratureSpec& q = {});

}  // namespace critexp
