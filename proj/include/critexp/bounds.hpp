#pragma once

#include <numbers>

#include "critexp/optimizer.hpp"
#include "critexp/profiles.hpp"
#include "critexp/quadrature.hpp"
#include "critexp/transforms.hpp"
#include "critexp/weight.hpp"

namespace critexp {

/// 2 pi e/(alpha+2): the level reached in the limit by concentrating sequences.
double concentration_upper_bound(const WeightExponent& w);

/// candidate_value(alpha).value - (e + 1); positive exactly when the
/// candidate beats the concentration level.
double candidate_margin(const WeightExponent& w, const QuadratureSpec& q = {});

struct RadialIdentityReport {
  WeightExponent alpha;
  double lhs = 0.0;  ///< S^rad(alpha, 4 pi) estimate
  double rhs = 0.0;  ///< S(0, 4 pi eps) estimate
  /// |lhs - eps rhs| / lhs with both sides taken from the optimizer (half-line values).
  double rel_gap = 0.0;
  /// Same comparison after pulling each maximizer back to the disk and
  /// integrating there with the weight; independent of the half-line quadrature.
  double lhs_disk = 0.0;
  double rhs_disk = 0.0;
  double rel_gap_disk = 0.0;
  bool lhs_converged = false;
  bool rhs_converged = false;
  double gamma = 0.0;
  OptimizerResult left;   ///< run at (alpha, gamma)
  OptimizerResult right;  ///< run at (0, gamma eps)
};

/// S^rad(alpha, gamma) against eps S(0, gamma eps) with matched configs.
RadialIdentityReport radial_identity_check(const WeightExponent& w, const OptimizerConfig& cfg = {},
                                           const QuadratureSpec& q = {},
                                           double gamma = 4.0 * std::numbers::pi);

struct AlphaStarReport {
  double alpha_star = 0.0;  ///< largest alpha with positive margin, to within tol
  double lower = 0.0;       ///< margin(lower) > 0
  double upper = 0.0;       ///< margin(upper) <= 0
  double margin_at_zero = 0.0;
  double tol = 0.0;
  int iterations = 0;
  bool positive_on_bracket = false;  ///< no sign change in [0, cap]; alpha_star = cap
  double bracket_cap = 100.0;
};

/// Sign scan on [0, cap] followed by bisection on the candidate margin.
AlphaStarReport alpha_star_estimate(double tol, const QuadratureSpec& q = {}, double cap = 100.0,
                                    int max_iters = 80);

struct ExponentConvexityReport {
  double lhs = 0.0;  ///< 2 pi \int_0^1 (e^{4 pi v^2}-1) r dr, v = ssw_transform(u)
  double rhs = 0.0;  ///< (1/eps^2) \int_B (e^{4 pi u^2}-1)|x|^alpha dx
  double margin = 0.0;
  /// With F(e) = 2 pi \int_0^1 (e^{4 pi e v^2}-1) r dr: F'(eps) and F(eps)/eps.
  double derivative = 0.0;
  double derivative_bound = 0.0;
  bool degenerate = false;
  bool holds = false;
};

/// Strict inequality between the unweighted functional of the transformed
/// profile and the weighted functional of u scaled by 1/eps^2.
ExponentConvexityReport exponent_convexity_check(const RadialProfile& u, const WeightExponent& w,
                                             const QuadratureSpec& q = {});

}  // namespace critexp
