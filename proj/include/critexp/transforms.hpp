#pragma once

#include "critexp/profiles.hpp"
#include "critexp/quadrature.hpp"
#include "critexp/weight.hpp"

namespace critexp {

// Both maps move node coordinates and carry the interpolation chart along, so
// the output is the exact image of the input function and the round trips are
// exact at shared nodes.

/// v(rho) = u(rho^eps)/sqrt(eps) on [0, 1]; nodes rho_j = r_j^{1/eps}.
RadialProfile ssw_transform(const RadialProfile& u, const WeightExponent& w);
/// Inverse of ssw_transform: u(r) = sqrt(eps) v(r^{1/eps}).
RadialProfile ssw_inverse(const RadialProfile& v, const WeightExponent& w);

/// w(t) = sqrt(4 pi) v(e^{-t/2}); requires v(1) = 0. The node rho = 0 becomes
/// the value at t = +infinity (the profile's tail).
HalfLineProfile moser_transform(const RadialProfile& v);
/// v(rho) = w(-2 ln rho)/sqrt(4 pi) on [0, 1].
RadialProfile moser_inverse(const HalfLineProfile& w);

struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
  bool overflow = false;
};

IdentityReport make_identity_report(double lhs, double rhs);

/// \int_B (e^{4 pi u^2}-1)|x|^alpha dx  vs  2 pi eps \int_0^1 (e^{4 pi eps v^2}-1) rho d rho.
IdentityReport ssw_functional_identity(const RadialProfile& u, const WeightExponent& w,
                                       const QuadratureSpec& q = {});

/// Rescaled variant through the mu_alpha-rearrangement: v(rho) = u*_alpha(sqrt(eps) rho).
struct ScaledSswReport {
  IdentityReport dirichlet;   ///< \int|grad u|^2  vs  (2 pi/eps) \int |v'|^2 rho d rho
  IdentityReport functional;  ///< weighted functional  vs  2 pi eps \int (e^{4 pi v^2}-1) rho d rho
};

ScaledSswReport scaled_ssw_identity(const RadialProfile& u, const WeightExponent& w,
                                    const QuadratureSpec& q = {});

/// Left: weighted_exp_functional(u, alpha, 4 pi). Right: pi eps (J - 1) with J the
/// half-line functional of moser_transform(ssw_transform(u)).
IdentityReport full_pipeline_identity(const RadialProfile& u, const WeightExponent& w,
                                      const QuadratureSpec& q = {});

/// Radial profile on [0, 1] corresponding to a half-line profile at weight alpha:
/// ssw_inverse(moser_inverse(w)).
RadialProfile pull_back(const HalfLineProfile& w, const WeightExponent& wt);
/// moser_transform(ssw_transform(u)).
HalfLineProfile push_forward(const RadialProfile& u, const WeightExponent& wt);

}  // namespace critexp
