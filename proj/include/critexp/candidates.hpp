#pragma once

#include <string>
#include <utility>
#include <vector>

#include "critexp/profiles.hpp"
#include "critexp/quadrature.hpp"
#include "critexp/weight.hpp"

namespace critexp {

/// Nodes used for the sqrt(t - 1) piece of the Carleson-Chang profile.
inline constexpr int kCandidateMiddleNodes = 16384;

/// The explicit extremal candidate in Moser coordinates:
///   w(t) = t/2 on [0, 2],  sqrt(t - 1) on [2, 1 + e^2],  e beyond.
/// The middle piece is stored as its piecewise-linear interpolant on
/// `middle_nodes` uniform intervals.
HalfLineProfile carleson_chang_candidate(int middle_nodes = kCandidateMiddleNodes);

/// A_alpha = (1/e)[-(2/alpha) e^{-(alpha/(alpha+2)) e^2} + ((alpha+2)/alpha) e^{-alpha/(alpha+2)}];
/// the alpha -> 0 limit e is returned for alpha < 1e-6.
double a_alpha(const WeightExponent& w);

/// B_alpha = (alpha+2) e^{-(alpha+2)/2} (alpha/4) {e - (alpha/(alpha+2)) e^{(alpha/(alpha+2))^2}}.
double b_alpha(const WeightExponent& w);

/// Closed-form decomposition of the half-line functional at the candidate.
struct ClosedFormValue {
  double value = 0.0;  ///< \int_0^inf e^{eps w^2 - t} dt
  std::vector<std::pair<std::string, double>> pieces;
  WeightExponent alpha;
  double a_alpha = 0.0;     ///< closed form A_alpha (middle + tail analytically)
  double functional = 0.0;  ///< pi eps (value - 1)

  double piece(const std::string& name) const;
};

/// \int_0^2 e^{eps t^2/4 - t} dt by quadrature plus the middle and tail pieces
/// in closed form.
ClosedFormValue candidate_value(const WeightExponent& w, const QuadratureSpec& q = {});

/// 2 \int_0^1 e^{s^2} ds.
double gauss_integral(const QuadratureSpec& q = {});

/// Moser family w_n(t) = t/sqrt(n) on [0, n], sqrt(n) after; unit Dirichlet norm.
HalfLineProfile concentrating_sequence(int n);

}  // namespace critexp
