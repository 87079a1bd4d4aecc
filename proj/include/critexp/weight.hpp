#pragma once

#include <cmath>
#include <numbers>

#include "critexp/error.hpp"

namespace critexp {

/// The Hénon exponent alpha of the weight |x|^alpha on the unit disk.
class WeightExponent {
 public:
  explicit WeightExponent(double alpha = 0.0) : alpha_(alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw PreconditionError("weight exponent alpha must be finite and >= 0");
    }
  }

  double alpha() const { return alpha_; }
  /// epsilon = 2/(alpha+2), in (0, 1].
  double epsilon() const { return 2.0 / (alpha_ + 2.0); }
  /// Radius of the disk whose area equals mu_alpha(B) = 2 pi/(alpha+2).
  double star_radius() const { return std::sqrt(epsilon()); }
  /// mu_alpha(B).
  double disk_mass() const { return 2.0 * std::numbers::pi / (alpha_ + 2.0); }

  friend bool operator==(const WeightExponent&, const WeightExponent&) = default;

 private:
  double alpha_;
};

}  // namespace critexp
