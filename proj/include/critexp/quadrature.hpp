#pragma once

#include <cmath>
#include <functional>
#include <string_view>
#include <vector>

namespace critexp {

enum class QuadratureMethod { composite_simpson, adaptive };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::adaptive;
  double abs_tol = 1e-10;
  int max_refinement = 30;

  void validate() const;
};

std::string_view to_string(QuadratureMethod m);
QuadratureMethod quadrature_method_from_string(std::string_view s);

using ScalarFunction = std::function<double(double)>;

/// Integral of f over [a, b] to absolute tolerance q.abs_tol.
///
/// `adaptive` bisects Gauss-Kronrod (7, 15) panels until the embedded error
/// estimate drops below the panel's share of the tolerance (or round-off
/// level); `composite_simpson` doubles the panel count until two successive
/// estimates agree.
double integrate(const ScalarFunction& f, double a, double b, const QuadratureSpec& q);

/// Gauss-Legendre nodes and weights mapped to [0, 1] (weights sum to 1).
struct UnitRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n in {4, 8, 16}.
const UnitRule& gauss_legendre_unit(int n);

}  // namespace critexp
