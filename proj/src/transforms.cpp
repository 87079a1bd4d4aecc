#include "critexp/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "critexp/rearrange.hpp"

namespace critexp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt4Pi = std::sqrt(4.0 * kPi);

void require_unit_domain(const RadialProfile& u, const char* op) {
  if (u.radius() != 1.0) {
    throw PreconditionError(std::string(op) + ": profile must be defined on [0, 1]");
  }
}

Chart rescale_chart(const Chart& c, double factor) {
  return c.is_power() ? Chart::power(c.exponent() * factor) : c;
}

RadialProfile power_map(const RadialProfile& u, double exponent, double value_scale,
                        double chart_factor) {
  std::vector<double> grid(u.grid().begin(), u.grid().end());
  std::vector<double> values(u.values().begin(), u.values().end());
  if (exponent != 1.0) {
    for (double& r : grid) r = std::pow(r, exponent);
    grid.back() = 1.0;
  }
  if (value_scale != 1.0) {
    for (double& v : values) v *= value_scale;
  }
  return RadialProfile(std::move(grid), std::move(values), rescale_chart(u.chart(), chart_factor));
}

}  // namespace

RadialProfile ssw_transform(const RadialProfile& u, const WeightExponent& w) {
  require_unit_domain(u, "ssw_transform");
  const double eps = w.epsilon();
  if (eps == 1.0) return u;
  // u linear in r^p  =>  v linear in rho^{eps p}.
  return power_map(u, 1.0 / eps, 1.0 / std::sqrt(eps), eps);
}

RadialProfile ssw_inverse(const RadialProfile& v, const WeightExponent& w) {
  require_unit_domain(v, "ssw_inverse");
  const double eps = w.epsilon();
  if (eps == 1.0) return v;
  return power_map(v, eps, std::sqrt(eps), 1.0 / eps);
}

HalfLineProfile moser_transform(const RadialProfile& v) {
  require_unit_domain(v, "moser_transform");
  if (v.values().back() != 0.0) {
    throw PreconditionError("moser_transform: v(1) must vanish");
  }
  const auto g = v.grid();
  const auto val = v.values();
  const std::size_t n = g.size();
  std::vector<double> t;
  std::vector<double> w;
  t.reserve(n - 1);
  w.reserve(n - 1);
  for (std::size_t k = n; k-- > 1;) {
    t.push_back(k == n - 1 ? 0.0 : -2.0 * std::log(g[k]));
    w.push_back(kSqrt4Pi * val[k]);
  }
  w.front() = 0.0;
  // Node rho_0 = 0 sits at t = +infinity.
  return HalfLineProfile(std::move(t), std::move(w), kSqrt4Pi * val[0], v.chart());
}

RadialProfile moser_inverse(const HalfLineProfile& w) {
  const auto g = w.grid();
  const auto val = w.values();
  const std::size_t n = g.size();
  std::vector<double> rho;
  std::vector<double> v;
  rho.reserve(n + 1);
  v.reserve(n + 1);
  rho.push_back(0.0);
  v.push_back(w.tail_value() / kSqrt4Pi);
  for (std::size_t k = n; k-- > 0;) {
    rho.push_back(k == 0 ? 1.0 : std::exp(-0.5 * g[k]));
    v.push_back(val[k] / kSqrt4Pi);
  }
  // Horizons beyond ~1490 underflow rho to 0; such profiles cannot be mapped.
  if (!(rho[1] > 0.0)) {
    throw PreconditionError("moser_inverse: horizon too large to represent on [0, 1]");
  }
  return RadialProfile(std::move(rho), std::move(v), w.chart());
}

IdentityReport make_identity_report(double lhs, double rhs) {
  IdentityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.overflow = std::isinf(lhs) || std::isinf(rhs);
  if (r.overflow) {
    r.abs_gap = std::numeric_limits<double>::infinity();
    r.rel_gap = std::numeric_limits<double>::infinity();
    return r;
  }
  r.abs_gap = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_gap = scale > 0.0 ? r.abs_gap / scale : 0.0;
  return r;
}

IdentityReport ssw_functional_identity(const RadialProfile& u, const WeightExponent& w,
                                       const QuadratureSpec& q) {
  const double eps = w.epsilon();
  const RadialProfile v = ssw_transform(u, w);
  const double lhs = weighted_exp_functional(u, w, 4.0 * kPi, q);
  const double rhs = eps * weighted_exp_functional(v, WeightExponent(0.0), 4.0 * kPi * eps, q);
  return make_identity_report(lhs, rhs);
}

ScaledSswReport scaled_ssw_identity(const RadialProfile& u, const WeightExponent& w,
                                    const QuadratureSpec& q) {
  const double eps = w.epsilon();
  const RadialProfile rearranged = mu_rearrange_radial(u, w);
  const RadialProfile v = rearranged.dilated(1.0 / w.star_radius());
  ScaledSswReport rep;
  rep.dirichlet = make_identity_report(dirichlet_norm_radial(u), dirichlet_norm_radial(v) / eps);
  rep.functional = make_identity_report(weighted_exp_functional(u, w, 4.0 * kPi, q),
                                        eps * weighted_exp_functional(v, WeightExponent(0.0),
                                                                      4.0 * kPi, q));
  return rep;
}

RadialProfile pull_back(const HalfLineProfile& w, const WeightExponent& wt) {
  return ssw_inverse(moser_inverse(w), wt);
}

HalfLineProfile push_forward(const RadialProfile& u, const WeightExponent& wt) {
  return moser_transform(ssw_transform(u, wt));
}

IdentityReport full_pipeline_identity(const RadialProfile& u, const WeightExponent& w,
                                      const QuadratureSpec& q) {
  if (u.values().back() != 0.0) {
    throw PreconditionError("full_pipeline_identity: u(1) must vanish");
  }
  const double lhs = weighted_exp_functional(u, w, 4.0 * kPi, q);
  const double excess = halfline_excess(push_forward(u, w), w, q);
  return make_identity_report(lhs, kPi * w.epsilon() * excess);
}

}  // namespace critexp
