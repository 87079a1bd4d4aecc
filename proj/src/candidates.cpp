#include "critexp/candidates.hpp"

#include <cmath>
#include <numbers>

namespace critexp {

namespace {
constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;
}  // namespace

HalfLineProfile carleson_chang_candidate(int middle_nodes) {
  if (middle_nodes < 1) throw PreconditionError("candidate needs at least one middle interval");
  const double t_end = 1.0 + kE * kE;
  std::vector<double> t{0.0, 2.0};
  std::vector<double> w{0.0, 1.0};
  const double h = (t_end - 2.0) / middle_nodes;
  for (int k = 1; k < middle_nodes; ++k) {
    const double tk = 2.0 + h * k;
    t.push_back(tk);
    w.push_back(std::sqrt(tk - 1.0));
  }
  t.push_back(t_end);
  w.push_back(kE);
  return HalfLineProfile(std::move(t), std::move(w), kE);
}

double a_alpha(const WeightExponent& w) {
  const double al = w.alpha();
  if (al < 1e-6) return kE;
  const double a = al / (al + 2.0);
  // (1/e)[e^{-a} + (2/alpha)(e^{-a} - e^{-a e^2})], rearranged to avoid cancellation.
  const double diff = std::expm1(-a) - std::expm1(-a * kE * kE);
  return (std::exp(-a) + (2.0 / al) * diff) / kE;
}

double b_alpha(const WeightExponent& w) {
  const double al = w.alpha();
  const double a = al / (al + 2.0);
  return (al + 2.0) * std::exp(-0.5 * (al + 2.0)) * (al / 4.0) * (kE - a * std::exp(a * a));
}

double ClosedFormValue::piece(const std::string& name) const {
  for (const auto& [k, v] : pieces) {
    if (k == name) return v;
  }
  throw PreconditionError("unknown closed-form piece '" + name + "'");
}

ClosedFormValue candidate_value(const WeightExponent& w, const QuadratureSpec& q) {
  const double eps = w.epsilon();
  const double a = 1.0 - eps;  // alpha/(alpha+2)
  const double e2 = kE * kE;

  const double head = integrate([eps](double t) { return std::exp(eps * t * t / 4.0 - t); }, 0.0,
                                2.0, q);
  // e^{-eps} \int_2^{1+e^2} e^{-a t} dt = e^{-1}(e^{-a} - e^{-a e^2})/a.
  const double ratio = a == 0.0 ? e2 - 1.0 : -std::expm1(-a * (e2 - 1.0)) / a;
  const double middle = std::exp(-eps - 2.0 * a) * ratio;
  // e^{eps e^2} \int_{1+e^2}^inf e^{-t} dt.
  const double tail = std::exp(-1.0 - a * e2);

  ClosedFormValue r;
  r.alpha = w;
  r.pieces = {{"integral_0_2", head}, {"middle", middle}, {"tail", tail}};
  r.value = head + middle + tail;
  r.a_alpha = a_alpha(w);
  r.functional = kPi * eps * (r.value - 1.0);
  return r;
}

double gauss_integral(const QuadratureSpec& q) {
  return 2.0 * integrate([](double s) { return std::exp(s * s); }, 0.0, 1.0, q);
}

HalfLineProfile concentrating_sequence(int n) {
  if (n < 1) throw PreconditionError("concentrating_sequence: n must be >= 1");
  const double nn = static_cast<double>(n);
  return HalfLineProfile({0.0, nn}, {0.0, std::sqrt(nn)});
}

}  // namespace critexp
