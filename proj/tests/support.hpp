#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "critexp/profiles.hpp"

namespace testing_support {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;

// Values frozen from 50-digit mpmath evaluations.
inline constexpr double kGaussIntegral = 2.92530349181436;  // 2 int_0^1 e^{s^2} ds
inline constexpr double kTotalAlpha0 = 3.79444084228458;
inline constexpr double kFunctionalAlpha0 = 8.77899482101252;
inline constexpr double kHeadAlpha0 = 1.07615901382554;
inline constexpr double kTotalAlpha1 = 1.72097371574456;
inline constexpr double kHeadAlpha1 = 0.992852357528543;
inline constexpr double kA1 = 0.728121358216021;
inline constexpr double kA2 = 0.437115137873562;
inline constexpr double kB1 = 0.392559942590151;
inline constexpr double kASmall = 2.71765309114675;       // A at alpha = 1e-4
inline constexpr double kBSmallRatio = 0.499908013611014;  // B(1e-3)/1e-3
inline constexpr double kAlphaStar = 0.0121197618887433;

inline std::vector<double> uniform(int n, double a = 0.0, double b = 1.0) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  g.back() = b;
  return g;
}

inline critexp::RadialProfile tent(int nodes = 65, double height = 1.0) {
  auto r = uniform(nodes);
  std::vector<double> u(nodes);
  for (int i = 0; i < nodes; ++i) u[i] = height * (1.0 - r[i]);
  u.back() = 0.0;
  return critexp::RadialProfile(r, u);
}

inline critexp::RadialProfile unit_tent(int nodes = 65) { return tent(nodes, 1.0 / std::sqrt(kPi)); }

// Random piecewise-linear profile on [0, 1] with u(1) = 0, scaled to the given
// Dirichlet energy. Grid nodes are jittered; values are a decreasing walk
// unless `monotone` is false.
inline critexp::RadialProfile random_profile(std::mt19937_64& rng, int nodes, double energy = 1.0,
                                             bool monotone = false) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> r(nodes);
  r[0] = 0.0;
  for (int i = 1; i < nodes; ++i) r[i] = r[i - 1] + 0.2 + U(rng);
  for (double& x : r) x /= r.back();
  r.back() = 1.0;
  std::vector<double> u(nodes, 0.0);
  for (int i = nodes - 2; i >= 0; --i) {
    u[i] = monotone ? u[i + 1] + U(rng) : std::abs(u[i + 1] + (U(rng) - 0.35));
  }
  critexp::RadialProfile p(r, u);
  const double e = critexp::dirichlet_norm_radial(p);
  return p.scaled(std::sqrt(energy / e));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support
