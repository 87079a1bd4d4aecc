// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "critexp/bounds.hpp"
#include "critexp/candidates.hpp"
#include "critexp/optimizer.hpp"
#include "critexp/rearrange.hpp"
#include "critexp/transforms.hpp"
#include "rearrange_oracles.hpp"
#include "support.hpp"

using namespace critexp;
using namespace testing_support;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    r.ok = false;
    r.detail += " [over the " + std::to_string(budget_s) + " s budget]";
  }
  if (!r.ok) ++failures;
  std::printf("%s %2d %-28s %8.3fs  %s\n", r.ok ? "PASS" : "FAIL", id, name, dt, r.detail.c_str());
  std::fflush(stdout);
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Sum 2/(k!(2k+1)), summed until the terms vanish.
double gauss_series() {
  double s = 0.0, fact = 1.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) fact *= k;
    s += 2.0 / (fact * (2 * k + 1));
  }
  return s;
}

PolarSample two_bumps(std::size_t nr, std::size_t nt) {
  return PolarSample::from_function(nr, nt, [](double x, double y) {
    const double a = std::max(0.0, 1.0 - std::hypot(x - 0.45, y - 0.1) / 0.3);
    const double b = 0.6 * std::max(0.0, 1.0 - std::hypot(x + 0.3, y + 0.4) / 0.25);
    return 0.5 * (a + b);
  });
}

PolarSample smooth_angular(std::size_t nr, std::size_t nt) {
  return PolarSample::from_function(nr, nt, [](double x, double y) {
    const double r2 = x * x + y * y;
    return 0.4 * (1.0 - r2) * (1.2 + std::cos(3 * std::atan2(y, x)) * std::sqrt(r2));
  });
}

}  // namespace

int main() {
  criterion(1, "candidate norm", 1.0, [] {
    const double n = dirichlet_norm_halfline(carleson_chang_candidate());
    return Outcome{std::abs(n - 1.0) < 1e-6, fmt("norm = %.12f", n)};
  });

  criterion(2, "gaussian integral", 1.0, [] {
    const double g = gauss_integral();
    const double s = gauss_series();
    const bool ok = g > 2.906 && g > 2.723 && std::abs(g - s) < 1e-5;
    return Outcome{ok, fmt("value = %.14f, series = %.14f", g, s)};
  });

  criterion(3, "A and B limits", 1.0, [] {
    const double a = a_alpha(WeightExponent(1e-4));
    const double b = b_alpha(WeightExponent(1e-3)) / 1e-3;
    const bool ok = std::abs(a - kE) < 0.02 && b >= 0.45 && b <= 0.55;
    return Outcome{ok, fmt("A(1e-4) - e = %.3e, B(1e-3)/1e-3 = %.6f", a - kE, b)};
  });

  criterion(4, "candidate above bound", 5.0, [] {
    bool ok = true;
    std::string d;
    for (double a : {0.0, 0.01, 0.02, 0.05}) {
      const WeightExponent w(a);
      const double v = candidate_value(w).functional;
      const double b = concentration_upper_bound(w);
      ok = ok && v > b;
      d += fmt("a=%g: %.5f %s %.5f; ", a, v, v > b ? ">" : "<=", b);
    }
    const WeightExponent w0(0.0);
    const double margin = candidate_value(w0).functional - concentration_upper_bound(w0);
    const double expected = kPi * (2.0 / kE * gauss_series() / 2.0 - 1.0);
    ok = ok && std::abs(margin - expected) < 1e-4;
    d += fmt("margin(0) = %.7f vs %.7f", margin, expected);
    return Outcome{ok, d};
  });

  criterion(5, "pipeline identity", 10.0, [] {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (double a : {0.0, 0.5, 2.0}) {
      for (int k = 0; k < 20; ++k) {
        const auto u = random_profile(rng, 64, 1.0, k % 2 == 0);
        worst = std::max(worst, full_pipeline_identity(u, WeightExponent(a)).rel_gap);
      }
    }
    return Outcome{worst < 1e-6, fmt("worst relative gap = %.3e over 60 profiles", worst)};
  });

  criterion(6, "rearrangement", 60.0, [] {
    const std::size_t nr = 128, nt = 64;
    const std::vector<PolarSample> suite = {
        PolarSample::from_radial(unit_tent(129), nr, nt),
        cone_bump(nr, nt, 0.5, 0.0, 0.35),
        cone_bump(nr, nt, -0.2, 0.55, 0.3, 0.7),
        gaussian_bump(nr, nt, 0.3, -0.3, 0.2, 0.8),
        two_bumps(nr, nt),
        smooth_angular(nr, nt),
    };
    const std::vector<std::function<double(double)>> phis = {
        [](double t) { return t; }, [](double t) { return t * t; },
        [](double t) { return std::expm1(4 * kPi * t * t); }};
    double worst_eq = 0.0, worst_ps = 0.0;
    for (double a : {0.0, 1.0, 2.0}) {
      const WeightExponent w(a);
      for (const auto& s : suite) {
        const auto star = mu_rearrange_general(s, w);
        for (const auto& phi : phis) {
          worst_eq = std::max(worst_eq, rel(star_integral(star, phi), model_integral(s, w, phi)));
        }
        worst_ps = std::max(worst_ps, polya_szego_check(s, w).ratio);
      }
    }
    const bool ok = worst_eq < 1e-4 && worst_ps <= 1.02;
    return Outcome{ok, fmt("worst equimeasurability gap = %.3e, worst energy ratio = %.5f", worst_eq, worst_ps)};
  });

  criterion(7, "radial scaling identity", 300.0, [] {
    bool ok = true;
    std::string d;
    for (double a : {1.0, 4.0}) {
      const auto r = radial_identity_check(WeightExponent(a));
      const double gap = std::abs(r.lhs - WeightExponent(a).epsilon() * r.rhs) / r.lhs;
      ok = ok && gap < 0.01 && r.lhs_converged && r.rhs_converged;
      d += fmt("a=%g: S=%.6f, eps*S0=%.6f, gap=%.2e; ", a, r.lhs, WeightExponent(a).epsilon() * r.rhs, gap);
    }
    return Outcome{ok, d};
  });

  criterion(8, "concentration bound shadow", 30.0, [] {
    std::vector<int> ns;
    for (int n = 1; n <= 100; ++n) ns.push_back(n);
    bool ok = true;
    std::string d;
    for (double a : {0.0, 1.0}) {
      const WeightExponent w(a);
      const auto p = concentration_values(w, 4 * kPi, ns, ConcentrationSite{0.0, 1.0});
      double top = 0.0;
      for (double v : p.values) top = std::max(top, v);
      const double lim = concentration_upper_bound(w) + 0.05;
      ok = ok && top <= lim;
      d += fmt("a=%g: max %.5f <= %.5f; ", a, top, lim);
    }
    return Outcome{ok, d};
  });

  criterion(9, "supercritical divergence", 10.0, [] {
    std::vector<int> ns;
    for (int n = 1; n <= 40; ++n) ns.push_back(n);
    const auto p = supercritical_probe(WeightExponent(1.0), 1.1 * 4 * kPi, ns);
    std::size_t start = p.values.size() - 1;  // increasing from here to the end
    while (start > 0 && p.values[start - 1] < p.values[start]) --start;
    const double ratio = p.values.back() / p.values.front();
    const bool ok = start + 10 <= p.values.size() - 1 && ratio > 10.0;
    return Outcome{ok, fmt("increasing from n = %d, final/initial = %.3f", ns[start], ratio)};
  });

  criterion(10, "optimizer lower bound", 300.0, [] {
    const auto r = maximize_radial(WeightExponent(0.0), 4 * kPi);
    const bool ok = r.converged && r.value >= 8.77 && r.value >= kPi * kE;
    return Outcome{ok, fmt("S(0, 4pi) >= %.6f after %d iterations", r.value, r.iterations)};
  });

  criterion(11, "gradient check", 10.0, [] {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const WeightExponent w(1.0);
    const OptimizerConfig cfg;
    const double c = w.epsilon();
    const auto grid = uniform(cfg.grid_nodes, 0.0, default_horizon(c));
    const HalfLineObjective f(grid, c);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      std::vector<double> v(grid.size(), 0.0);
      for (std::size_t i = 1; i < v.size(); ++i) v[i] = v[i - 1] + U(rng) * (grid[i] - grid[i - 1]);
      const double scale = 1.0 / std::sqrt(f.dirichlet(v));
      for (double& x : v) x *= scale;
      const auto g = f.gradient(v);
      double gmax = 0.0, err = 0.0;
      for (std::size_t i = 1; i < v.size(); ++i) {
        const double h = 1e-5 * std::max(1.0, std::abs(v[i]));
        auto p = v, m = v;
        p[i] += h;
        m[i] -= h;
        const double fd = (f.value(p) - f.value(m)) / (2 * h);
        gmax = std::max(gmax, std::abs(g[i]));
        err = std::max(err, std::abs(g[i] - fd));
      }
      worst = std::max(worst, err / gmax);
    }
    return Outcome{worst < 1e-5, fmt("worst max-norm relative error = %.3e", worst)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
