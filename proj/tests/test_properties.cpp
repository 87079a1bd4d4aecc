#include <doctest.h>

#include <cmath>
#include <random>

#include "critexp/rearrange.hpp"
#include "critexp/transforms.hpp"
#include "rearrange_oracles.hpp"
#include "support.hpp"

using namespace critexp;
using namespace testing_support;

namespace {

PolarSample random_sample(std::mt19937_64& rng, std::size_t nr, std::size_t nt) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> v(nr * nt, 0.0);
  for (std::size_t i = 0; i + 1 < nr; ++i)
    for (std::size_t j = 0; j < nt; ++j) v[i * nt + j] = 0.6 * U(rng) * (1.0 - double(i) / (nr - 1));
  return PolarSample(uniform(static_cast<int>(nr)), nt, v);
}

}  // namespace

TEST_CASE("functional increases with gamma and decreases with alpha") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 10; ++k) {
    const auto u = random_profile(rng, 20, 0.5 + 0.1 * k, k % 3 == 0);
    double prev = 0.0;
    for (double g : {1.0, 4.0, 8.0, 12.0}) {
      const double cur = weighted_exp_functional(u, WeightExponent(0.5), g);
      CHECK(cur > prev);
      prev = cur;
    }
    prev = INFINITY;
    for (double a : {0.0, 0.5, 2.0, 6.0}) {
      const double cur = weighted_exp_functional(u, WeightExponent(a), 4 * kPi);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("random profiles: norms and identities survive the transforms") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> A(0.0, 8.0);
  for (int k = 0; k < 20; ++k) {
    const WeightExponent w(A(rng));
    const double e = 0.2 + 0.05 * k;
    const auto u = random_profile(rng, 8 + 3 * k, e, k % 2 == 0);
    const auto h = push_forward(u, w);
    CHECK(dirichlet_norm_halfline(h) == doctest::Approx(e).epsilon(1e-11));
    const auto back = pull_back(h, w);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(back.values()[i] == doctest::Approx(u.values()[i]).epsilon(1e-12));
    CHECK(full_pipeline_identity(u, w).rel_gap < 1e-7);
    CHECK(ssw_functional_identity(u, w).rel_gap < 1e-9);
  }
}

TEST_CASE("random polar samples: equimeasurable, monotone, energy nonincreasing") {
  std::mt19937_64 rng(303);
  const auto phi = [](double t) { return std::expm1(4 * kPi * t * t); };
  for (int k = 0; k < 6; ++k) {
    const auto s = random_sample(rng, 12 + 2 * k, 8 + 4 * k);
    for (double a : {0.0, 1.5}) {
      const WeightExponent w(a);
      const auto star = mu_rearrange_general(s, w);
      CHECK(star.is_nonincreasing());
      CHECK(star.radius() == doctest::Approx(w.star_radius()));
      // sup of the wedge model: sub-rays sit between the sample angles
      double top = 0.0;
      for (const auto& ray : wedge_model(s, 4).rays)
        for (double x : ray.values()) top = std::max(top, x);
      CHECK(star(0.0) == doctest::Approx(top).epsilon(1e-12));
      CHECK(top <= s.max_value());
      CHECK(rel(star_integral(star, phi), model_integral(s, w, phi)) < 1e-4);
      const auto ps = polya_szego_check(s, w);
      CHECK(ps.ratio <= 1.0 + ps.tolerance);
    }
  }
}
