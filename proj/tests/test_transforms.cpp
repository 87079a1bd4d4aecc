#include <doctest.h>

#include <cmath>
#include <random>

#include "critexp/candidates.hpp"
#include "critexp/transforms.hpp"
#include "support.hpp"

using namespace critexp;
using namespace testing_support;

TEST_CASE("ssw is the identity at alpha = 0") {
  const auto u = tent(17);
  const auto v = ssw_transform(u, WeightExponent(0.0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(v.grid()[i] == u.grid()[i]);
    CHECK(v.values()[i] == u.values()[i]);
  }
}

TEST_CASE("ssw of 1 - r at alpha = 2") {
  const auto v = ssw_transform(tent(33), WeightExponent(2.0));
  for (double rho : {0.0, 0.01, 0.2, 0.5, 0.81, 1.0}) {
    CHECK(v(rho) == doctest::Approx(std::sqrt(2.0) * (1.0 - std::sqrt(rho))).epsilon(1e-13));
  }
}

TEST_CASE("both maps preserve the Dirichlet norm") {
  std::mt19937_64 rng(3);
  for (double a : {0.0, 0.3, 1.0, 7.0}) {
    const WeightExponent w(a);
    const auto u = random_profile(rng, 40, 1.7);
    const auto v = ssw_transform(u, w);
    CHECK(dirichlet_norm_radial(v) == doctest::Approx(1.7).epsilon(1e-12));
    const auto h = moser_transform(v);
    CHECK(dirichlet_norm_halfline(h) == doctest::Approx(1.7).epsilon(1e-12));
  }
}

TEST_CASE("moser map of a logarithmic profile is linear") {
  const double c = 0.3;
  const RadialProfile v({0.0, std::exp(-2.0), std::exp(-1.0), 1.0}, {2 * c, 2 * c, c, 0.0},
                        Chart::logarithmic());
  const auto w = moser_transform(v);
  const double s = std::sqrt(4 * kPi);
  for (double t : {0.5, 1.0, 3.0, 3.9}) CHECK(w(t) == doctest::Approx(s * c * t / 2).epsilon(1e-14));
  CHECK(w(5.0) == doctest::Approx(2 * s * c));
  CHECK(w.tail_value() == doctest::Approx(2 * s * c));
  CHECK(dirichlet_norm_halfline(w) == doctest::Approx(4 * kPi * c * c).epsilon(1e-14));

  CHECK_THROWS_AS(moser_transform(RadialProfile({0.0, 1.0}, {1.0, 0.5})), PreconditionError);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(5);
  for (double a : {0.0, 0.5, 3.0}) {
    const WeightExponent w(a);
    const auto u = random_profile(rng, 30);
    const auto back = ssw_inverse(ssw_transform(u, w), w);
    const auto back2 = pull_back(push_forward(u, w), w);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(back.values()[i] == doctest::Approx(u.values()[i]).epsilon(1e-14));
      CHECK(back2.values()[i] == doctest::Approx(u.values()[i]).epsilon(1e-13));
      CHECK(back2.grid()[i] == doctest::Approx(u.grid()[i]).epsilon(1e-13));
    }
    for (double r : {0.13, 0.5, 0.97}) CHECK(back2(r) == doctest::Approx(u(r)).epsilon(1e-12));
  }
  const auto cand = carleson_chang_candidate(64);
  const auto again = push_forward(pull_back(cand, WeightExponent(1.0)), WeightExponent(1.0));
  for (double t : {0.5, 2.5, 5.0, 9.0, 20.0}) CHECK(again(t) == doctest::Approx(cand(t)).epsilon(1e-12));
}

TEST_CASE("functional identity through ssw") {
  std::mt19937_64 rng(9);
  for (double a : {0.0, 0.4, 2.0}) {
    const WeightExponent w(a);
    const auto u = random_profile(rng, 50, 0.8);
    const auto r = ssw_functional_identity(u, w);
    CHECK(r.rel_gap < 1e-10);
    CHECK_FALSE(r.overflow);
  }
  const WeightExponent w01(0.1);
  const auto u = pull_back(carleson_chang_candidate(), w01);
  CHECK(ssw_functional_identity(u, w01).rel_gap < 1e-8);
  const auto s = scaled_ssw_identity(u, w01);
  CHECK(s.dirichlet.rel_gap < 1e-10);
  CHECK(s.functional.rel_gap < 1e-8);
}

TEST_CASE("full pipeline identity") {
  std::mt19937_64 rng(21);
  const WeightExponent w(0.5);
  const auto u = random_profile(rng, 64);
  CHECK(full_pipeline_identity(u, w).rel_gap < 1e-7);

  const WeightExponent w0(0.0);
  const auto r = full_pipeline_identity(pull_back(carleson_chang_candidate(), w0), w0);
  CHECK(r.rel_gap < 1e-8);
  CHECK(r.lhs == doctest::Approx(kFunctionalAlpha0).epsilon(1e-8));

  CHECK_THROWS_AS(full_pipeline_identity(RadialProfile({0.0, 1.0}, {1.0, 0.1}), w), PreconditionError);
}

TEST_CASE("identity report flags overflow") {
  const auto r = make_identity_report(INFINITY, 1.0);
  CHECK(r.overflow);
  const auto z = make_identity_report(0.0, 0.0);
  CHECK(z.rel_gap == 0.0);
}
