#include "critexp/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace critexp {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_radii(std::size_t n) {
  if (n < 2) throw PreconditionError("polar sample needs at least two radii");
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  r.back() = 1.0;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// PolarSample

PolarSample::PolarSample(std::vector<double> radii, std::size_t n_angles, std::vector<double> values)
    : radii_(std::move(radii)), n_angles_(n_angles), values_(std::move(values)) {
  if (radii_.size() < 2 || n_angles_ < 1) {
    throw InvalidProfile("polar sample: need at least two radii and one angle");
  }
  if (values_.size() != radii_.size() * n_angles_) {
    throw InvalidProfile("polar sample: value count does not match nr * ntheta");
  }
  if (radii_.front() != 0.0 || radii_.back() != 1.0) {
    throw InvalidProfile("polar sample: radii must run from 0 to 1");
  }
  for (std::size_t i = 1; i < radii_.size(); ++i) {
    if (!(radii_[i] > radii_[i - 1])) {
      throw InvalidProfile("polar sample: radii must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidProfile("polar sample: values must be finite and nonnegative");
    }
  }
  const std::size_t last = (radii_.size() - 1) * n_angles_;
  for (std::size_t j = 0; j < n_angles_; ++j) {
    if (values_[last + j] != 0.0) {
      throw InvalidProfile("polar sample: values on the ring r = 1 must vanish");
    }
  }
}

PolarSample PolarSample::from_function(std::size_t n_radii, std::size_t n_angles,
                                       const std::function<double(double, double)>& f) {
  auto radii = uniform_radii(n_radii);
  std::vector<double> values(n_radii * n_angles, 0.0);
  const double dtheta = 2.0 * kPi / static_cast<double>(n_angles);
  for (std::size_t i = 0; i + 1 < n_radii; ++i) {
    for (std::size_t j = 0; j < n_angles; ++j) {
      const double th = dtheta * static_cast<double>(j);
      values[i * n_angles + j] = f(radii[i] * std::cos(th), radii[i] * std::sin(th));
    }
  }
  return PolarSample(std::move(radii), n_angles, std::move(values));
}

PolarSample PolarSample::from_radial(const RadialProfile& u, std::size_t n_radii,
                                     std::size_t n_angles) {
  auto radii = uniform_radii(n_radii);
  std::vector<double> values(n_radii * n_angles, 0.0);
  for (std::size_t i = 0; i + 1 < n_radii; ++i) {
    const double v = u(radii[i] * u.radius());
    std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(i * n_angles), n_angles, v);
  }
  return PolarSample(std::move(radii), n_angles, std::move(values));
}

double PolarSample::angle_step() const { return 2.0 * kPi / static_cast<double>(n_angles_); }

double PolarSample::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

// ---------------------------------------------------------------------------
// Wedge model and distribution function

WedgeModel wedge_model(const PolarSample& s, int angular_subdivision) {
  if (angular_subdivision < 1) throw PreconditionError("angular subdivision must be >= 1");
  const std::size_t nt = s.n_angles();
  const std::size_t nr = s.n_radii();
  const auto k = static_cast<std::size_t>(angular_subdivision);
  WedgeModel m;
  m.ray_angle = s.angle_step() / static_cast<double>(k);
  m.rays.reserve(nt * k);
  std::vector<double> grid(s.radii().begin(), s.radii().end());
  for (std::size_t j = 0; j < nt; ++j) {
    const std::size_t jn = (j + 1) % nt;
    for (std::size_t sub = 0; sub < k; ++sub) {
      const double lam = (static_cast<double>(sub) + 0.5) / static_cast<double>(k);
      std::vector<double> v(nr);
      for (std::size_t i = 0; i < nr; ++i) {
        v[i] = (1.0 - lam) * s(i, j) + lam * s(i, jn);
      }
      m.rays.emplace_back(grid, std::move(v));
    }
  }
  return m;
}

DistributionFunction::DistributionFunction(std::vector<double> levels, std::vector<double> mass,
                                           std::vector<double> mass_at_or_above,
                                           WeightExponent measure, double total_mass)
    : levels_(std::move(levels)),
      mass_(std::move(mass)),
      left_(std::move(mass_at_or_above)),
      measure_(measure),
      total_(total_mass) {
  if (levels_.empty() || levels_.size() != mass_.size() || levels_.size() != left_.size()) {
    throw PreconditionError("distribution function: inconsistent table sizes");
  }
}

double DistributionFunction::operator()(double t) const {
  if (t < levels_.front()) return total_;
  if (t >= levels_.back()) return mass_.back();
  auto it = std::upper_bound(levels_.begin(), levels_.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(levels_.begin(), it)) - 1;
  if (t == levels_[k]) return mass_[k];
  const double lam = (t - levels_[k]) / (levels_[k + 1] - levels_[k]);
  return mass_[k] + lam * (left_[k + 1] - mass_[k]);
}

DistributionFunction distribution_function(const PolarSample& s, const WeightExponent& w,
                                           const RearrangeOptions& opt) {
  const WedgeModel model = wedge_model(s, opt.angular_subdivision);
  const double a2 = w.alpha() + 2.0;
  const double scale = model.ray_angle / a2;

  // Level grid: every node value of the wedge model, with sub-levels in between.
  std::vector<double> distinct;
  distinct.reserve(model.rays.size() * s.n_radii() + 1);
  distinct.push_back(0.0);
  for (const auto& ray : model.rays) {
    distinct.insert(distinct.end(), ray.values().begin(), ray.values().end());
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  const std::size_t gaps = std::max<std::size_t>(1, distinct.size() - 1);
  const int sub = std::clamp(static_cast<int>(opt.level_budget / gaps), 1,
                             std::max(1, opt.max_level_subdivision));
  std::vector<double> levels;
  levels.reserve(distinct.size() * static_cast<std::size_t>(sub));
  for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
    levels.push_back(distinct[k]);
    for (int q = 1; q < sub; ++q) {
      const double lam = static_cast<double>(q) / static_cast<double>(sub);
      const double t = distinct[k] + lam * (distinct[k + 1] - distinct[k]);
      if (t > levels.back() && t < distinct[k + 1]) levels.push_back(t);
    }
  }
  levels.push_back(distinct.back());

  const std::size_t nl = levels.size();
  auto index_of = [&](double v) {
    return static_cast<std::size_t>(
        std::distance(levels.begin(), std::lower_bound(levels.begin(), levels.end(), v)));
  };

  // full[k] accumulates segments lying entirely above level k (difference array);
  // partial[k] accumulates crossings; flat[k] the plateau masses sitting exactly at level k.
  std::vector<double> full(nl + 1, 0.0);
  std::vector<double> partial(nl, 0.0);
  std::vector<double> flat(nl, 0.0);
  double total = 0.0;

  for (const auto& ray : model.rays) {
    const auto g = ray.grid();
    const auto v = ray.values();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      const double ra = g[i];
      const double rb = g[i + 1];
      const double pa = std::pow(ra, a2);
      const double pb = std::pow(rb, a2);
      const double seg_mass = scale * (pb - pa);
      total += seg_mass;
      const double a = v[i];
      const double b = v[i + 1];
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      const std::size_t klo = index_of(lo);
      full[0] += seg_mass;
      full[klo] -= seg_mass;
      if (a == b) {
        flat[klo] += seg_mass;
        continue;
      }
      const std::size_t khi = index_of(hi);
      for (std::size_t k = klo; k < khi; ++k) {
        const double t = levels[k];
        const double rc = ra + (t - a) / (b - a) * (rb - ra);
        const double pc = std::pow(rc, a2);
        partial[k] += a > b ? scale * (pc - pa) : scale * (pb - pc);
      }
    }
  }

  std::vector<double> mass(nl);
  std::vector<double> left(nl);
  double running = 0.0;
  for (std::size_t k = 0; k < nl; ++k) {
    running += full[k];
    mass[k] = std::max(0.0, running + partial[k]);
    left[k] = mass[k] + flat[k];
  }
  // Enforce monotonicity against round-off in the accumulation.
  for (std::size_t k = nl - 1; k-- > 0;) {
    mass[k] = std::max(mass[k], left[k + 1]);
    left[k] = std::max(left[k], mass[k]);
  }
  return DistributionFunction(std::move(levels), std::move(mass), std::move(left), w, total);
}

RadialProfile invert_distribution(const DistributionFunction& phi) {
  const auto levels = phi.levels();
  const auto mass = phi.mass();
  const auto left = phi.mass_at_or_above();
  const double r_star = std::sqrt(phi.total_mass() / kPi);

  std::vector<double> r;
  std::vector<double> u;
  auto push = [&](double radius, double value) {
    radius = std::min(radius, r_star);
    if (r.empty()) {
      r.push_back(0.0);
      u.push_back(value);
      if (radius <= 0.0) return;
    }
    if (radius > r.back()) {
      r.push_back(radius);
      u.push_back(value);
    }
  };
  for (std::size_t k = levels.size(); k-- > 0;) {
    push(std::sqrt(mass[k] / kPi), levels[k]);
    if (left[k] > mass[k]) push(std::sqrt(left[k] / kPi), levels[k]);
  }
  if (r.size() < 2 || r.back() < r_star) {
    push(r_star, levels.front());
  }
  if (r.size() < 2) {
    return RadialProfile({0.0, r_star}, {u.front(), u.front()});
  }
  r.back() = r_star;
  return RadialProfile(std::move(r), std::move(u));
}

RadialProfile mu_rearrange_radial(const RadialProfile& u, const WeightExponent& w) {
  if (u.radius() != 1.0) {
    throw PreconditionError("mu_rearrange_radial: profile must be defined on [0, 1]");
  }
  if (!u.is_nonnegative() || !u.is_nonincreasing()) {
    throw PreconditionError("mu_rearrange_radial: profile must be nonnegative and nonincreasing");
  }
  const double eps = w.epsilon();
  if (eps == 1.0) return u;
  const double root = w.star_radius();
  std::vector<double> grid(u.grid().begin(), u.grid().end());
  for (double& r : grid) r = root * std::pow(r, 1.0 / eps);
  grid.back() = root;
  const Chart chart = u.chart().is_power() ? Chart::power(u.chart().exponent() * eps) : u.chart();
  return RadialProfile(std::move(grid), std::vector<double>(u.values().begin(), u.values().end()),
                       chart);
}

RadialProfile mu_rearrange_general(const PolarSample& s, const WeightExponent& w,
                                   const RearrangeOptions& opt) {
  return invert_distribution(distribution_function(s, w, opt));
}

// ---------------------------------------------------------------------------
// Dirichlet energy and Polya-Szego comparison

double polar_dirichlet_energy(const PolarSample& s) {
  const auto r = s.radii();
  const std::size_t nr = s.n_radii();
  const std::size_t nt = s.n_angles();
  const double dth = s.angle_step();
  double radial = 0.0;
  double angular = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i = 0; i + 1 < nr; ++i) {
      const double du = s(i + 1, j) - s(i, j);
      radial += du * du * (r[i + 1] + r[i]) / (2.0 * (r[i + 1] - r[i]));
    }
  }
  if (nt > 1) {
    for (std::size_t i = 1; i < nr; ++i) {
      const double dual = i + 1 < nr ? 0.5 * (r[i + 1] - r[i - 1]) : 0.5 * (r[i] - r[i - 1]);
      for (std::size_t j = 0; j < nt; ++j) {
        const double du = s(i, (j + 1) % nt) - s(i, j);
        angular += du * du / (dth * dth) * dual / r[i];
      }
    }
  }
  return (radial + angular) * dth;
}

PolyaSzegoReport polya_szego_check(const PolarSample& s, const WeightExponent& w,
                                   const RearrangeOptions& opt, double tolerance) {
  PolyaSzegoReport rep;
  rep.tolerance = tolerance;
  rep.dirichlet_original = polar_dirichlet_energy(s);
  rep.dirichlet_rearranged = dirichlet_norm_radial(mu_rearrange_general(s, w, opt));
  if (rep.dirichlet_original == 0.0) {
    rep.ratio = rep.dirichlet_rearranged == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    rep.ratio = rep.dirichlet_rearranged / rep.dirichlet_original;
  }
  rep.within_tolerance = rep.ratio <= 1.0 + tolerance;
  return rep;
}

}  // namespace critexp
