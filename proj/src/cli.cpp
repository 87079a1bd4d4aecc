#include "critexp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "critexp/bounds.hpp"
#include "critexp/candidates.hpp"
#include "critexp/error.hpp"
#include "critexp/profile_io.hpp"
#include "critexp/rearrange.hpp"
#include "critexp/report.hpp"
#include "critexp/transforms.hpp"

namespace critexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

struct Options {
  double alpha = 0.0;
  double gamma_factor = 1.0;
  std::optional<int> grid;
  std::optional<double> tmax;
  std::optional<double> tol;
  std::string output;
  std::string format = "json";
  std::string quadrature = "adaptive";

  std::string profile;
  std::string sample;
  std::string kind = "identities";
  std::string report = "summary";
  std::string init = "candidate";
  std::string init_profile;
  int moser_n = 4;
  int max_iters = 20000;
  int n_max = 40;
  double cap = 100.0;
  std::string alphas;
};

struct Output {
  Json json;
  std::optional<Table> csv;  // falls back to flatten(json)
  int code = kExitOk;
};

QuadratureSpec quadrature(const Options& o, bool use_tol = true) {
  QuadratureSpec q;
  q.method = quadrature_method_from_string(o.quadrature);
  if (use_tol && o.tol) q.abs_tol = *o.tol;
  q.validate();
  return q;
}

OptimizerConfig optimizer_config(const Options& o) {
  OptimizerConfig cfg;
  if (o.grid) cfg.grid_nodes = *o.grid;
  cfg.t_max = o.tmax;
  cfg.max_iters = o.max_iters;
  cfg.moser_n = o.moser_n;
  if (o.init == "candidate") {
    cfg.init = InitKind::candidate;
  } else if (o.init == "moser") {
    cfg.init = InitKind::moser;
  } else {
    throw PreconditionError("unknown init '" + o.init + "'");
  }
  if (!o.init_profile.empty()) {
    auto p = load_profile(o.init_profile);
    auto* w = std::get_if<HalfLineProfile>(&p);
    if (!w) throw ParseError(o.init_profile + ": init profile must be a half-line profile (t,w)");
    cfg.init = InitKind::custom;
    cfg.custom_init = *w;
  }
  cfg.validate();
  return cfg;
}

Json base_config(const Options& o, const QuadratureSpec& q) {
  return {{"alpha", o.alpha}, {"gamma_factor", o.gamma_factor}, {"quadrature", to_json(q)}};
}

Table profile_table(const RadialProfile& u) {
  Table t{{"r", "u"}, {}};
  for (std::size_t i = 0; i < u.size(); ++i) t.rows.push_back({u.grid()[i], u.values()[i]});
  return t;
}

Table profile_table(const HalfLineProfile& w) {
  Table t{{"t", "w"}, {}};
  for (std::size_t i = 0; i < w.size(); ++i) t.rows.push_back({w.grid()[i], w.values()[i]});
  return t;
}

double gamma_of(const Options& o) {
  if (!(o.gamma_factor > 0.0)) throw PreconditionError("--gamma-factor must be > 0");
  return 4.0 * kPi * o.gamma_factor;
}

Output cmd_evaluate(const Options& o) {
  const auto q = quadrature(o);
  const WeightExponent w(o.alpha);
  const double gamma = gamma_of(o);
  Json cfg = base_config(o, q);
  cfg["profile"] = o.profile;
  Json res;
  const auto p = load_profile(o.profile);
  if (const auto* u = std::get_if<RadialProfile>(&p)) {
    res = to_json(evaluate(*u, w, gamma, q));
    res["kind"] = "radial";
  } else {
    const auto& hw = std::get<HalfLineProfile>(p);
    const double excess = halfline_excess(hw, w, q, o.gamma_factor);
    res = {{"kind", "half-line"},
           {"alpha", o.alpha},
           {"gamma", gamma},
           {"dirichlet_norm", dirichlet_norm_halfline(hw)},
           {"halfline_functional", number(1.0 + excess)},
           {"functional", number(kPi * w.epsilon() * excess)},
           {"overflow", std::isinf(excess)}};
  }
  return {envelope("evaluate", cfg, res), std::nullopt};
}

Output cmd_rearrange(const Options& o) {
  const WeightExponent w(o.alpha);
  Json cfg = {{"alpha", o.alpha}};
  Json res;
  RadialProfile star({0.0, 1.0}, {0.0, 0.0});
  if (!o.sample.empty()) {
    cfg["sample"] = o.sample;
    const PolarSample s = load_polar_sample(o.sample);
    const RearrangeOptions opt;
    cfg["angular_subdivision"] = opt.angular_subdivision;
    cfg["level_budget"] = opt.level_budget;
    star = mu_rearrange_general(s, w, opt);
    res["polya_szego"] = to_json(polya_szego_check(s, w, opt));
  } else if (!o.profile.empty()) {
    cfg["profile"] = o.profile;
    star = mu_rearrange_radial(load_radial_profile(o.profile), w);
  } else {
    throw PreconditionError("rearrange needs --sample or --profile");
  }
  res["star_radius"] = star.radius();
  res["profile"] = to_json(star);
  return {envelope("rearrange", cfg, res), profile_table(star)};
}

Output cmd_transform(const Options& o) {
  const auto q = quadrature(o);
  const WeightExponent w(o.alpha);
  Json cfg = base_config(o, q);
  cfg["profile"] = o.profile;
  cfg["kind"] = o.kind;
  const auto p = load_profile(o.profile);
  const auto* u = std::get_if<RadialProfile>(&p);
  const auto* hw = std::get_if<HalfLineProfile>(&p);
  auto need_radial = [&] {
    if (!u) throw PreconditionError("transform --kind " + o.kind + " needs a radial profile (r,u)");
    return *u;
  };
  auto need_halfline = [&] {
    if (!hw) throw PreconditionError("transform --kind " + o.kind + " needs a half-line profile (t,w)");
    return *hw;
  };
  auto radial_out = [&](const RadialProfile& v) {
    Json res{{"dirichlet_norm", dirichlet_norm_radial(v)}, {"profile", to_json(v)}};
    return Output{envelope("transform", cfg, res), profile_table(v)};
  };
  auto halfline_out = [&](const HalfLineProfile& v) {
    Json res{{"dirichlet_norm", dirichlet_norm_halfline(v)}, {"profile", to_json(v)}};
    return Output{envelope("transform", cfg, res), profile_table(v)};
  };

  if (o.kind == "ssw") return radial_out(ssw_transform(need_radial(), w));
  if (o.kind == "ssw-inverse") return radial_out(ssw_inverse(need_radial(), w));
  if (o.kind == "moser") return halfline_out(moser_transform(need_radial()));
  if (o.kind == "moser-inverse") return radial_out(moser_inverse(need_halfline()));
  if (o.kind == "push-forward") return halfline_out(push_forward(need_radial(), w));
  if (o.kind == "pull-back") return radial_out(pull_back(need_halfline(), w));
  if (o.kind == "identities") {
    const RadialProfile r = need_radial();
    Json res{{"ssw_functional", to_json(ssw_functional_identity(r, w, q))},
             {"scaled_ssw", to_json(scaled_ssw_identity(r, w, q))}};
    if (r.vanishes_at_boundary()) res["full_pipeline"] = to_json(full_pipeline_identity(r, w, q));
    if (o.alpha > 0.0) res["exponent_convexity"] = to_json(exponent_convexity_check(r, w, q));
    return {envelope("transform", cfg, res), std::nullopt};
  }
  throw PreconditionError("unknown transform kind '" + o.kind + "'");
}

Output cmd_candidate(const Options& o) {
  const auto q = quadrature(o);
  const WeightExponent w(o.alpha);
  if (o.report != "summary" && o.report != "pieces") {
    throw PreconditionError("--report must be 'summary' or 'pieces'");
  }
  Json cfg = base_config(o, q);
  cfg["report"] = o.report;
  cfg["middle_nodes"] = kCandidateMiddleNodes;
  const ClosedFormValue v = candidate_value(w, q);
  const double bound = concentration_upper_bound(w);
  Json res{{"alpha", o.alpha},
           {"total", v.value},
           {"functional", v.functional},
           {"bound", bound},
           {"margin", v.value - (kE + 1.0)},
           {"beats_bound", v.functional > bound},
           {"dirichlet_norm", dirichlet_norm_halfline(carleson_chang_candidate())}};
  if (o.report == "pieces") {
    Json pieces = Json::object();
    for (const auto& [k, x] : v.pieces) pieces[k] = x;
    res["pieces"] = pieces;
    res["a_alpha"] = v.a_alpha;
    res["b_alpha"] = b_alpha(w);
    res["gauss_integral"] = gauss_integral(q);
  }
  return {envelope("candidate", cfg, res), std::nullopt};
}

Output cmd_optimize(const Options& o) {
  const auto q = quadrature(o);
  const WeightExponent w(o.alpha);
  const double gamma = gamma_of(o);
  Json cfg = base_config(o, q);
  if (o.gamma_factor > 1.0) {
    if (o.n_max < 1) throw PreconditionError("--n-max must be >= 1");
    std::vector<int> ns(o.n_max);
    for (int i = 0; i < o.n_max; ++i) ns[i] = i + 1;
    const ProbeReport p = supercritical_probe(w, gamma, ns, {}, q);
    cfg["n_max"] = o.n_max;
    Table t{{"n", "value"}, {}};
    for (std::size_t i = 0; i < p.n.size(); ++i) t.rows.push_back({p.n[i], number(p.values[i])});
    Json res = to_json(p);
    res["mode"] = "supercritical_probe";
    return {envelope("optimize", cfg, res), t};
  }
  const OptimizerConfig oc = optimizer_config(o);
  cfg["optimizer"] = to_json(oc);
  const OptimizerResult r = maximize_radial(w, gamma, oc, q);
  cfg["optimizer"]["t_max"] = r.t_max;
  Json res = to_json(r);
  res["candidate_functional"] = number(kPi * w.epsilon() *
                                       halfline_excess(carleson_chang_candidate(), w, q,
                                                       o.gamma_factor));
  res["bound"] = concentration_upper_bound(w);
  return {envelope("optimize", cfg, res), profile_table(r.profile),
          r.converged ? kExitOk : kExitNotConverged};
}

// "0,0.5,2" -> {0, 0.5, 2}; empty fields are errors, not zeros.
std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  if (text.find_first_not_of(" \t") == std::string::npos) {
    throw PreconditionError("sweep needs a non-empty --alphas list");
  }
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || field.find_first_not_of(" \t", used) != std::string::npos) {
      throw PreconditionError("--alphas: cannot read '" + field + "' as a number");
    }
    WeightExponent{a};
    out.push_back(a);
  }
  if (text.back() == ',') throw PreconditionError("--alphas: trailing comma");
  return out;
}

Output cmd_sweep(const Options& o) {
  const auto alphas = parse_alphas(o.alphas);
  if (!(o.gamma_factor > 0.0 && o.gamma_factor <= 1.0)) {
    throw PreconditionError("sweep requires 0 < --gamma-factor <= 1");
  }
  const auto q = quadrature(o);
  const OptimizerConfig oc = optimizer_config(o);
  Json cfg = base_config(o, q);
  cfg["alphas"] = alphas;
  cfg["optimizer"] = to_json(oc);
  const auto rows = sweep(alphas, o.gamma_factor, oc, q);

  Table t{{"alpha", "optimizer_value", "candidate_value", "bound", "identity_gap", "concentration",
           "converged", "error"},
          {}};
  Json arr = Json::array();
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.converged && r.error.empty();
    t.rows.push_back({r.alpha, number(r.optimizer_value), number(r.candidate_value),
                      number(r.bound), number(r.identity_gap), number(r.concentration),
                      r.converged, r.error});
    arr.push_back({{"alpha", r.alpha},
                   {"optimizer_value", number(r.optimizer_value)},
                   {"candidate_value", number(r.candidate_value)},
                   {"bound", number(r.bound)},
                   {"identity_gap", number(r.identity_gap)},
                   {"concentration", number(r.concentration)},
                   {"converged", r.converged},
                   {"error", r.error}});
  }
  return {envelope("sweep", cfg, Json{{"rows", arr}}), t, ok ? kExitOk : kExitNotConverged};
}

Output cmd_threshold(const Options& o) {
  const auto q = quadrature(o, false);
  const double tol = o.tol.value_or(1e-6);
  Json cfg{{"tol", tol}, {"cap", o.cap}, {"quadrature", to_json(q)}};
  return {envelope("threshold", cfg, to_json(alpha_star_estimate(tol, q, o.cap))), std::nullopt};
}

double gauss_series() {
  double sum = 0.0;
  double fact = 1.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) fact *= k;
    sum += 2.0 / (fact * (2 * k + 1));
  }
  return sum;
}

Output cmd_verify(const Options& o) {
  const auto q = quadrature(o);
  const WeightExponent w(o.alpha);
  Json cfg = base_config(o, q);
  RadialProfile u = [&] {
    if (!o.profile.empty()) {
      cfg["profile"] = o.profile;
      return load_radial_profile(o.profile);
    }
    std::vector<double> r(65), v(65);
    for (int i = 0; i < 65; ++i) {
      r[i] = i / 64.0;
      v[i] = (1.0 - r[i]) / std::sqrt(kPi);
    }
    r.back() = 1.0;
    v.back() = 0.0;
    cfg["profile"] = "tent";
    return RadialProfile(r, v);
  }();

  Table t{{"check", "passed", "value"}, {}};
  Json checks = Json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool pass, double value) {
    all = all && pass;
    t.rows.push_back({name, pass, number(value)});
    checks.push_back({{"check", name}, {"passed", pass}, {"value", number(value)}});
  };

  const double cn = dirichlet_norm_halfline(carleson_chang_candidate());
  add("candidate_unit_norm", std::abs(cn - 1.0) < 1e-6, cn);
  const double g = gauss_integral(q);
  add("gauss_integral_bounds", g > 2.906 && g > 2.723 && std::abs(g - gauss_series()) < 1e-5, g);
  const auto ssw = ssw_functional_identity(u, w, q);
  add("ssw_identity", ssw.overflow || ssw.rel_gap < 1e-6, ssw.rel_gap);
  if (u.vanishes_at_boundary()) {
    const auto pipe = full_pipeline_identity(u, w, q);
    add("pipeline_identity", pipe.overflow || pipe.rel_gap < 1e-6, pipe.rel_gap);
  }
  const auto rt = ssw_inverse(ssw_transform(u, w), w);
  double rt_err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    rt_err = std::max(rt_err, std::abs(rt.values()[i] - u.values()[i]) +
                                  std::abs(rt.grid()[i] - u.grid()[i]));
  }
  add("ssw_round_trip", rt_err < 1e-12, rt_err);
  double worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    worst = std::max(worst, kPi * w.epsilon() * halfline_excess(concentrating_sequence(n), w, q));
  }
  add("concentration_shadow", worst <= concentration_upper_bound(w) + 0.05, worst);
  if (o.alpha > 0.0 && !u.is_zero()) {
    const auto r2 = exponent_convexity_check(u, w, q);
    add("exponent_convexity", r2.holds, r2.margin);
  }
  return {envelope("verify", cfg, Json{{"all_passed", all}, {"checks", checks}}), t,
          all ? kExitOk : kExitCheckFailed};
}

void emit(const Output& res, const Options& o, std::ostream& out) {
  std::ostringstream buf;
  if (o.format == "csv") {
    write_csv(buf, res.csv ? *res.csv : flatten(res.json));
  } else {
    buf << res.json.dump(2) << '\n';
  }
  if (o.output.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw std::runtime_error("cannot write '" + o.output + "'");
  f << buf.str();
}

}  // namespace

std::vector<SweepRow> sweep(std::span<const double> alphas, double gamma_factor,
                            const OptimizerConfig& cfg, const QuadratureSpec& q) {
  if (alphas.empty()) throw PreconditionError("sweep needs at least one alpha");
  std::vector<SweepRow> rows(alphas.size());
  auto work = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.alpha = alphas[i];
    try {
      const WeightExponent w(alphas[i]);
      row.bound = concentration_upper_bound(w);
      row.candidate_value = gamma_factor == 1.0
                                ? candidate_value(w, q).functional
                                : kPi * w.epsilon() *
                                      halfline_excess(carleson_chang_candidate(), w, q,
                                                      gamma_factor);
      const auto id = radial_identity_check(w, cfg, q, 4.0 * kPi * gamma_factor);
      row.optimizer_value = id.lhs;
      row.identity_gap = id.rel_gap_disk;
      row.concentration = id.left.concentration;
      row.converged = id.lhs_converged && id.rhs_converged;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, alphas.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weighted critical exponential functional toolkit"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--alpha", o.alpha, "Weight exponent alpha >= 0");
    s->add_option("--gamma-factor", o.gamma_factor, "gamma/(4 pi)");
    s->add_option("--grid", o.grid, "Optimizer grid nodes");
    s->add_option("--tmax", o.tmax, "Half-line horizon T");
    s->add_option("--tol", o.tol, "Quadrature absolute tolerance (bisection tolerance for threshold)");
    s->add_option("--output", o.output, "Write the report to this path");
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--quadrature", o.quadrature, "adaptive or composite-simpson")
        ->check(CLI::IsMember({"adaptive", "composite-simpson"}));
  };
  auto optimizer_flags = [&](CLI::App* s) {
    s->add_option("--init", o.init, "candidate or moser")
        ->check(CLI::IsMember({"candidate", "moser"}));
    s->add_option("--moser-n", o.moser_n, "n for the Moser initial profile");
    s->add_option("--init-profile", o.init_profile, "Initial half-line profile (t,w file)");
    s->add_option("--max-iters", o.max_iters, "Iteration cap");
  };

  auto* ev = app.add_subcommand("evaluate", "Dirichlet norm and functional of a profile");
  common(ev);
  ev->add_option("--profile", o.profile, "Profile file (r,u or t,w)")->required();

  auto* re = app.add_subcommand("rearrange", "mu_alpha-rearrangement of a polar sample or profile");
  common(re);
  re->add_option("--sample", o.sample, "Polar sample file");
  re->add_option("--profile", o.profile, "Radially decreasing profile on [0,1] (r,u)");

  auto* tr = app.add_subcommand("transform", "Changes of variable and their identities");
  common(tr);
  tr->add_option("--profile", o.profile, "Profile file")->required();
  tr->add_option("--kind", o.kind, "Transform to apply")
      ->check(CLI::IsMember({"ssw", "ssw-inverse", "moser", "moser-inverse", "push-forward",
                             "pull-back", "identities"}));

  auto* ca = app.add_subcommand("candidate", "Closed-form value of the explicit candidate");
  common(ca);
  ca->add_option("--report", o.report, "summary or pieces")
      ->check(CLI::IsMember({"summary", "pieces"}));

  auto* op = app.add_subcommand("optimize", "Maximize over radial unit-norm profiles");
  common(op);
  optimizer_flags(op);
  op->add_option("--n-max", o.n_max, "Sequence length for the supercritical probe");

  auto* sw = app.add_subcommand("sweep", "Optimizer, candidate and bound over several alphas");
  common(sw);
  optimizer_flags(sw);
  sw->add_option("--alphas", o.alphas, "Comma-separated alpha values")->required();

  auto* th = app.add_subcommand("threshold", "Largest alpha where the candidate beats the bound");
  common(th);
  th->add_option("--cap", o.cap, "Upper end of the search bracket");

  auto* ve = app.add_subcommand("verify", "Run the built-in consistency checks");
  common(ve);
  ve->add_option("--profile", o.profile, "Radial profile to check (default: tent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    Output res;
    if (*ev) res = cmd_evaluate(o);
    else if (*re) res = cmd_rearrange(o);
    else if (*tr) res = cmd_transform(o);
    else if (*ca) res = cmd_candidate(o);
    else if (*op) res = cmd_optimize(o);
    else if (*sw) res = cmd_sweep(o);
    else if (*th) res = cmd_threshold(o);
    else res = cmd_verify(o);
    emit(res, o, out);
    if (res.code == kExitNotConverged) err << "warning: optimizer did not converge\n";
    return res.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace critexp
