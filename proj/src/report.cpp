#include "critexp/report.hpp"

#include <cmath>
#include <ostream>

namespace critexp {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

Json numbers(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

Json chart_json(const Chart& c) {
  if (!c.is_power()) return "logarithmic";
  return Json{{"power", c.exponent()}};
}

std::string init_name(InitKind k) {
  switch (k) {
    case InitKind::candidate: return "candidate";
    case InitKind::moser: return "moser";
    case InitKind::custom: return "custom";
  }
  return "?";
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

void flatten_into(const Json& j, const std::string& prefix, Table& t) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten_into(v, key, t);
    } else if (!v.is_array()) {
      t.rows.push_back({key, v});
    }
  }
}

}  // namespace

Json to_json(const QuadratureSpec& q) {
  return {{"method", std::string(to_string(q.method))},
          {"abs_tol", q.abs_tol},
          {"max_refinement", q.max_refinement}};
}

Json to_json(const OptimizerConfig& cfg) {
  Json j{{"grid_nodes", cfg.grid_nodes},
         {"t_max", cfg.t_max ? Json(*cfg.t_max) : Json("default")},
         {"step_init", cfg.step_init},
         {"backtrack_factor", cfg.backtrack_factor},
         {"value_tol", cfg.value_tol},
         {"max_iters", cfg.max_iters},
         {"init", init_name(cfg.init)},
         {"concentration_rho", cfg.concentration_rho}};
  if (cfg.init == InitKind::moser) j["moser_n"] = cfg.moser_n;
  return j;
}

Json to_json(const RadialProfile& u) {
  return {{"chart", chart_json(u.chart())}, {"r", numbers(u.grid())}, {"u", numbers(u.values())}};
}

Json to_json(const HalfLineProfile& w) {
  return {{"chart", chart_json(w.chart())},
          {"t", numbers(w.grid())},
          {"w", numbers(w.values())},
          {"tail", number(w.tail_value())}};
}

Json to_json(const FunctionalReport& r) {
  return {{"alpha", r.alpha.alpha()},
          {"gamma", r.gamma},
          {"dirichlet_norm", number(r.dirichlet)},
          {"functional", number(r.exp_integral)},
          {"overflow", std::isinf(r.exp_integral)}};
}

Json to_json(const IdentityReport& r) {
  return {{"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"abs_gap", number(r.abs_gap)},
          {"rel_gap", number(r.rel_gap)},
          {"overflow", r.overflow}};
}

Json to_json(const ScaledSswReport& r) {
  return {{"dirichlet", to_json(r.dirichlet)}, {"functional", to_json(r.functional)}};
}

Json to_json(const ClosedFormValue& r) {
  Json pieces = Json::object();
  for (const auto& [k, v] : r.pieces) pieces[k] = number(v);
  return {{"alpha", r.alpha.alpha()},
          {"epsilon", r.alpha.epsilon()},
          {"total", number(r.value)},
          {"pieces", pieces},
          {"a_alpha", number(r.a_alpha)},
          {"functional", number(r.functional)}};
}

Json to_json(const OptimizerResult& r) {
  return {{"alpha", r.alpha.alpha()},
          {"gamma", r.gamma},
          {"value", number(r.value)},
          {"excess", number(r.excess)},
          {"initial_value", number(r.initial_value)},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"concentration", number(r.concentration)},
          {"t_max", r.t_max},
          {"grid_nodes", r.grid_nodes},
          {"dirichlet_norm", dirichlet_norm_halfline(r.profile)},
          {"trace", numbers(r.trace)},
          {"profile", to_json(r.profile)}};
}

Json to_json(const ProbeReport& r) {
  Json ns = Json::array();
  for (int n : r.n) ns.push_back(n);
  return {{"alpha", r.alpha.alpha()},
          {"gamma", r.gamma},
          {"center", r.site.center},
          {"radius", r.site.radius},
          {"n", ns},
          {"values", numbers(r.values)}};
}

Json to_json(const RadialIdentityReport& r) {
  return {{"alpha", r.alpha.alpha()},
          {"epsilon", r.alpha.epsilon()},
          {"gamma", r.gamma},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"rel_gap", number(r.rel_gap)},
          {"lhs_disk", number(r.lhs_disk)},
          {"rhs_disk", number(r.rhs_disk)},
          {"rel_gap_disk", number(r.rel_gap_disk)},
          {"lhs_converged", r.lhs_converged},
          {"rhs_converged", r.rhs_converged}};
}

Json to_json(const AlphaStarReport& r) {
  return {{"alpha_star_estimate", r.alpha_star},
          {"lower", r.lower},
          {"upper", r.upper},
          {"margin_at_zero", r.margin_at_zero},
          {"tol", r.tol},
          {"iterations", r.iterations},
          {"bracket_cap", r.bracket_cap},
          {"positive_on_bracket", r.positive_on_bracket},
          {"note", "lower estimate realized by the explicit candidate, not the sharp threshold"}};
}

Json to_json(const ExponentConvexityReport& r) {
  return {{"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"margin", number(r.margin)},
          {"derivative", number(r.derivative)},
          {"derivative_bound", number(r.derivative_bound)},
          {"degenerate", r.degenerate},
          {"holds", r.holds}};
}

Json to_json(const PolyaSzegoReport& r) {
  return {{"dirichlet_original", number(r.dirichlet_original)},
          {"dirichlet_rearranged", number(r.dirichlet_rearranged)},
          {"ratio", number(r.ratio)},
          {"tolerance", r.tolerance},
          {"within_tolerance", r.within_tolerance}};
}

Json envelope(const std::string& command, Json config, Json result) {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"config", std::move(config)},
          {"result", std::move(result)}};
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << csv_cell(t.columns[i]);
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

Table flatten(const Json& j) {
  Table t;
  t.columns = {"key", "value"};
  flatten_into(j, "", t);
  return t;
}

}  // namespace critexp
