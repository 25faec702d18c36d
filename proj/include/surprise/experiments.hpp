#pragma once

// Scheme evaluation, parameter sweeps and the figure tables built on them.
// A figure column is always read off evaluate_scheme rows, so any figure
// value can be reproduced by a single `eval` call with the same inputs.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surprise/closed_form.hpp"
#include "surprise/csv.hpp"
#include "surprise/scaling.hpp"
#include "surprise/schemes.hpp"
#include "surprise/tree_io.hpp"

namespace surprise {

enum class SchemeKind { Gamble, Hazard, Timing, DualAfter, DualBefore, DualB, Tree };

struct SchemeRequest {
  SchemeKind kind = SchemeKind::Hazard;
  ModelParams params;
  ScalingMode scaling = NoScaling{};
  double hi = 1.0;
  double lo = 0.0;
  double p = 0.03;
  double n = 4.0;
  double p_tr = 0.5;
  double k_tr = 10.0;
  double p_pr = 0.7;
  double k2_prob = 2.0;
  std::string tree_path;
};

using NamedValue = std::pair<std::string, std::string>;

struct SchemeRow {
  std::string scheme;
  std::vector<NamedValue> parameters;
  double expected_value = 0.0;
  double surprise = 0.0;
  double utility = 0.0;
  /// Scheme-specific extras: U_fix and ratio for timing; U_p, U_t and D for
  /// dual risk.
  std::vector<std::pair<std::string, double>> derived;
};

inline const char* to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Gamble: return "gamble";
    case SchemeKind::Hazard: return "hazard";
    case SchemeKind::Timing: return "timing";
    case SchemeKind::DualAfter: return "dual-a-after";
    case SchemeKind::DualBefore: return "dual-a-before";
    case SchemeKind::DualB: return "dual-b";
    case SchemeKind::Tree: return "tree";
  }
  return "";
}

/// Accepts the CLI spelling; "tree:<path>" also fills tree_path.
inline SchemeKind parse_scheme(const std::string& text, std::string* tree_path = nullptr) {
  if (text == "gamble") return SchemeKind::Gamble;
  if (text == "hazard") return SchemeKind::Hazard;
  if (text == "timing") return SchemeKind::Timing;
  if (text == "dual-a-after") return SchemeKind::DualAfter;
  if (text == "dual-a-before") return SchemeKind::DualBefore;
  if (text == "dual-b") return SchemeKind::DualB;
  if (text.rfind("tree:", 0) == 0 && text.size() > 5) {
    if (tree_path) *tree_path = text.substr(5);
    return SchemeKind::Tree;
  }
  throw ValidationError("unknown scheme '" + text + "'");
}

namespace detail {

inline int integral_steps(double n) {
  require_finite(n, "n");
  if (n != std::floor(n) || n < 0.0 || n > 1e6) {
    throw ValidationError("n must be a non-negative integer for this scheme");
  }
  return static_cast<int>(n);
}

inline DualScheme dual_scheme(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DualAfter: return DualScheme::SeparateAfter;
    case SchemeKind::DualBefore: return DualScheme::SeparateBefore;
    default: return DualScheme::Incorporated;
  }
}

inline void evaluate_into(const Node& tree, const SchemeRequest& req, SchemeRow& row) {
  const AffineTransform t = derive_transform(tree, req.scaling);
  const EvaluationResult r = evaluate(apply(t, tree), req.params);
  row.expected_value = expected_value(tree);
  row.surprise = r.total_surprise;
  row.utility = t.is_identity() ? r.utility : t.inverse(r.utility);
}

}  // namespace detail

inline SchemeRow evaluate_scheme(const SchemeRequest& req) {
  validate(req.params);
  SchemeRow row;
  row.scheme = to_string(req.kind);
  const auto num = [](double x) { return format_number(x); };

  switch (req.kind) {
    case SchemeKind::Gamble: {
      row.parameters = {{"hi", num(req.hi)}, {"lo", num(req.lo)}, {"p", num(req.p)}};
      detail::evaluate_into(build_binary_gamble(req.hi, req.lo, req.p), req, row);
      break;
    }
    case SchemeKind::Hazard: {
      row.parameters = {{"p", num(req.p)}, {"n", num(req.n)}};
      const bool whole = std::isfinite(req.n) && req.n >= 1.0 && req.n == std::floor(req.n);
      if (whole) {
        detail::evaluate_into(
            build_hazard_chain(req.p, detail::integral_steps(req.n)), req, row);
      } else {
        // Continuous extension; payoffs are 0 and 1, so scaling is moot.
        const HazardSpec spec{req.p, req.n};
        row.expected_value = std::pow(1.0 - req.p, req.n);
        row.surprise = hazard_total_surprise(spec, req.params);
        row.utility = discount_factor(spec, req.params);
      }
      break;
    }
    case SchemeKind::Timing: {
      const TimingRiskSpec spec{req.p, detail::integral_steps(req.n), req.p_tr, req.k_tr};
      row.parameters = {{"p", num(req.p)}, {"n", num(req.n)},
                        {"p_tr", num(req.p_tr)}, {"K_tr", num(req.k_tr)}};
      detail::evaluate_into(build_timing_risk(spec), req, row);
      const double u_fix = discount_factor(HazardSpec{req.p, mean_delay(spec)}, req.params);
      row.derived = {{"U_fix", u_fix}, {"ratio", row.utility / u_fix}};
      break;
    }
    case SchemeKind::DualAfter:
    case SchemeKind::DualBefore:
    case SchemeKind::DualB: {
      const int n = detail::integral_steps(req.n);
      const DualRiskSpec spec{req.p, n, req.p_pr, detail::dual_scheme(req.kind), req.k2_prob};
      row.parameters = {{"p", num(req.p)}, {"n", num(req.n)},
                        {"p_pr", num(req.p_pr)}, {"k2_prob", num(req.k2_prob)}};
      detail::evaluate_into(build_dual(spec), req, row);
      ModelParams prob_params = req.params;
      prob_params.k2 = req.k2_prob;
      const double u_p = evaluate(build_binary_gamble(1.0, 0.0, req.p_pr), prob_params).utility;
      const double u_t = evaluate(build_hazard_chain(req.p, n), req.params).utility;
      row.derived = {{"U_p", u_p}, {"U_t", u_t}, {"D", row.utility / (u_p * u_t)}};
      break;
    }
    case SchemeKind::Tree: {
      row.parameters = {{"tree", req.tree_path}};
      detail::evaluate_into(load_tree(req.tree_path).tree, req, row);
      break;
    }
  }
  return row;
}

inline Table eval_table(const SchemeRequest& req) {
  const SchemeRow row = evaluate_scheme(req);
  Table t;
  t.header = {"scheme"};
  t.rows.push_back({row.scheme});
  auto& cells = t.rows.back();
  auto add = [&](const std::string& name, const std::string& value) {
    t.header.push_back(name);
    cells.push_back(value);
  };
  for (const auto& [name, value] : row.parameters) add(name, value);
  add("k", format_number(req.params.k));
  add("alpha", format_number(req.params.alpha));
  add("k1", format_number(req.params.k1));
  add("k2", format_number(req.params.k2));
  add("modulation", to_string(req.params.modulation));
  add("scaling", to_string(req.scaling));
  add("U0", format_number(row.expected_value));
  add("delta", format_number(row.surprise));
  add("U", format_number(row.utility));
  for (const auto& [name, value] : row.derived) add(name, format_number(value));
  return t;
}

// --- sweeps ---------------------------------------------------------------

enum class SweepTarget { P, N, PTr, PPr, KTr };

inline const char* to_string(SweepTarget t) {
  switch (t) {
    case SweepTarget::P: return "p";
    case SweepTarget::N: return "n";
    case SweepTarget::PTr: return "p_tr";
    case SweepTarget::PPr: return "p_pr";
    case SweepTarget::KTr: return "K_tr";
  }
  return "";
}

inline SweepTarget parse_sweep_target(const std::string& s) {
  if (s == "p") return SweepTarget::P;
  if (s == "n") return SweepTarget::N;
  if (s == "p_tr" || s == "p-tr") return SweepTarget::PTr;
  if (s == "p_pr" || s == "p-pr") return SweepTarget::PPr;
  if (s == "K_tr" || s == "k_tr" || s == "k-tr") return SweepTarget::KTr;
  throw ValidationError("unknown sweep target '" + s + "'");
}

struct SweepSpec {
  SweepTarget target = SweepTarget::N;
  std::vector<double> grid;
  SchemeRequest fixed;
};

/// count evenly spaced points from start to stop inclusive.
inline std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 2) throw ValidationError("grid count must be >= 2");
  require_finite(start, "grid start");
  require_finite(stop, "grid stop");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    g.push_back(i == count - 1 ? stop : start + (stop - start) * i / (count - 1));
  }
  return g;
}

inline void set_target(SchemeRequest& req, SweepTarget target, double value) {
  switch (target) {
    case SweepTarget::P: req.p = value; break;
    case SweepTarget::N: req.n = value; break;
    case SweepTarget::PTr: req.p_tr = value; break;
    case SweepTarget::PPr: req.p_pr = value; break;
    case SweepTarget::KTr: req.k_tr = value; break;
  }
}

inline void validate(const SweepSpec& spec) {
  if (spec.grid.size() < 2) throw ValidationError("sweep grid needs >= 2 points");
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    up = up && spec.grid[i] > spec.grid[i - 1];
    down = down && spec.grid[i] < spec.grid[i - 1];
  }
  if (!up && !down) throw ValidationError("sweep grid must be strictly monotone");
}

/// One row per grid point, in grid order.
inline Table run_sweep(const SweepSpec& spec) {
  validate(spec);
  Table t;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    SchemeRequest req = spec.fixed;
    set_target(req, spec.target, spec.grid[i]);
    const SchemeRow row = evaluate_scheme(req);
    if (i == 0) {
      t.header = {to_string(spec.target), "U0", "delta", "U"};
      for (const auto& d : row.derived) t.header.push_back(d.first);
    }
    std::vector<std::string> cells{format_number(spec.grid[i]),
                                   format_number(row.expected_value),
                                   format_number(row.surprise),
                                   format_number(row.utility)};
    for (const auto& d : row.derived) cells.push_back(format_number(d.second));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// --- figures --------------------------------------------------------------

enum class FigureId { Fig1, Fig3Left, Fig3Right, Fig5Left, Fig5Right, Fig7, FigA1, FigA2, FigA3 };

inline const std::vector<std::pair<std::string, FigureId>>& figure_names() {
  static const std::vector<std::pair<std::string, FigureId>> names{
      {"fig1", FigureId::Fig1},           {"fig3-left", FigureId::Fig3Left},
      {"fig3-right", FigureId::Fig3Right}, {"fig5-left", FigureId::Fig5Left},
      {"fig5-right", FigureId::Fig5Right}, {"fig7", FigureId::Fig7},
      {"figA1", FigureId::FigA1},         {"figA2", FigureId::FigA2},
      {"figA3", FigureId::FigA3}};
  return names;
}

inline FigureId parse_figure(const std::string& s) {
  for (const auto& [name, id] : figure_names()) {
    if (name == s) return id;
  }
  throw ValidationError("unknown figure '" + s + "'");
}

/// Optional replacements for the parameters a figure bakes in.
struct FigureOverrides {
  std::optional<double> k, alpha, k1, k2, p, n, k2_prob, k_exp, k_hypo;
  std::optional<Modulation> modulation;
};

/// Caption parameters of a figure before overrides; x-axis values are set
/// per grid point.
inline SchemeRequest figure_base(FigureId id) {
  SchemeRequest req;
  req.params = ModelParams{3.0, 1.6, 2.0, 10.0, Modulation::Hyperbolic};
  req.p = 0.03;
  switch (id) {
    case FigureId::Fig1:
    case FigureId::FigA3:
      req.kind = SchemeKind::Gamble;
      req.params.k2 = 2.0;
      break;
    case FigureId::Fig3Left:
    case FigureId::Fig3Right:
      req.kind = SchemeKind::Hazard;
      break;
    case FigureId::FigA1:
      req.kind = SchemeKind::Hazard;
      req.params.k2 = 2.0;
      req.params.modulation = Modulation::ExponentialNegative;
      break;
    case FigureId::Fig5Left:
    case FigureId::Fig5Right:
      req.kind = SchemeKind::Timing;
      req.n = 4.0;
      req.p_tr = 0.5;
      break;
    case FigureId::Fig7:
      req.kind = SchemeKind::DualAfter;
      req.n = 4.0;
      req.k2_prob = 2.0;
      break;
    case FigureId::FigA2:
      req.kind = SchemeKind::DualAfter;
      req.n = 4.0;
      req.k2_prob = 10.0;
      break;
  }
  return req;
}

inline SchemeRequest figure_request(FigureId id, const FigureOverrides& o) {
  SchemeRequest req = figure_base(id);
  if (o.k) req.params.k = *o.k;
  if (o.alpha) req.params.alpha = *o.alpha;
  if (o.k1) req.params.k1 = *o.k1;
  if (o.k2) req.params.k2 = *o.k2;
  if (o.modulation) req.params.modulation = *o.modulation;
  if (o.p) req.p = *o.p;
  if (o.n) req.n = *o.n;
  if (o.k2_prob) req.k2_prob = *o.k2_prob;
  return req;
}

namespace detail {

// i/100 for i in [first, last]: decimal grid points without accumulated
// rounding.
inline std::vector<double> percent_grid(int first, int last) {
  std::vector<double> g;
  for (int i = first; i <= last; ++i) g.push_back(i / 100.0);
  return g;
}

inline std::vector<double> integer_grid(int first, int last) {
  std::vector<double> g;
  for (int i = first; i <= last; ++i) g.push_back(i);
  return g;
}

struct Column {
  std::string name;
  std::function<double(double)> value;
};

inline Table tabulate(const std::string& axis, const std::vector<double>& grid,
                      const std::vector<Column>& columns) {
  Table t;
  t.header.push_back(axis);
  for (const auto& c : columns) t.header.push_back(c.name);
  for (double x : grid) {
    std::vector<std::string> row{format_number(x)};
    for (const auto& c : columns) row.push_back(format_number(c.value(x)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline double derived_value(const SchemeRow& row, const std::string& name) {
  for (const auto& [key, value] : row.derived) {
    if (key == name) return value;
  }
  throw ValidationError("scheme row has no column " + name);
}

}  // namespace detail

/// Full-scaling and the x' = p^{1/α} x treatment used for the (0; 1/p)
/// lottery.
inline ScalingMode lottery_partial_scaling(double p, const ModelParams& params) {
  return FixedScaling{std::pow(p, -1.0 / params.alpha)};
}

inline Table make_figure(FigureId id, const FigureOverrides& o = {}) {
  using detail::Column;
  const SchemeRequest base = figure_request(id, o);
  auto with = [&base](SweepTarget target, double x) {
    SchemeRequest r = base;
    set_target(r, target, x);
    return r;
  };
  auto utility_at = [&](SweepTarget target) {
    return [&, target](double x) { return evaluate_scheme(with(target, x)).utility; };
  };

  switch (id) {
    case FigureId::Fig1:
      return detail::tabulate("p", detail::percent_grid(1, 99),
                              {{"U", utility_at(SweepTarget::P)},
                               {"expected_value", [&](double x) {
                                  return evaluate_scheme(with(SweepTarget::P, x)).expected_value;
                                }}});
    case FigureId::Fig3Left:
      return detail::tabulate(
          "n", detail::integer_grid(1, 50),
          {{"abs_delta",
            [&](double x) { return std::abs(evaluate_scheme(with(SweepTarget::N, x)).surprise); }},
           {"reference_slope_0.088", [](double x) { return 0.088 * x; }}});
    case FigureId::Fig3Right: {
      const double k_exp = o.k_exp.value_or(0.3);
      const double k_hypo = o.k_hypo.value_or(0.88);
      return detail::tabulate(
          "n", detail::integer_grid(1, 50),
          {{"U_as", utility_at(SweepTarget::N)},
           {"U_exponential", [k_exp](double x) { return std::exp(-k_exp * x); }},
           {"U_hyperbolic", [k_hypo](double x) { return 1.0 / (1.0 + k_hypo * x); }}});
    }
    case FigureId::FigA1: {
      const double k_exp = o.k_exp.value_or(0.2);
      return detail::tabulate(
          "n", detail::integer_grid(1, 50),
          {{"U_as", utility_at(SweepTarget::N)},
           {"U_exponential", [k_exp](double x) { return std::exp(-k_exp * x); }}});
    }
    case FigureId::Fig5Left:
    case FigureId::Fig5Right: {
      const SweepTarget axis = id == FigureId::Fig5Left ? SweepTarget::N : SweepTarget::PTr;
      auto ratio_for = [&, axis](double k_tr) {
        return [&, axis, k_tr](double x) {
          SchemeRequest r = with(axis, x);
          r.k_tr = k_tr;
          return detail::derived_value(evaluate_scheme(r), "ratio");
        };
      };
      const auto grid = id == FigureId::Fig5Left ? detail::integer_grid(2, 12)
                                                 : detail::percent_grid(5, 95);
      return detail::tabulate(to_string(axis), grid,
                              {{"ratio_ktr10", ratio_for(10.0)}, {"ratio_ktr0", ratio_for(0.0)}});
    }
    case FigureId::Fig7:
    case FigureId::FigA2: {
      auto d_for = [&](SchemeKind kind) {
        return [&, kind](double x) {
          SchemeRequest r = with(SweepTarget::PPr, x);
          r.kind = kind;
          return detail::derived_value(evaluate_scheme(r), "D");
        };
      };
      const auto grid = id == FigureId::Fig7 ? detail::percent_grid(30, 99)
                                             : detail::percent_grid(5, 99);
      return detail::tabulate("p_pr", grid,
                              {{"D_a_after", d_for(SchemeKind::DualAfter)},
                               {"D_a_before", d_for(SchemeKind::DualBefore)},
                               {"D_b", d_for(SchemeKind::DualB)}});
    }
    case FigureId::FigA3: {
      auto lottery = [&](double x, ScalingMode mode) {
        SchemeRequest r = base;
        r.hi = 1.0 / x;
        r.lo = 0.0;
        r.p = x;
        r.scaling = mode;
        return evaluate_scheme(r).utility;
      };
      return detail::tabulate(
          "p", detail::percent_grid(1, 50),
          {{"U_none", [&](double x) { return lottery(x, NoScaling{}); }},
           {"U_full", [&](double x) { return lottery(x, FullScaling{}); }},
           {"U_partial",
            [&](double x) { return lottery(x, lottery_partial_scaling(x, base.params)); }}});
    }
  }
  return {};
}

}  // namespace surprise
