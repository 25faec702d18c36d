#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "surprise/closed_form.hpp"
#include "surprise/tree.hpp"

namespace surprise {

enum class ScenarioVariant { Procrastination, Negotiation };

/// Structural description of a multi-step scenario.
///
/// Procrastination: at step i the task is completed with probability
/// step_probabilities[i], paying step_payoffs[i]; running past the horizon
/// pays final_payoff (the deadline loss).
///
/// Negotiation: at step i talks break down with probability
/// step_probabilities[i], paying step_payoffs[i]; surviving every step pays
/// final_payoff (the agreement).
struct ScenarioSpec {
  ScenarioVariant variant = ScenarioVariant::Negotiation;
  std::vector<double> step_probabilities;
  std::vector<double> step_payoffs;
  double final_payoff = 0.0;
  int horizon = 1;
};

namespace detail {

inline void require_open_unit(double p, const char* what) {
  require_finite(p, what);
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError(std::string(what) + " must lie in (0,1)");
  }
}

// steps levels of (p -> loss, 1-p -> continue), ending in `leaf`.
inline Node hazard_levels(double p, int steps, Node leaf, double loss = 0.0) {
  Node node = std::move(leaf);
  for (int i = 0; i < steps; ++i) {
    node = Node::internal({{p, Node::terminal(loss)}, {1.0 - p, std::move(node)}});
  }
  return node;
}

}  // namespace detail

/// (hi, p; lo, 1-p) resolved in one stage.
inline Node build_binary_gamble(double hi, double lo, double p) {
  require_finite(hi, "hi");
  require_finite(lo, "lo");
  detail::require_open_unit(p, "p");
  return Node::internal({{p, Node::terminal(hi)}, {1.0 - p, Node::terminal(lo)}});
}

/// Unit reward after n steps, each of which loses it with probability p.
inline Node build_hazard_chain(double p, int n) {
  detail::require_open_unit(p, "p");
  if (n < 1) throw ValidationError("hazard chain needs n >= 1");
  return detail::hazard_levels(p, n, Node::terminal(1.0));
}

/// n-1 hazard steps, then the timing node (weight K_tr): early reward now,
/// or two more hazard steps before a late reward.
inline Node build_timing_risk(const TimingRiskSpec& spec) {
  validate(spec);
  Node late = detail::hazard_levels(spec.p, 2, Node::terminal(1.0));
  Node timing = Node::internal(
      {{spec.p_tr, Node::terminal(1.0)}, {1.0 - spec.p_tr, std::move(late)}},
      spec.k_tr);
  return detail::hazard_levels(spec.p, spec.n - 1, std::move(timing));
}

/// Hazard chain and explicit gamble resolved as separate stages, gamble
/// last (SeparateAfter) or first (SeparateBefore).
inline Node build_dual_scheme_a(const DualRiskSpec& spec) {
  validate(spec);
  if (spec.scheme == DualScheme::SeparateAfter) {
    Node gamble = build_binary_gamble(1.0, 0.0, spec.p_pr);
    return detail::hazard_levels(spec.p, spec.n, std::move(gamble));
  }
  if (spec.scheme == DualScheme::SeparateBefore) {
    return Node::internal({{spec.p_pr, build_hazard_chain(spec.p, spec.n)},
                           {1.0 - spec.p_pr, Node::terminal(0.0)}});
  }
  throw ValidationError("scheme A builder needs a separate-resolution scheme");
}

/// Hazard chain at the inflated hazard 1 - p_pr^{1/n}(1-p).
inline Node build_dual_scheme_b(const DualRiskSpec& spec) {
  DualRiskSpec s = spec;
  s.scheme = DualScheme::Incorporated;
  validate(s);
  return build_hazard_chain(inflated_hazard(s.p, s.n, s.p_pr), s.n);
}

/// Dispatches to scheme A or B according to spec.scheme.
inline Node build_dual(const DualRiskSpec& spec) {
  return spec.scheme == DualScheme::Incorporated ? build_dual_scheme_b(spec)
                                                 : build_dual_scheme_a(spec);
}

inline Node build_scenario(const ScenarioSpec& spec) {
  if (spec.horizon < 1) throw ValidationError("horizon must be >= 1");
  const auto h = static_cast<std::size_t>(spec.horizon);
  if (spec.step_probabilities.size() != h || spec.step_payoffs.size() != h) {
    throw ValidationError("scenario lists must have one entry per step");
  }
  require_finite(spec.final_payoff, "final payoff");
  for (std::size_t i = 0; i < h; ++i) {
    detail::require_open_unit(spec.step_probabilities[i], "step probability");
    require_finite(spec.step_payoffs[i], "step payoff");
  }
  // Both variants share the chain shape; they differ only in what the
  // branch that leaves the chain means.
  Node node = Node::terminal(spec.final_payoff);
  for (std::size_t i = h; i-- > 0;) {
    const double exit = spec.step_probabilities[i];
    node = Node::internal({{exit, Node::terminal(spec.step_payoffs[i])},
                           {1.0 - exit, std::move(node)}});
  }
  return node;
}

}  // namespace surprise
