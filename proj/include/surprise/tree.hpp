#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "surprise/model.hpp"

namespace surprise {

/// Branch probabilities of an internal node must sum to one within this.
inline constexpr double kProbabilityTolerance = 1e-12;

struct Branch;

struct Terminal {
  double payoff = 0.0;
};

struct Internal {
  std::vector<Branch> branches;
  /// Multiplies the surprise generated at this node only.
  double surprise_weight = 1.0;
};

/// A node of an outcome-resolution tree. Each level of the tree is one stage
/// of mental outcome resolution; a node at depth d stands for the class of
/// trajectories S(d) that reach it.
class Node {
 public:
  Node() : value_(Terminal{}) {}
  Node(Terminal t) : value_(t) {}
  Node(Internal i) : value_(std::move(i)) {}

  static Node terminal(double payoff) { return Node(Terminal{payoff}); }
  static Node internal(std::vector<Branch> branches, double weight = 1.0);

  bool is_terminal() const { return std::holds_alternative<Terminal>(value_); }
  const Terminal& as_terminal() const { return std::get<Terminal>(value_); }
  const Internal& as_internal() const { return std::get<Internal>(value_); }
  Internal& as_internal() { return std::get<Internal>(value_); }

 private:
  std::variant<Terminal, Internal> value_;
};

struct Branch {
  double probability = 1.0;
  Node child;
};

inline Node Node::internal(std::vector<Branch> branches, double weight) {
  return Node(Internal{std::move(branches), weight});
}

struct EvaluationResult {
  double expected_value = 0.0;
  std::vector<double> stage_surprises;  // index 0 holds stage 1
  double total_surprise = 0.0;
  double utility = 0.0;
};

/// Surprise generated by a single internal node, already multiplied by its
/// reach probability and weight.
struct NodeContribution {
  std::string path;
  std::size_t depth = 0;  // depth of the node; it contributes to stage depth+1
  double surprise = 0.0;
};

namespace detail {

inline std::string child_path(const std::string& parent, std::size_t index) {
  return parent + "/" + std::to_string(index);
}

inline void check_node(const Node& node, const std::string& path) {
  if (node.is_terminal()) {
    if (!std::isfinite(node.as_terminal().payoff)) {
      throw ValidationError("non-finite payoff at " + path);
    }
    return;
  }
  const Internal& in = node.as_internal();
  if (in.branches.empty()) {
    throw ValidationError("internal node without branches at " + path);
  }
  if (!std::isfinite(in.surprise_weight) || in.surprise_weight < 0.0) {
    throw ValidationError("surprise weight must be finite and >= 0 at " + path);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < in.branches.size(); ++i) {
    const double p = in.branches[i].probability;
    if (!std::isfinite(p) || !(p > 0.0) || p > 1.0) {
      throw ValidationError("branch probability outside (0,1] at " +
                            child_path(path, i));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw ValidationError("branch probabilities sum to " + std::to_string(sum) +
                          " at " + path);
  }
}

inline double expected_value_at(const Node& node, const std::string& path) {
  check_node(node, path);
  if (node.is_terminal()) return node.as_terminal().payoff;
  double e = 0.0;
  const auto& branches = node.as_internal().branches;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    e += branches[i].probability *
         expected_value_at(branches[i].child, child_path(path, i));
  }
  return e;
}

// Post-order walk: returns E(node) and appends the node's contribution after
// its children.
inline double collect_contributions(const Node& node, const std::string& path,
                                    std::size_t depth, double reach,
                                    const ModelParams& params,
                                    std::vector<NodeContribution>& out) {
  check_node(node, path);
  if (node.is_terminal()) return node.as_terminal().payoff;
  const Internal& in = node.as_internal();
  std::vector<double> child_values;
  child_values.reserve(in.branches.size());
  double e = 0.0;
  for (std::size_t i = 0; i < in.branches.size(); ++i) {
    const Branch& b = in.branches[i];
    const double v = collect_contributions(b.child, child_path(path, i),
                                           depth + 1, reach * b.probability,
                                           params, out);
    child_values.push_back(v);
    e += b.probability * v;
  }
  double local = 0.0;
  for (std::size_t i = 0; i < in.branches.size(); ++i) {
    local += in.branches[i].probability *
             surprise_kernel(child_values[i] - e, params);
  }
  out.push_back({path, depth, reach * in.surprise_weight * local});
  return e;
}

}  // namespace detail

/// Probability-weighted mean payoff. Throws ValidationError naming the first
/// offending node if the tree is malformed.
inline double expected_value(const Node& node) {
  return detail::expected_value_at(node, "root");
}

/// Per-stage surprises Δ_t, computed level by level. Stage t collects every
/// internal node at depth t-1, weighted by the probability of reaching it.
inline std::vector<double> stage_surprises(const Node& node,
                                           const ModelParams& params) {
  struct Frontier {
    const Node* node;
    double reach;
    std::string path;
  };
  std::vector<double> stages;
  std::vector<Frontier> level{{&node, 1.0, "root"}};
  while (!level.empty()) {
    std::vector<Frontier> next;
    double stage = 0.0;
    bool any_internal = false;
    for (const Frontier& f : level) {
      const double e = detail::expected_value_at(*f.node, f.path);
      if (f.node->is_terminal()) continue;
      any_internal = true;
      const Internal& in = f.node->as_internal();
      double local = 0.0;
      for (std::size_t i = 0; i < in.branches.size(); ++i) {
        const Branch& b = in.branches[i];
        const std::string cp = detail::child_path(f.path, i);
        local += b.probability *
                 surprise_kernel(detail::expected_value_at(b.child, cp) - e, params);
        next.push_back({&b.child, f.reach * b.probability, cp});
      }
      stage += f.reach * in.surprise_weight * local;
    }
    if (!any_internal) break;
    stages.push_back(stage);
    level = std::move(next);
  }
  return stages;
}

/// Per-node surprise contributions gathered by a depth-first walk. Summing
/// them by depth reproduces stage_surprises.
inline std::vector<NodeContribution> node_contributions(const Node& node,
                                                        const ModelParams& params) {
  std::vector<NodeContribution> out;
  detail::collect_contributions(node, "root", 0, 1.0, params, out);
  return out;
}

inline EvaluationResult evaluate(const Node& node, const ModelParams& params) {
  EvaluationResult r;
  r.expected_value = expected_value(node);
  r.stage_surprises = stage_surprises(node, params);
  for (double s : r.stage_surprises) r.total_surprise += s;
  r.utility = utility(r.expected_value, r.total_surprise, params);
  return r;
}

/// Removes internal nodes that have a single branch of probability one.
/// Such nodes contribute δ(0) = 0, so the total surprise is unchanged.
inline Node collapse_deterministic(const Node& node) {
  if (node.is_terminal()) return node;
  const Internal& in = node.as_internal();
  if (in.branches.size() == 1 &&
      std::abs(in.branches.front().probability - 1.0) <= kProbabilityTolerance) {
    return collapse_deterministic(in.branches.front().child);
  }
  Internal out;
  out.surprise_weight = in.surprise_weight;
  out.branches.reserve(in.branches.size());
  for (const Branch& b : in.branches) {
    out.branches.push_back({b.probability, collapse_deterministic(b.child)});
  }
  return Node(std::move(out));
}

struct NormalizedTree {
  Node tree;
  /// Paths of internal nodes whose probabilities were rescaled to sum to one.
  std::vector<std::string> renormalized;
};

/// Validates the tree and divides each branch set by its sum. Sums within
/// kProbabilityTolerance are accepted and recorded; anything else throws.
inline NormalizedTree normalize(const Node& node) {
  NormalizedTree result;
  std::function<Node(const Node&, const std::string&)> walk =
      [&](const Node& n, const std::string& path) -> Node {
    detail::check_node(n, path);
    if (n.is_terminal()) return n;
    const Internal& in = n.as_internal();
    double sum = 0.0;
    for (const Branch& b : in.branches) sum += b.probability;
    Internal out;
    out.surprise_weight = in.surprise_weight;
    for (std::size_t i = 0; i < in.branches.size(); ++i) {
      double p = in.branches[i].probability;
      if (sum != 1.0) p /= sum;
      out.branches.push_back({p, walk(in.branches[i].child,
                                      detail::child_path(path, i))});
    }
    if (sum != 1.0) result.renormalized.push_back(path);
    return Node(std::move(out));
  };
  result.tree = walk(node, "root");
  return result;
}

/// Number of resolution stages (0 for a bare terminal).
inline std::size_t depth(const Node& node) {
  if (node.is_terminal()) return 0;
  std::size_t d = 0;
  for (const Branch& b : node.as_internal().branches) {
    d = std::max(d, depth(b.child));
  }
  return d + 1;
}

inline void collect_payoffs(const Node& node, std::vector<double>& out) {
  if (node.is_terminal()) {
    out.push_back(node.as_terminal().payoff);
    return;
  }
  for (const Branch& b : node.as_internal().branches) collect_payoffs(b.child, out);
}

inline std::vector<double> terminal_payoffs(const Node& node) {
  std::vector<double> out;
  collect_payoffs(node, out);
  return out;
}

/// Copy of the tree with every terminal payoff replaced by f(payoff).
template <typename F>
Node map_payoffs(const Node& node, F&& f) {
  if (node.is_terminal()) return Node::terminal(f(node.as_terminal().payoff));
  const Internal& in = node.as_internal();
  Internal out;
  out.surprise_weight = in.surprise_weight;
  out.branches.reserve(in.branches.size());
  for (const Branch& b : in.branches) {
    out.branches.push_back({b.probability, map_payoffs(b.child, f)});
  }
  return Node(std::move(out));
}

/// Largest |Σ_b p_b (E(child_b) - E(node))| over all internal nodes.
inline double max_martingale_residual(const Node& node) {
  if (node.is_terminal()) return 0.0;
  const Internal& in = node.as_internal();
  const double e = expected_value(node);
  double residual = 0.0;
  double worst = 0.0;
  for (const Branch& b : in.branches) {
    residual += b.probability * (expected_value(b.child) - e);
    worst = std::max(worst, max_martingale_residual(b.child));
  }
  return std::max(worst, std::abs(residual));
}

}  // namespace surprise
