#pragma once

// Test-only reference implementations. The trajectory oracle works from the
// flat list of root-to-leaf paths and never looks at per-node expectations,
// so it is independent of the tree evaluator it checks.

#include <sys/wait.h>

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "surprise/surprise.hpp"

namespace surprise::testing {

struct Trajectory {
  std::vector<std::size_t> choices;  // branch index taken at each depth
  std::vector<double> weights;       // surprise weight of the node left at each depth
  double probability = 1.0;
  double payoff = 0.0;
};

inline void enumerate(const Node& node, Trajectory current, std::vector<Trajectory>& out) {
  if (node.is_terminal()) {
    current.payoff = node.as_terminal().payoff;
    out.push_back(std::move(current));
    return;
  }
  const Internal& in = node.as_internal();
  for (std::size_t i = 0; i < in.branches.size(); ++i) {
    Trajectory next = current;
    next.choices.push_back(i);
    next.weights.push_back(in.surprise_weight);
    next.probability *= in.branches[i].probability;
    enumerate(in.branches[i].child, std::move(next), out);
  }
}

inline std::vector<Trajectory> trajectories(const Node& root) {
  std::vector<Trajectory> out;
  enumerate(root, {}, out);
  return out;
}

/// Δ_t = E[w · δ(E(x|S(t)) - E(x|S(t-1)))], averaged over full trajectories.
inline std::vector<double> trajectory_stage_surprises(const Node& root,
                                                      const ModelParams& params) {
  const auto paths = trajectories(root);
  std::size_t max_len = 0;
  for (const auto& t : paths) max_len = std::max(max_len, t.choices.size());

  // Conditional expectation given the first `len` choices.
  auto conditional = [&paths](const std::vector<std::size_t>& prefix) {
    double mass = 0.0;
    double value = 0.0;
    for (const auto& t : paths) {
      if (t.choices.size() < prefix.size()) continue;
      if (!std::equal(prefix.begin(), prefix.end(), t.choices.begin())) continue;
      mass += t.probability;
      value += t.probability * t.payoff;
    }
    return value / mass;
  };

  std::vector<double> stages(max_len, 0.0);
  for (std::size_t stage = 1; stage <= max_len; ++stage) {
    for (const auto& t : paths) {
      if (t.choices.size() < stage) continue;
      const std::vector<std::size_t> before(t.choices.begin(), t.choices.begin() + (stage - 1));
      const std::vector<std::size_t> after(t.choices.begin(), t.choices.begin() + stage);
      const double z = conditional(after) - conditional(before);
      stages[stage - 1] += t.probability * t.weights[stage - 1] * surprise_kernel(z, params);
    }
  }
  return stages;
}

/// Random finite tree: up to max_depth stages, 1-3 branches per node,
/// payoffs in [-5, 5], occasional non-unit surprise weights.
inline Node random_tree(std::mt19937_64& rng, int max_depth, bool with_weights = true) {
  std::uniform_real_distribution<double> payoff(-5.0, 5.0);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::uniform_int_distribution<int> fanout(1, 3);
  if (max_depth == 0 || (max_depth < 4 && unit(rng) < 0.25)) {
    return Node::terminal(payoff(rng));
  }
  const int count = fanout(rng);
  std::vector<double> raw(static_cast<std::size_t>(count));
  double total = 0.0;
  for (double& r : raw) {
    r = unit(rng);
    total += r;
  }
  std::vector<Branch> branches;
  double assigned = 0.0;
  for (int i = 0; i < count; ++i) {
    // The last branch takes the remainder so the sum is 1 to rounding.
    const double p = i + 1 == count ? 1.0 - assigned : raw[static_cast<std::size_t>(i)] / total;
    assigned += p;
    branches.push_back({p, random_tree(rng, max_depth - 1, with_weights)});
  }
  const double weight = with_weights && unit(rng) < 0.3 ? 3.0 * unit(rng) : 1.0;
  return Node::internal(std::move(branches), weight);
}

/// Runs a command and captures stdout; returns the exit status.
inline int run_command(const std::string& command, std::string& output) {
  output.clear();
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  const int status = ::pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace surprise::testing
