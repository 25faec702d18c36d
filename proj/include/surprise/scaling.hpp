#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "surprise/tree.hpp"

namespace surprise {

/// x' = (x - offset) / scale on payoffs; U = scale * U' + offset on utilities.
struct AffineTransform {
  double scale = 1.0;
  double offset = 0.0;

  double forward(double x) const { return (x - offset) / scale; }
  double inverse(double u) const { return scale * u + offset; }
  bool is_identity() const { return scale == 1.0 && offset == 0.0; }
};

struct NoScaling {};
/// Payoffs mapped onto [0, 1].
struct FullScaling {};
/// Payoffs mapped onto [0, (max-min)^{1-gamma}]: gamma = 1 is full scaling,
/// gamma -> 0 leaves the range untouched.
struct PartialScaling {
  double gamma = 1.0;
};
/// Explicit transform {scale, 0}, for problem-specific treatments.
struct FixedScaling {
  double scale = 1.0;
};

using ScalingMode = std::variant<NoScaling, FullScaling, PartialScaling, FixedScaling>;

inline void validate(const AffineTransform& t) {
  require_finite(t.scale, "scale");
  require_finite(t.offset, "offset");
  if (!(t.scale > 0.0)) throw ValidationError("scale must be > 0");
}

inline AffineTransform derive_transform(const Node& tree, const ScalingMode& mode) {
  if (std::holds_alternative<NoScaling>(mode)) return {};
  if (const auto* fixed = std::get_if<FixedScaling>(&mode)) {
    AffineTransform t{fixed->scale, 0.0};
    validate(t);
    return t;
  }
  double gamma = 1.0;
  if (const auto* partial = std::get_if<PartialScaling>(&mode)) {
    gamma = partial->gamma;
    require_finite(gamma, "gamma");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
  }
  const std::vector<double> payoffs = terminal_payoffs(tree);
  const auto [lo, hi] = std::minmax_element(payoffs.begin(), payoffs.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return {};  // single payoff: nothing to normalize
  return AffineTransform{gamma == 1.0 ? range : std::pow(range, gamma), *lo};
}

inline Node apply(const AffineTransform& t, const Node& tree) {
  if (t.is_identity()) return tree;
  return map_payoffs(tree, [&t](double x) { return t.forward(x); });
}

/// Evaluates the tree on transformed payoffs and maps the utility back.
inline double evaluate_scaled(const Node& tree, const ModelParams& params,
                              const ScalingMode& mode) {
  const AffineTransform t = derive_transform(tree, mode);
  if (t.is_identity()) return evaluate(tree, params).utility;
  return t.inverse(evaluate(apply(t, tree), params).utility);
}

/// Parses none | full | partial:<gamma> | scale:<s>.
inline ScalingMode parse_scaling(const std::string& text) {
  if (text == "none") return NoScaling{};
  if (text == "full") return FullScaling{};
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::exception&) {
      throw ValidationError("bad number in scaling '" + text + "'");
    }
    if (head == "partial") {
      if (!(value > 0.0 && value <= 1.0)) throw ValidationError("gamma must lie in (0,1]");
      return PartialScaling{value};
    }
    if (head == "scale") {
      if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError("scale must be > 0");
      return FixedScaling{value};
    }
  }
  throw ValidationError("unknown scaling '" + text + "'");
}

inline std::string to_string(const ScalingMode& mode) {
  struct Visitor {
    std::string operator()(NoScaling) const { return "none"; }
    std::string operator()(FullScaling) const { return "full"; }
    std::string operator()(PartialScaling s) const {
      return "partial:" + std::to_string(s.gamma);
    }
    std::string operator()(FixedScaling s) const {
      return "scale:" + std::to_string(s.scale);
    }
  };
  return std::visit(Visitor{}, mode);
}

}  // namespace surprise
