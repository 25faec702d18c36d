#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace surprise {

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// How a total surprise modulates the expected value.
///
/// Both modes use e^{k1 Δ} for non-negative surprise. They differ on the
/// negative side: Hyperbolic uses 1/(1 + k2|Δ|), ExponentialNegative uses
/// e^{-k2|Δ|}.
enum class Modulation { Hyperbolic, ExponentialNegative };

struct ModelParams {
  double k = 3.0;      // weight on negative expectation errors, > 1
  double alpha = 1.6;  // convexity exponent of the kernel, > 1
  double k1 = 2.0;     // gain on positive surprise
  double k2 = 2.0;     // gain on negative surprise
  Modulation modulation = Modulation::Hyperbolic;
};

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw ValidationError(std::string(what) + " must be finite");
  }
}

inline void validate(const ModelParams& params) {
  require_finite(params.k, "k");
  require_finite(params.alpha, "alpha");
  require_finite(params.k1, "k1");
  require_finite(params.k2, "k2");
  if (!(params.k > 1.0)) throw ValidationError("k must be > 1");
  if (!(params.alpha > 1.0)) throw ValidationError("alpha must be > 1");
  if (params.k1 < 0.0) throw ValidationError("k1 must be >= 0");
  if (params.k2 < 0.0) throw ValidationError("k2 must be >= 0");
}

/// Convex kernel applied to an expectation error z: z^alpha above zero and
/// -k |z|^alpha below.
inline double surprise_kernel(double z, const ModelParams& params) {
  require_finite(z, "expectation error");
  if (z >= 0.0) return std::pow(z, params.alpha);
  return -params.k * std::pow(-z, params.alpha);
}

/// Multiplicative correction g(delta). Strictly positive, g(0) = 1.
inline double surprise_modulation(double delta, const ModelParams& params) {
  require_finite(delta, "surprise");
  if (delta >= 0.0) return std::exp(params.k1 * delta);
  const double magnitude = -delta;
  switch (params.modulation) {
    case Modulation::Hyperbolic:
      return 1.0 / (1.0 + params.k2 * magnitude);
    case Modulation::ExponentialNegative:
      return std::exp(-params.k2 * magnitude);
  }
  return 1.0;  // unreachable
}

/// U = U0 g(delta). Assumes outcomes have already been scaled so that U0 is
/// non-negative; a zero or negative U0 is accepted and gives the degenerate
/// multiplicative behaviour.
inline double utility(double expected, double delta, const ModelParams& params) {
  require_finite(expected, "expected value");
  return expected * surprise_modulation(delta, params);
}

inline const char* to_string(Modulation m) {
  return m == Modulation::Hyperbolic ? "hyperbolic" : "exponential";
}

inline Modulation parse_modulation(const std::string& name) {
  if (name == "hyperbolic") return Modulation::Hyperbolic;
  if (name == "exponential" || name == "exponential-negative") {
    return Modulation::ExponentialNegative;
  }
  throw ValidationError("unknown modulation '" + name + "'");
}

}  // namespace surprise
