#pragma once

// Analytic surprises for the hazard chain, the two-timing lottery and the
// dual-risk schemes. Every expression here has a tree counterpart in
// schemes.hpp; the tests hold the two against each other.

#include <cmath>
#include <string>

#include "surprise/model.hpp"

namespace surprise {

/// Constant per-step hazard p over n steps. n may be real for the
/// continuous extension of the total surprise.
struct HazardSpec {
  double p = 0.03;
  double n = 1.0;
};

/// Reward arrives at step n-1 with probability p_tr, otherwise at n+1.
struct TimingRiskSpec {
  double p = 0.03;
  int n = 4;
  double p_tr = 0.5;
  double k_tr = 10.0;  // weight on the timing-resolution surprise
};

enum class DualScheme {
  SeparateAfter,   // hazard chain first, then the explicit gamble
  SeparateBefore,  // explicit gamble first, then the hazard chain
  Incorporated,    // gamble folded into an inflated per-step hazard
};

struct DualRiskSpec {
  double p = 0.03;
  int n = 4;
  double p_pr = 0.7;
  DualScheme scheme = DualScheme::SeparateAfter;
  double k2_prob = 2.0;  // negative-surprise gain for the gamble-only utility
};

struct TimingComponents {
  double delta_common = 0.0;  // hazard stages before the timing is known
  double delta_tr0 = 0.0;     // unweighted surprise of the timing node
  double delta_late = 0.0;    // the two extra hazard stages of a late reward
  double delta_total = 0.0;   // common + k_tr * tr0 + late
  double e_tr = 0.0;
  double e_fix = 0.0;
};

inline void validate(const HazardSpec& spec) {
  require_finite(spec.p, "p");
  require_finite(spec.n, "n");
  if (!(spec.p > 0.0 && spec.p < 1.0)) throw ValidationError("p must lie in (0,1)");
  if (spec.n < 0.0) throw ValidationError("n must be >= 0");
}

inline void validate(const TimingRiskSpec& spec) {
  validate(HazardSpec{spec.p, static_cast<double>(spec.n)});
  require_finite(spec.p_tr, "p_tr");
  require_finite(spec.k_tr, "K_tr");
  if (spec.n < 2) throw ValidationError("timing risk needs n >= 2");
  if (!(spec.p_tr > 0.0 && spec.p_tr < 1.0)) {
    throw ValidationError("p_tr must lie in (0,1)");
  }
  if (spec.k_tr < 0.0) throw ValidationError("K_tr must be >= 0");
}

/// p' = 1 - p_pr^{1/n} (1 - p): the per-step hazard that absorbs the explicit
/// success probability.
inline double inflated_hazard(double p, int n, double p_pr) {
  return 1.0 - std::pow(p_pr, 1.0 / n) * (1.0 - p);
}

inline void validate(const DualRiskSpec& spec) {
  validate(HazardSpec{spec.p, static_cast<double>(spec.n)});
  require_finite(spec.p_pr, "p_pr");
  require_finite(spec.k2_prob, "k2_prob");
  if (spec.n < 1) throw ValidationError("dual risk needs n >= 1");
  if (!(spec.p_pr > 0.0 && spec.p_pr < 1.0)) {
    throw ValidationError("p_pr must lie in (0,1)");
  }
  if (spec.k2_prob < 0.0) throw ValidationError("k2_prob must be >= 0");
  if (spec.scheme == DualScheme::Incorporated) {
    const double inflated = inflated_hazard(spec.p, spec.n, spec.p_pr);
    if (!(inflated > 0.0 && inflated < 1.0)) {
      throw ValidationError("inflated hazard must lie in (0,1)");
    }
  }
}

/// C = k p - p^α q^{1-α}. Positive unless p is large.
inline double hazard_constant(double p, const ModelParams& params) {
  return params.k * p - std::pow(p, params.alpha) * std::pow(1.0 - p, 1.0 - params.alpha);
}

/// Surprise generated in step t of an n-step hazard chain, 1 <= t <= n.
inline double hazard_stage_surprise(const HazardSpec& spec, int t,
                                    const ModelParams& params) {
  validate(spec);
  if (t < 1 || static_cast<double>(t) > spec.n) {
    throw ValidationError("stage " + std::to_string(t) + " outside [1, n]");
  }
  const double q = 1.0 - spec.p;
  return std::pow(q, t - 1) *
         (-hazard_constant(spec.p, params) *
          std::pow(q, params.alpha * (spec.n - t + 1)));
}

/// Total surprise of the hazard chain, summed in closed form:
/// -C q^{n+α'} (1 - q^{nα'}) / (1 - q^{α'}), α' = α - 1.
inline double hazard_total_surprise(const HazardSpec& spec, const ModelParams& params) {
  validate(spec);
  const double q = 1.0 - spec.p;
  const double ap = params.alpha - 1.0;
  return -hazard_constant(spec.p, params) * std::pow(q, spec.n + ap) *
         (1.0 - std::pow(q, spec.n * ap)) / (1.0 - std::pow(q, ap));
}

/// Utility of a unit reward after n hazard steps: q^n g(Δ).
inline double discount_factor(const HazardSpec& spec, const ModelParams& params) {
  const double delta = hazard_total_surprise(spec, params);
  return utility(std::pow(1.0 - spec.p, spec.n), delta, params);
}

/// Surprise of the single-stage gamble (1, p; 0, 1-p). Zero at the
/// degenerate endpoints.
inline double prob_only_surprise(double p_pr, const ModelParams& params) {
  require_finite(p_pr, "p_pr");
  if (p_pr < 0.0 || p_pr > 1.0) throw ValidationError("p_pr must lie in [0,1]");
  if (p_pr == 0.0 || p_pr == 1.0) return 0.0;
  const double a = params.alpha;
  return p_pr * std::pow(1.0 - p_pr, a) - params.k * (1.0 - p_pr) * std::pow(p_pr, a);
}

/// Components of the timing-lottery surprise. After n-1 hazard steps the
/// expected value is r = p_tr + (1-p_tr) q², so the common stages are those
/// of an (n-1)-step chain scaled by r^α.
inline TimingComponents timing_components(const TimingRiskSpec& spec,
                                          const ModelParams& params) {
  validate(spec);
  const double p = spec.p;
  const double q = 1.0 - p;
  const double a = params.alpha;
  const double ap = a - 1.0;
  const int n = spec.n;
  const double ptr = spec.p_tr;
  const double c = hazard_constant(p, params);

  TimingComponents out;
  const double e_scale = std::pow((q * q * (1.0 - ptr) + ptr) / q, a);
  out.delta_common = -c * e_scale * std::pow(q, n + ap) *
                     ((1.0 - std::pow(q, n * ap)) / (1.0 - std::pow(q, ap)) - 1.0);
  out.delta_tr0 = std::pow(q, n - 1) * std::pow(1.0 - q * q, a) *
                  prob_only_surprise(ptr, params);
  out.delta_late = p * std::pow(q, n + a) * (1.0 - ptr) *
                   (std::pow(p, a - 1.0) * (1.0 + std::pow(q, 1.0 - a)) -
                    params.k * (1.0 + std::pow(q, a - 1.0)));
  out.delta_total = out.delta_common + spec.k_tr * out.delta_tr0 + out.delta_late;
  out.e_tr = ptr * std::pow(q, n - 1) + (1.0 - ptr) * std::pow(q, n + 1);
  out.e_fix = std::pow(q, ptr * (n - 1) + (1.0 - ptr) * (n + 1));
  return out;
}

/// Mean delay of the timing lottery, p_tr (n-1) + (1-p_tr)(n+1).
inline double mean_delay(const TimingRiskSpec& spec) {
  return spec.p_tr * (spec.n - 1) + (1.0 - spec.p_tr) * (spec.n + 1);
}

/// U_tr / U_fix, where U_fix is the discount factor at the (generally
/// non-integer) mean delay.
inline double timing_ratio(const TimingRiskSpec& spec, const ModelParams& params) {
  const TimingComponents c = timing_components(spec, params);
  const double u_tr = utility(c.e_tr, c.delta_total, params);
  const double u_fix = discount_factor(HazardSpec{spec.p, mean_delay(spec)}, params);
  return u_tr / u_fix;
}

/// Total surprise of a dual-risk option under the chosen branching scheme.
inline double dual_surprise(const DualRiskSpec& spec, const ModelParams& params) {
  validate(spec);
  const double q = 1.0 - spec.p;
  const double ap = params.alpha - 1.0;
  const double n = spec.n;
  switch (spec.scheme) {
    case DualScheme::SeparateAfter:
    case DualScheme::SeparateBefore: {
      // Hazard stages of a chain whose reward is worth p_pr.
      const double hazard_part =
          std::pow(spec.p_pr, params.alpha) *
          hazard_total_surprise(HazardSpec{spec.p, n}, params);
      // The gamble, reached with probability q^n.
      const double gamble_part = std::pow(q, n) * prob_only_surprise(spec.p_pr, params);
      if (spec.scheme == DualScheme::SeparateAfter) return hazard_part + gamble_part;
      // Resolving the gamble first: the chain is reached with probability
      // p_pr and pays 1; the gamble's jumps shrink to q^n of their size.
      return std::pow(spec.p_pr, -ap) * hazard_part +
             std::pow(q, n * ap) * gamble_part;
    }
    case DualScheme::Incorporated:
      return hazard_total_surprise(
          HazardSpec{inflated_hazard(spec.p, spec.n, spec.p_pr), n}, params);
  }
  return 0.0;  // unreachable
}

/// D = U_pt / (U_p U_t). U_p uses k2_prob in place of k2.
inline double discount_ratio(const DualRiskSpec& spec, const ModelParams& params) {
  const double q = 1.0 - spec.p;
  const double u_pt = utility(spec.p_pr * std::pow(q, spec.n),
                              dual_surprise(spec, params), params);
  ModelParams prob_params = params;
  prob_params.k2 = spec.k2_prob;
  const double u_p = utility(spec.p_pr, prob_only_surprise(spec.p_pr, params),
                             prob_params);
  const double u_t = discount_factor(HazardSpec{spec.p, static_cast<double>(spec.n)},
                                     params);
  return u_pt / (u_p * u_t);
}

inline const char* to_string(DualScheme s) {
  switch (s) {
    case DualScheme::SeparateAfter: return "dual-a-after";
    case DualScheme::SeparateBefore: return "dual-a-before";
    case DualScheme::Incorporated: return "dual-b";
  }
  return "";
}

}  // namespace surprise
