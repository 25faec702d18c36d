// Prints tree-evaluated and closed-form surprises side by side for the
// hazard chain, the timing lottery and the three dual-risk schemes.

#include <cstdio>

#include "surprise/surprise.hpp"

int main() {
  using namespace surprise;
  const ModelParams params{3.0, 1.6, 2.0, 10.0, Modulation::Hyperbolic};

  std::printf("%-16s %4s %22s %22s\n", "scheme", "n", "tree", "closed form");
  for (int n : {1, 4, 12}) {
    const double tree = evaluate(build_hazard_chain(0.03, n), params).total_surprise;
    const double closed = hazard_total_surprise({0.03, static_cast<double>(n)}, params);
    std::printf("%-16s %4d %22.15f %22.15f\n", "hazard", n, tree, closed);
  }
  for (int n : {2, 4, 12}) {
    const TimingRiskSpec spec{0.03, n, 0.5, 10.0};
    const double tree = evaluate(build_timing_risk(spec), params).total_surprise;
    std::printf("%-16s %4d %22.15f %22.15f\n", "timing K_tr=10", n, tree,
                timing_components(spec, params).delta_total);
  }
  for (DualScheme s : {DualScheme::SeparateAfter, DualScheme::SeparateBefore,
                       DualScheme::Incorporated}) {
    const DualRiskSpec spec{0.03, 4, 0.7, s, 2.0};
    const double tree = evaluate(build_dual(spec), params).total_surprise;
    std::printf("%-16s %4d %22.15f %22.15f   D = %.6f\n", to_string(s), 4, tree,
                dual_surprise(spec, params), discount_ratio(spec, params));
  }
  return 0;
}
