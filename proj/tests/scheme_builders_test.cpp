#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "surprise/scaling.hpp"
#include "surprise/schemes.hpp"

namespace {

using namespace surprise;

ModelParams fig3() { return ModelParams{3.0, 1.6, 2.0, 10.0, Modulation::Hyperbolic}; }

const std::vector<double> kHazards{0.01, 0.03, 0.1, 0.3};
const std::vector<double> kProbs{0.1, 0.3, 0.5, 0.7, 0.9};

TEST(BuildBinaryGamble, Structure) {
  const Node g = build_binary_gamble(2.0, -1.0, 0.25);
  ASSERT_FALSE(g.is_terminal());
  const auto& b = g.as_internal().branches;
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].probability, 0.25);
  EXPECT_EQ(b[0].child.as_terminal().payoff, 2.0);
  EXPECT_EQ(b[1].child.as_terminal().payoff, -1.0);
  EXPECT_NEAR(expected_value(g), 0.25 * 2.0 - 0.75, 1e-15);
  EXPECT_THROW(build_binary_gamble(1.0, 0.0, 0.0), ValidationError);
  EXPECT_THROW(build_binary_gamble(1.0, 0.0, 1.0), ValidationError);
  EXPECT_THROW(build_binary_gamble(NAN, 0.0, 0.5), ValidationError);
}

TEST(BuildHazardChain, ExpectedValueAndDepth) {
  for (double p : kHazards) {
    for (int n = 1; n <= 12; ++n) {
      const Node chain = build_hazard_chain(p, n);
      EXPECT_EQ(depth(chain), static_cast<std::size_t>(n));
      EXPECT_NEAR(expected_value(chain), std::pow(1.0 - p, n), 1e-12);
      EXPECT_LE(max_martingale_residual(chain), 1e-12);
    }
  }
  EXPECT_THROW(build_hazard_chain(0.03, 0), ValidationError);
  EXPECT_THROW(build_hazard_chain(-0.1, 3), ValidationError);
}

TEST(BuildTimingRisk, ExpectedValueAndShape) {
  for (double p : kHazards) {
    for (int n = 2; n <= 12; ++n) {
      for (double ptr : kProbs) {
        const TimingRiskSpec spec{p, n, ptr, 10.0};
        const Node tree = build_timing_risk(spec);
        const double q = 1.0 - p;
        EXPECT_NEAR(expected_value(tree),
                    ptr * std::pow(q, n - 1) + (1.0 - ptr) * std::pow(q, n + 1), 1e-12);
        EXPECT_EQ(depth(tree), static_cast<std::size_t>(n + 2));
        EXPECT_LE(max_martingale_residual(tree), 1e-12);
      }
    }
  }
  EXPECT_THROW(build_timing_risk({0.03, 1, 0.5, 10.0}), ValidationError);
  EXPECT_THROW(build_timing_risk({0.03, 4, 1.0, 10.0}), ValidationError);
  EXPECT_THROW(build_timing_risk({0.03, 4, 0.5, -1.0}), ValidationError);
}

TEST(BuildTimingRisk, WeightSitsOnTimingNodeOnly) {
  // n = 3: two hazard levels, then the timing node on the survival path.
  const TimingRiskSpec spec{0.03, 3, 0.5, 7.0};
  const Node tree = build_timing_risk(spec);
  const Node* node = &tree;
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(node->as_internal().surprise_weight, 1.0);
    node = &node->as_internal().branches[1].child;
  }
  EXPECT_EQ(node->as_internal().surprise_weight, 7.0);
}

TEST(BuildDual, SchemesShareExpectedValue) {
  const ModelParams params = fig3();
  for (double p : kHazards) {
    for (int n = 1; n <= 12; ++n) {
      for (double ppr : kProbs) {
        const double target = ppr * std::pow(1.0 - p, n);
        double surprises[3];
        int i = 0;
        for (DualScheme s : {DualScheme::SeparateAfter, DualScheme::SeparateBefore,
                             DualScheme::Incorporated}) {
          const Node tree = build_dual({p, n, ppr, s, 2.0});
          EXPECT_NEAR(expected_value(tree), target, 1e-12);
          EXPECT_LE(max_martingale_residual(tree), 1e-12);
          surprises[i++] = evaluate(tree, params).total_surprise;
        }
        EXPECT_GT(std::abs(surprises[0] - surprises[2]), 1e-9);
        EXPECT_GT(std::abs(surprises[1] - surprises[2]), 1e-9);
        // With p_pr = 1-p the two separate orders are mirror images.
        if (std::abs(ppr - (1.0 - p)) > 1e-12) {
          EXPECT_GT(std::abs(surprises[0] - surprises[1]), 1e-9) << p << " " << n << " " << ppr;
        }
      }
    }
  }
}

TEST(BuildDual, ShapeOfEachScheme) {
  const DualRiskSpec after{0.03, 4, 0.7, DualScheme::SeparateAfter, 2.0};
  DualRiskSpec before = after;
  before.scheme = DualScheme::SeparateBefore;
  DualRiskSpec inc = after;
  inc.scheme = DualScheme::Incorporated;
  EXPECT_EQ(depth(build_dual(after)), 5u);
  EXPECT_EQ(depth(build_dual(before)), 5u);
  EXPECT_EQ(depth(build_dual(inc)), 4u);
  EXPECT_EQ(build_dual(before).as_internal().branches[0].probability, 0.7);
  EXPECT_NEAR(build_dual(inc).as_internal().branches[0].probability,
              inflated_hazard(0.03, 4, 0.7), 1e-15);
  EXPECT_THROW(build_dual_scheme_a(inc), ValidationError);
}

TEST(BuildScenario, SingleStepProcrastinationIsGamble) {
  ScenarioSpec spec;
  spec.variant = ScenarioVariant::Procrastination;
  spec.horizon = 1;
  spec.step_probabilities = {0.4};
  spec.step_payoffs = {1.0};
  spec.final_payoff = -2.0;
  const Node scenario = build_scenario(spec);
  const Node gamble = build_binary_gamble(1.0, -2.0, 0.4);
  const ModelParams params = fig3();
  EXPECT_EQ(expected_value(scenario), expected_value(gamble));
  EXPECT_EQ(evaluate(scenario, params).total_surprise, evaluate(gamble, params).total_surprise);
}

TEST(BuildScenario, EqualLossNegotiationIsShiftedHazardChain) {
  const ModelParams params = fig3();
  const double loss = -0.5;
  const double agreement = 2.0;
  for (double p : kHazards) {
    for (int n = 1; n <= 8; ++n) {
      ScenarioSpec spec;
      spec.variant = ScenarioVariant::Negotiation;
      spec.horizon = n;
      spec.step_probabilities.assign(static_cast<std::size_t>(n), p);
      spec.step_payoffs.assign(static_cast<std::size_t>(n), loss);
      spec.final_payoff = agreement;
      const Node tree = build_scenario(spec);
      const double span = agreement - loss;
      const double hazard_delta = hazard_total_surprise({p, double(n)}, params);
      // Unscaled: surprise scales as span^alpha.
      EXPECT_NEAR(evaluate(tree, params).total_surprise,
                  std::pow(span, params.alpha) * hazard_delta, 1e-12);
      // Full scaling maps the scenario back onto the unit hazard chain.
      EXPECT_NEAR(evaluate_scaled(tree, params, FullScaling{}),
                  loss + span * discount_factor({p, double(n)}, params), 1e-12);
    }
  }
}

TEST(BuildScenario, WorseningLossesPeakAtLastStage) {
  const ModelParams params = fig3();
  for (int n = 2; n <= 8; ++n) {
    ScenarioSpec spec;
    spec.variant = ScenarioVariant::Negotiation;
    spec.horizon = n;
    for (int i = 0; i < n; ++i) {
      spec.step_probabilities.push_back(0.05 + 0.02 * i);
      spec.step_payoffs.push_back(-0.2 * (i + 1));
    }
    spec.final_payoff = 1.0;
    const auto stages = stage_surprises(build_scenario(spec), params);
    ASSERT_EQ(stages.size(), static_cast<std::size_t>(n));
    for (int t = 0; t + 1 < n; ++t) EXPECT_LT(stages[n - 1], stages[t]) << "n=" << n;
  }
}

TEST(BuildScenario, Validation) {
  ScenarioSpec spec;
  spec.horizon = 2;
  spec.step_probabilities = {0.1};
  spec.step_payoffs = {0.0, 0.0};
  EXPECT_THROW(build_scenario(spec), ValidationError);
  spec.step_probabilities = {0.1, 1.0};
  EXPECT_THROW(build_scenario(spec), ValidationError);
  spec.horizon = 0;
  EXPECT_THROW(build_scenario(spec), ValidationError);
}

}  // namespace
