#include <cmath>

#include <gtest/gtest.h>

#include "bandit/oracle.hpp"
#include "bandit/simulate.hpp"

namespace bandit {
namespace {

BanditInstance lattice_pair() {
  return BanditInstance({BernoulliShifted{0.5, -0.5}, BernoulliShifted{0.25, -0.5}});
}

BanditInstance lattice_triple() {
  return BanditInstance({BernoulliShifted{0.75, -0.75}, BernoulliShifted{0.5, -0.75},
                         BernoulliShifted{0.25, -0.75}});
}

std::vector<PolicyConfig> bandit_policies() {
  return {TwoArmedThresholdConfig{0.0, 0.25},
          PotentialConfig{0.0, 0.25, PotentialSpec::quadratic()},
          PotentialConfig{0.0, 0.25, PotentialSpec::quadratic_log(0.25)},
          PotentialConfig{0.0, 0.0, PotentialSpec::quadratic()},
          UcbConfig{}};
}

TEST(Oracle, DeterministicBernoulliMatchesHandTrace) {
  const BanditInstance inst({BernoulliShifted{1.0, -1.0}, BernoulliShifted{0.0, -0.5}});
  const ExactRegret r = exact_regret(TwoArmedThresholdConfig{0.0, 0.5}, inst, 10);
  EXPECT_NEAR(r.regret, 0.5, 1e-15);
  EXPECT_EQ(r.total_probability, 1.0);
  EXPECT_NEAR(exact_regret_by_paths(TwoArmedThresholdConfig{0.0, 0.5}, inst, 6).regret, 0.5, 1e-15);
}

TEST(Oracle, EqualMeansGiveZero) {
  const BanditInstance inst({BernoulliShifted{0.5, -0.5}, BernoulliShifted{0.5, -0.5}});
  for (const auto& p : bandit_policies()) {
    EXPECT_EQ(exact_regret(p, inst, 8).regret, 0.0) << policy_type_name(p);
  }
}

TEST(Oracle, ProbabilityConservedAndPathsAgree) {
  for (const auto& inst : {lattice_pair(), lattice_triple()}) {
    for (const auto& p : bandit_policies()) {
      if (std::holds_alternative<TwoArmedThresholdConfig>(p) && inst.num_arms() != 2) continue;
      for (std::uint64_t n = 1; n <= kMaxPathHorizon; ++n) {
        const ExactRegret dp = exact_regret(p, inst, n);
        const ExactRegret paths = exact_regret_by_paths(p, inst, n);
        EXPECT_NEAR(dp.total_probability, 1.0, 1e-12);
        EXPECT_NEAR(paths.total_probability, 1.0, 1e-12);
        EXPECT_NEAR(dp.regret, paths.regret, 1e-10) << policy_type_name(p) << " n=" << n;
      }
    }
  }
}

TEST(Oracle, NonDecreasingInHorizon) {
  for (const auto& p : bandit_policies()) {
    if (std::holds_alternative<TwoArmedThresholdConfig>(p)) continue;
    double previous = 0.0;
    for (std::uint64_t n = 1; n <= 10; ++n) {
      const double r = exact_regret(p, lattice_triple(), n).regret;
      EXPECT_GE(r, previous - 1e-15) << policy_type_name(p) << " n=" << n;
      previous = r;
    }
  }
}

TEST(Oracle, RejectsUnsupportedInputs) {
  const UcbConfig ucb;
  EXPECT_THROW(exact_regret(ucb, BanditInstance({Gaussian{0.0, 1.0}, Dirac{0.0}}), 4),
               std::invalid_argument);
  EXPECT_THROW(exact_regret(FullInfoGreedyConfig{}, lattice_pair(), 4), std::invalid_argument);
  EXPECT_THROW(exact_regret(ucb, lattice_pair(), kMaxOracleHorizon + 1), std::invalid_argument);
  EXPECT_THROW(exact_regret_by_paths(ucb, lattice_pair(), kMaxPathHorizon + 1), std::invalid_argument);
  const BanditInstance four({BernoulliShifted{0.5, 0.0}, BernoulliShifted{0.5, 0.0},
                             BernoulliShifted{0.5, 0.0}, BernoulliShifted{0.5, 0.0}});
  EXPECT_THROW(exact_regret(ucb, four, 4), std::invalid_argument);
}

// Non-dyadic shift: rewards are 0.1 and -0.9, so simulated means carry
// rounding that the lattice means do not.
TEST(Oracle, MonteCarloAgreesOnNonDyadicInstance) {
  const BanditInstance inst({BernoulliShifted{0.9, -0.9}, BernoulliShifted{0.5, -0.9}});
  const PotentialConfig p{0.0, 0.4, PotentialSpec::quadratic()};
  EXPECT_NEAR(exact_regret(p, inst, 6).regret, exact_regret_by_paths(p, inst, 6).regret, 1e-10);
  const double exact = exact_regret(p, inst, 8).regret;
  const std::vector<std::uint64_t> cps = {8};
  BatchOptions bo;
  bo.keep_records = false;
  const BatchResult mc = run_many(p, inst, 8, 100000, cps, 424242, bo);
  EXPECT_NEAR(mc.estimates[0].mean, exact, 3.0 * mc.estimates[0].std_error);
}

TEST(Oracle, MonteCarloAgreesOnLatticeInstances) {
  std::uint64_t seed = 1000;
  for (const auto& inst : {lattice_pair(), lattice_triple()}) {
    for (const auto& p : bandit_policies()) {
      if (std::holds_alternative<TwoArmedThresholdConfig>(p) && inst.num_arms() != 2) continue;
      const double exact = exact_regret(p, inst, 8).regret;
      const std::vector<std::uint64_t> cps = {8};
      BatchOptions bo;
      bo.keep_records = false;
      const BatchResult mc = run_many(p, inst, 8, 100000, cps, seed++, bo);
      EXPECT_NEAR(mc.estimates[0].mean, exact, 3.0 * mc.estimates[0].std_error)
          << policy_type_name(p) << " K=" << inst.num_arms();
    }
  }
}

}  // namespace
}  // namespace bandit
