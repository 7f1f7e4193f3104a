#pragma once

#include <cstddef>
#include <cstdint>

#include "bandit/env.hpp"
#include "bandit/policy.hpp"

namespace bandit {

// Exact expected pseudo-regret sum_i gap_i E T_i(n+1) for small instances
// whose arms are all BernoulliShifted.
//
// exact_regret runs a forward dynamic program over lattice states
// (pulls, successes, pending pair) and evaluates the selection rules on
// its own, from the lattice means shift + successes / pulls.
// exact_regret_by_paths enumerates every arm/outcome sequence and drives a
// real PolicyState through each, so the two share no selection code.
//
// Arms sharing a shift tie in the oracle exactly when their true means tie.
// The simulator sums rewards in floating point; with dyadic shifts (e.g.
// -0.5, -0.75) those sums are exact, so ties resolve identically in the
// oracle and in run_once. Other shifts can split a true tie by one ulp in
// the simulator.
struct ExactRegret {
  double regret = 0.0;
  // Total probability mass of the terminal states; 1 up to rounding.
  double total_probability = 0.0;
  std::size_t terminal_states = 0;
};

inline constexpr std::uint64_t kMaxOracleHorizon = 12;
inline constexpr std::uint64_t kMaxPathHorizon = 6;
inline constexpr std::size_t kMaxOracleArms = 3;

// Rejects non-Bernoulli arms, full-information policies, n > 12, K > 3.
ExactRegret exact_regret(const PolicyConfig& policy, const BanditInstance& instance,
                         std::uint64_t n);

// Same contract, n <= 6.
ExactRegret exact_regret_by_paths(const PolicyConfig& policy,
                                  const BanditInstance& instance, std::uint64_t n);

}  // namespace bandit
