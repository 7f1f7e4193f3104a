#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bandit/potential.hpp"
#include "bandit/random.hpp"

namespace bandit {

// Two-armed policy that knows mu_star and the gap delta. Pulls the
// empirically better arm when its recentered mean clears -delta/2, and
// otherwise pulls arm 1 then arm 2 over two rounds.
struct TwoArmedThresholdConfig {
  double mu_star = 0.0;
  double delta = 0.0;
};

// K-armed randomized policy that knows mu_star and a lower bound epsilon on
// the smallest gap (epsilon = 0 means no gap information). Exploits the
// argmax when some recentered mean is >= -epsilon/2, otherwise draws an arm
// with probability proportional to 1/psi(|recentered mean|).
struct PotentialConfig {
  double mu_star = 0.0;
  double epsilon = 0.0;
  PotentialSpec psi = PotentialSpec::quadratic();
};

// Index mean_i + sqrt(2 log t / T_i).
struct UcbConfig {};

// Observes every arm each round and plays the best empirical mean.
struct FullInfoGreedyConfig {};

using PolicyConfig = std::variant<TwoArmedThresholdConfig, PotentialConfig,
                                  UcbConfig, FullInfoGreedyConfig>;

std::string policy_type_name(const PolicyConfig& config);
bool is_full_information(const PolicyConfig& config);
// Throws std::invalid_argument when the config cannot drive num_arms arms.
void validate(const PolicyConfig& config, std::size_t num_arms);
// Same policy with mu_star shifted by c (no-op for UCB and full-info).
PolicyConfig with_shifted_mu_star(const PolicyConfig& config, double c);

// Observation record. t is the 1-based index of the next round.
class History {
 public:
  explicit History(std::size_t num_arms)
      : counts_(num_arms, 0), sums_(num_arms, 0.0) {}

  std::size_t num_arms() const { return counts_.size(); }
  std::uint64_t t() const { return t_; }
  std::uint64_t count(std::size_t arm) const { return counts_[arm]; }
  double sum(std::size_t arm) const { return sums_[arm]; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::span<const double> sums() const { return sums_; }
  // sums/counts; NaN before the first observation.
  double mean(std::size_t arm) const {
    return sums_[arm] / static_cast<double>(counts_[arm]);
  }

  void record(std::size_t arm, double reward) {
    ++counts_[arm];
    sums_[arm] += reward;
  }
  void advance() { ++t_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
  std::uint64_t t_ = 1;
};

// Mutable state of one policy during one run.
//
// Bandit feedback: each round is select() (or commit()) followed by
// update() on the selected arm. Full information: select() followed by
// update_full_info() with one reward per arm.
class PolicyState {
 public:
  PolicyState(PolicyConfig config, std::size_t num_arms);
  // Resumes from a recorded history; no pull is pending or awaited.
  PolicyState(PolicyConfig config, History history);

  const PolicyConfig& config() const { return config_; }
  const History& history() const { return history_; }
  std::size_t num_arms() const { return history_.num_arms(); }
  std::optional<std::size_t> pending_arm() const { return pending_; }
  bool full_information() const { return is_full_information(config_); }

  // Dispatches on the configured policy. Only the potential policy consumes
  // randomness, and only when it takes the randomized branch.
  std::size_t select(RandomStream& rng);

  std::size_t select_two_armed();
  std::size_t select_potential(RandomStream& rng);
  std::size_t select_ucb();
  std::size_t select_full_info();

  // Probability of each arm being selected this round, without changing
  // state. Deterministic rules put mass 1 on one arm.
  std::vector<double> selection_law() const;

  // Registers `arm` as this round's selection, exactly as select() would
  // had it returned `arm`. Rejects arms the policy cannot select now.
  void commit(std::size_t arm);

  void update(std::size_t arm, double reward);
  void update_full_info(std::span<const double> rewards);

 private:
  struct TwoArmedDecision {
    std::size_t arm;
    bool pull_both;
  };
  TwoArmedDecision decide_two_armed() const;
  // Returns the exploit arm, or nullopt with the randomized law in weights_.
  std::optional<std::size_t> decide_potential() const;
  std::size_t decide_ucb() const;
  std::size_t decide_full_info() const;
  double recentered_mean(std::size_t arm, double mu_star) const {
    return history_.mean(arm) - mu_star;
  }

  PolicyConfig config_;
  History history_;
  std::optional<std::size_t> pending_;
  std::optional<std::size_t> awaiting_;
  mutable std::vector<double> abs_means_;
  mutable std::vector<double> weights_;
};

}  // namespace bandit
