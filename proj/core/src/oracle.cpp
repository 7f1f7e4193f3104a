#include "bandit/oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace bandit {
namespace {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct ArmParams {
  double p;
  double shift;
};

std::vector<ArmParams> bernoulli_arms(const BanditInstance& instance) {
  std::vector<ArmParams> out;
  for (const auto& arm : instance.arms()) {
    const auto* b = std::get_if<BernoulliShifted>(&arm.law());
    if (b == nullptr) {
      throw std::invalid_argument("oracle: every arm must be BernoulliShifted");
    }
    out.push_back({b->p, b->shift});
  }
  return out;
}

void check_supported(const PolicyConfig& policy, const BanditInstance& instance,
                     std::uint64_t n, std::uint64_t max_n) {
  if (instance.num_arms() > kMaxOracleArms) {
    throw std::invalid_argument("oracle: at most 3 arms supported");
  }
  if (n < 1 || n > max_n) {
    throw std::invalid_argument("oracle: horizon out of the supported range");
  }
  if (is_full_information(policy)) {
    throw std::invalid_argument("oracle: full-information policies are not supported");
  }
  validate(policy, instance.num_arms());
}

struct LatticeState {
  std::array<std::uint8_t, kMaxOracleArms> pulls{};
  std::array<std::uint8_t, kMaxOracleArms> successes{};
  // Fig. 1 pairing: arm 2 is owed next round.
  bool owes_second = false;

  auto operator<=>(const LatticeState&) const = default;
};

class LatticeRules {
 public:
  LatticeRules(const PolicyConfig& policy, std::vector<ArmParams> arms)
      : policy_(policy), arms_(std::move(arms)) {}

  // shift + s/m: equal fractions s/m round to the same double, so arms
  // sharing a shift tie exactly when their exact means tie.
  double mean(const LatticeState& s, std::size_t i) const {
    return arms_[i].shift + static_cast<double>(s.successes[i]) / s.pulls[i];
  }

  // Selection probabilities at round t; sets owes_second when the pair
  // branch fires.
  std::vector<double> law(const LatticeState& s, std::uint64_t t, bool& pair_fires) const {
    const std::size_t k = arms_.size();
    std::vector<double> out(k, 0.0);
    pair_fires = false;

    if (const auto* c = std::get_if<TwoArmedThresholdConfig>(&policy_)) {
      if (s.owes_second) {
        out[1] = 1.0;
      } else if (t <= 2) {
        out[t - 1] = 1.0;
      } else {
        const double a = mean(s, 0) - c->mu_star;
        const double b = mean(s, 1) - c->mu_star;
        const double threshold = -c->delta / 2.0;
        if (a > threshold && a > b) {
          out[0] = 1.0;
        } else if (b > threshold && b > a) {
          out[1] = 1.0;
        } else {
          out[0] = 1.0;
          pair_fires = true;
        }
      }
      return out;
    }

    if (t <= k) {
      out[t - 1] = 1.0;
      return out;
    }

    if (const auto* c = std::get_if<PotentialConfig>(&policy_)) {
      std::vector<double> centered(k);
      std::size_t best = 0;
      for (std::size_t i = 0; i < k; ++i) {
        centered[i] = mean(s, i) - c->mu_star;
        if (centered[i] > centered[best]) best = i;
      }
      if (centered[best] >= -c->epsilon / 2.0) {
        out[best] = 1.0;
        return out;
      }
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double x = -centered[i];
        double psi = x * x;
        if (c->psi.kind() == PotentialSpec::Kind::kQuadraticLog) {
          psi /= std::log(4.0 * x / c->psi.epsilon());
        }
        out[i] = 1.0 / psi;
        total += out[i];
      }
      for (double& w : out) w /= total;
      return out;
    }

    // UCB.
    std::size_t best = 0;
    double best_index = -INFINITY;
    for (std::size_t i = 0; i < k; ++i) {
      const double index =
          mean(s, i) + std::sqrt(2.0 * std::log(static_cast<double>(t)) / s.pulls[i]);
      if (index > best_index) {
        best_index = index;
        best = i;
      }
    }
    out[best] = 1.0;
    return out;
  }

 private:
  const PolicyConfig& policy_;
  std::vector<ArmParams> arms_;
};

struct PathWalker {
  const BanditInstance& instance;
  const std::vector<ArmParams>& arms;
  std::uint64_t horizon;
  std::vector<std::uint64_t> counts;
  CompensatedSum regret;
  CompensatedSum mass;
  std::size_t leaves = 0;

  void walk(const PolicyState& state, std::uint64_t round, double probability) {
    if (round > horizon) {
      regret.add(probability * pseudo_regret_of_counts());
      mass.add(probability);
      ++leaves;
      return;
    }
    const std::vector<double> law = state.selection_law();
    for (std::size_t arm = 0; arm < law.size(); ++arm) {
      if (law[arm] <= 0.0) continue;
      for (int outcome = 0; outcome < 2; ++outcome) {
        const double p_outcome = outcome == 1 ? arms[arm].p : 1.0 - arms[arm].p;
        if (p_outcome <= 0.0) continue;
        PolicyState next = state;
        next.commit(arm);
        next.update(arm, arms[arm].shift + outcome);
        ++counts[arm];
        walk(next, round + 1, probability * law[arm] * p_outcome);
        --counts[arm];
      }
    }
  }

  double pseudo_regret_of_counts() const {
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      total += instance.gap(i) * static_cast<double>(counts[i]);
    }
    return total;
  }
};

}  // namespace

ExactRegret exact_regret(const PolicyConfig& policy, const BanditInstance& instance,
                         std::uint64_t n) {
  check_supported(policy, instance, n, kMaxOracleHorizon);
  const std::vector<ArmParams> arms = bernoulli_arms(instance);
  const std::size_t k = arms.size();
  const LatticeRules rules(policy, arms);

  std::map<LatticeState, CompensatedSum> layer;
  layer[LatticeState{}].add(1.0);
  for (std::uint64_t t = 1; t <= n; ++t) {
    std::map<LatticeState, CompensatedSum> next;
    for (const auto& [state, acc] : layer) {
      const double p_state = acc.value();
      bool pair_fires = false;
      const std::vector<double> law = rules.law(state, t, pair_fires);
      for (std::size_t arm = 0; arm < k; ++arm) {
        if (law[arm] <= 0.0) continue;
        for (int outcome = 0; outcome < 2; ++outcome) {
          const double p_outcome = outcome == 1 ? arms[arm].p : 1.0 - arms[arm].p;
          if (p_outcome <= 0.0) continue;
          LatticeState s = state;
          ++s.pulls[arm];
          s.successes[arm] += static_cast<std::uint8_t>(outcome);
          s.owes_second = pair_fires;
          next[s].add(p_state * law[arm] * p_outcome);
        }
      }
    }
    layer = std::move(next);
  }

  CompensatedSum regret;
  CompensatedSum mass;
  for (const auto& [state, acc] : layer) {
    const double p = acc.value();
    double r = 0.0;
    for (std::size_t i = 0; i < k; ++i) r += instance.gap(i) * state.pulls[i];
    regret.add(p * r);
    mass.add(p);
  }
  return {regret.value(), mass.value(), layer.size()};
}

ExactRegret exact_regret_by_paths(const PolicyConfig& policy,
                                  const BanditInstance& instance, std::uint64_t n) {
  check_supported(policy, instance, n, kMaxPathHorizon);
  const std::vector<ArmParams> arms = bernoulli_arms(instance);
  PathWalker walker{instance, arms, n, std::vector<std::uint64_t>(arms.size(), 0), {}, {}, 0};
  walker.walk(PolicyState(policy, arms.size()), 1, 1.0);
  return {walker.regret.value(), walker.mass.value(), walker.leaves};
}

}  // namespace bandit
