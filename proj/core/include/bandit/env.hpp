#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "bandit/random.hpp"

namespace bandit {

// N(mean, std^2); std <= 1 keeps the law 1-sub-Gaussian.
struct Gaussian {
  double mean = 0.0;
  double std = 1.0;
};

// shift + Bernoulli(p): support {shift, shift + 1}.
struct BernoulliShifted {
  double p = 0.5;
  double shift = 0.0;
};

// Point mass at value.
struct Dirac {
  double value = 0.0;
};

// A 1-sub-Gaussian reward law for one arm. Construction validates the
// parameters, so every ArmDistribution in circulation satisfies
//   int exp(l (x - mu)) nu(dx) <= exp(l^2 / 2)  for all l.
class ArmDistribution {
 public:
  using Law = std::variant<Gaussian, BernoulliShifted, Dirac>;

  ArmDistribution(Gaussian g);          // NOLINT(google-explicit-constructor)
  ArmDistribution(BernoulliShifted b);  // NOLINT(google-explicit-constructor)
  ArmDistribution(Dirac d);             // NOLINT(google-explicit-constructor)

  const Law& law() const { return law_; }

  double mean() const;
  // E[(Y - mean)^2].
  double variance() const;

  double sample(RandomStream& rng) const {
    switch (law_.index()) {
      case 0: {
        const auto& g = std::get<Gaussian>(law_);
        return g.mean + g.std * rng.standard_normal();
      }
      case 1: {
        const auto& b = std::get<BernoulliShifted>(law_);
        return rng.bernoulli(b.p) ? b.shift + 1.0 : b.shift;
      }
      default:
        return std::get<Dirac>(law_).value;
    }
  }

  friend bool operator==(const ArmDistribution& a, const ArmDistribution& b);

 private:
  Law law_;
};

inline double mean(const ArmDistribution& arm) { return arm.mean(); }
inline double sample(const ArmDistribution& arm, RandomStream& rng) {
  return arm.sample(rng);
}

// Ordered arms with the derived gap structure:
//   mu_star = max_i mu_i,  gap_i = mu_star - mu_i,  delta_min = min_{gap_i > 0} gap_i.
class BanditInstance {
 public:
  explicit BanditInstance(std::vector<ArmDistribution> arms);

  std::size_t num_arms() const { return arms_.size(); }
  const std::vector<ArmDistribution>& arms() const { return arms_; }
  const ArmDistribution& arm(std::size_t i) const { return arms_[i]; }
  double mu_star() const { return mu_star_; }
  std::span<const double> gaps() const { return gaps_; }
  double gap(std::size_t i) const { return gaps_[i]; }
  // Empty when every gap is zero.
  std::optional<double> delta_min() const { return delta_min_; }
  // Lowest index among the optimal arms.
  std::size_t best_arm() const { return best_arm_; }
  // The positive gaps in arm order.
  std::vector<double> positive_gaps() const;

  friend bool operator==(const BanditInstance& a, const BanditInstance& b) {
    return a.arms_ == b.arms_;
  }

 private:
  std::vector<ArmDistribution> arms_;
  double mu_star_ = 0.0;
  std::vector<double> gaps_;
  std::optional<double> delta_min_;
  std::size_t best_arm_ = 0;
};

// Lower-bound instance pairs. All Gaussians have unit variance.
//   nu = N(0,1) x N(-d,1),   nu' = N(-d,1) x N(0,1)
std::pair<BanditInstance, BanditInstance> instance_thm5(double delta);
//   nu = delta_0 x N(-d,1),  nu' = delta_0 x N(d,1)
std::pair<BanditInstance, BanditInstance> instance_thm6(double delta);
//   nu_0 = N(0,1) x N(-1,1), nu_d = N(-d,1) x N(0,1),  d in (0, 1]
std::pair<BanditInstance, BanditInstance> instance_thm8(double delta);

}  // namespace bandit
