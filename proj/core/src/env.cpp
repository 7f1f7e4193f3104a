#include "bandit/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bandit {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

ArmDistribution::ArmDistribution(Gaussian g) : law_(g) {
  require_finite(g.mean, "gaussian mean");
  require_finite(g.std, "gaussian std");
  if (g.std < 0.0 || g.std > 1.0) {
    throw std::invalid_argument(
        "gaussian std must lie in [0, 1] for a 1-sub-Gaussian arm");
  }
}

ArmDistribution::ArmDistribution(BernoulliShifted b) : law_(b) {
  require_finite(b.shift, "bernoulli shift");
  if (!(b.p >= 0.0 && b.p <= 1.0)) {
    throw std::invalid_argument("bernoulli p must lie in [0, 1]");
  }
}

ArmDistribution::ArmDistribution(Dirac d) : law_(d) {
  require_finite(d.value, "dirac value");
}

double ArmDistribution::mean() const {
  switch (law_.index()) {
    case 0:
      return std::get<Gaussian>(law_).mean;
    case 1: {
      const auto& b = std::get<BernoulliShifted>(law_);
      return b.p + b.shift;
    }
    default:
      return std::get<Dirac>(law_).value;
  }
}

double ArmDistribution::variance() const {
  switch (law_.index()) {
    case 0: {
      const double s = std::get<Gaussian>(law_).std;
      return s * s;
    }
    case 1: {
      const double p = std::get<BernoulliShifted>(law_).p;
      return p * (1.0 - p);
    }
    default:
      return 0.0;
  }
}

bool operator==(const ArmDistribution& a, const ArmDistribution& b) {
  if (a.law_.index() != b.law_.index()) return false;
  switch (a.law_.index()) {
    case 0: {
      const auto& x = std::get<Gaussian>(a.law_);
      const auto& y = std::get<Gaussian>(b.law_);
      return x.mean == y.mean && x.std == y.std;
    }
    case 1: {
      const auto& x = std::get<BernoulliShifted>(a.law_);
      const auto& y = std::get<BernoulliShifted>(b.law_);
      return x.p == y.p && x.shift == y.shift;
    }
    default:
      return std::get<Dirac>(a.law_).value == std::get<Dirac>(b.law_).value;
  }
}

BanditInstance::BanditInstance(std::vector<ArmDistribution> arms)
    : arms_(std::move(arms)) {
  if (arms_.size() < 2) {
    throw std::invalid_argument("a bandit instance needs at least 2 arms");
  }
  mu_star_ = arms_[0].mean();
  for (std::size_t i = 1; i < arms_.size(); ++i) {
    if (arms_[i].mean() > mu_star_) {
      mu_star_ = arms_[i].mean();
      best_arm_ = i;
    }
  }
  gaps_.reserve(arms_.size());
  for (const auto& arm : arms_) {
    const double gap = mu_star_ - arm.mean();
    gaps_.push_back(gap);
    if (gap > 0.0 && (!delta_min_ || gap < *delta_min_)) delta_min_ = gap;
  }
}

std::vector<double> BanditInstance::positive_gaps() const {
  std::vector<double> out;
  std::copy_if(gaps_.begin(), gaps_.end(), std::back_inserter(out),
               [](double g) { return g > 0.0; });
  return out;
}

std::pair<BanditInstance, BanditInstance> instance_thm5(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("instance_thm5 requires delta > 0");
  }
  return {BanditInstance({Gaussian{0.0, 1.0}, Gaussian{-delta, 1.0}}),
          BanditInstance({Gaussian{-delta, 1.0}, Gaussian{0.0, 1.0}})};
}

std::pair<BanditInstance, BanditInstance> instance_thm6(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("instance_thm6 requires delta > 0");
  }
  return {BanditInstance({Dirac{0.0}, Gaussian{-delta, 1.0}}),
          BanditInstance({Dirac{0.0}, Gaussian{delta, 1.0}})};
}

std::pair<BanditInstance, BanditInstance> instance_thm8(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("instance_thm8 requires delta in (0, 1]");
  }
  return {BanditInstance({Gaussian{0.0, 1.0}, Gaussian{-1.0, 1.0}}),
          BanditInstance({Gaussian{-delta, 1.0}, Gaussian{0.0, 1.0}})};
}

}  // namespace bandit
