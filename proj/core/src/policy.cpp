#include "bandit/policy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bandit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t draw(std::span<const double> weights, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  // u landed in the rounding slack above the last partial sum.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace

std::string policy_type_name(const PolicyConfig& config) {
  return std::visit(Overloaded{
                        [](const TwoArmedThresholdConfig&) { return std::string("two_armed"); },
                        [](const PotentialConfig&) { return std::string("potential"); },
                        [](const UcbConfig&) { return std::string("ucb"); },
                        [](const FullInfoGreedyConfig&) { return std::string("full_info"); },
                    },
                    config);
}

bool is_full_information(const PolicyConfig& config) {
  return std::holds_alternative<FullInfoGreedyConfig>(config);
}

void validate(const PolicyConfig& config, std::size_t num_arms) {
  if (num_arms < 2) throw std::invalid_argument("policies need at least 2 arms");
  if (const auto* c = std::get_if<TwoArmedThresholdConfig>(&config)) {
    if (num_arms != 2) {
      throw std::invalid_argument("two_armed policy requires exactly 2 arms");
    }
    if (!(c->delta > 0.0) || !std::isfinite(c->delta)) {
      throw std::invalid_argument("two_armed policy requires delta > 0");
    }
    if (!std::isfinite(c->mu_star)) {
      throw std::invalid_argument("two_armed policy requires a finite mu_star");
    }
  } else if (const auto* c = std::get_if<PotentialConfig>(&config)) {
    if (!(c->epsilon >= 0.0) || !std::isfinite(c->epsilon)) {
      throw std::invalid_argument("potential policy requires epsilon >= 0");
    }
    if (!std::isfinite(c->mu_star)) {
      throw std::invalid_argument("potential policy requires a finite mu_star");
    }
    // Branch (2) evaluates psi at values strictly above epsilon/2.
    if (c->psi.domain_low() > c->epsilon / 2.0) {
      throw std::invalid_argument(
          "potential policy: psi domain starts above epsilon/2");
    }
  }
}

PolicyConfig with_shifted_mu_star(const PolicyConfig& config, double c) {
  PolicyConfig out = config;
  if (auto* p = std::get_if<TwoArmedThresholdConfig>(&out)) p->mu_star += c;
  if (auto* p = std::get_if<PotentialConfig>(&out)) p->mu_star += c;
  return out;
}

PolicyState::PolicyState(PolicyConfig config, std::size_t num_arms)
    : config_(std::move(config)),
      history_(num_arms),
      abs_means_(num_arms),
      weights_(num_arms) {
  validate(config_, num_arms);
}

PolicyState::PolicyState(PolicyConfig config, History history)
    : config_(std::move(config)),
      history_(std::move(history)),
      abs_means_(history_.num_arms()),
      weights_(history_.num_arms()) {
  validate(config_, history_.num_arms());
}

PolicyState::TwoArmedDecision PolicyState::decide_two_armed() const {
  const auto& c = std::get<TwoArmedThresholdConfig>(config_);
  if (pending_) return {*pending_, false};
  const std::uint64_t t = history_.t();
  if (t <= 2) return {static_cast<std::size_t>(t - 1), false};
  const double m0 = recentered_mean(0, c.mu_star);
  const double m1 = recentered_mean(1, c.mu_star);
  const double threshold = -c.delta / 2.0;
  if (m0 > threshold && m0 > m1) return {0, false};
  if (m1 > threshold && m1 > m0) return {1, false};
  return {0, true};
}

std::optional<std::size_t> PolicyState::decide_potential() const {
  const auto& c = std::get<PotentialConfig>(config_);
  const std::size_t k = num_arms();
  const std::uint64_t t = history_.t();
  if (t <= k) return static_cast<std::size_t>(t - 1);
  std::size_t best = 0;
  double best_mean = recentered_mean(0, c.mu_star);
  for (std::size_t i = 1; i < k; ++i) {
    const double m = recentered_mean(i, c.mu_star);
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  if (best_mean >= -c.epsilon / 2.0) return best;
  for (std::size_t i = 0; i < k; ++i) {
    abs_means_[i] = -recentered_mean(i, c.mu_star);
  }
  selection_weights_into(c.psi, abs_means_, weights_);
  return std::nullopt;
}

std::size_t PolicyState::decide_ucb() const {
  const std::size_t k = num_arms();
  const std::uint64_t t = history_.t();
  if (t <= k) return static_cast<std::size_t>(t - 1);
  const double log_t = std::log(static_cast<double>(t));
  std::size_t best = 0;
  double best_index = -INFINITY;
  for (std::size_t i = 0; i < k; ++i) {
    const double index =
        history_.mean(i) +
        std::sqrt(2.0 * log_t / static_cast<double>(history_.count(i)));
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

std::size_t PolicyState::decide_full_info() const {
  if (history_.count(0) == 0) return 0;
  std::size_t best = 0;
  double best_mean = history_.mean(0);
  for (std::size_t i = 1; i < num_arms(); ++i) {
    const double m = history_.mean(i);
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  return best;
}

std::size_t PolicyState::select_two_armed() {
  const auto d = decide_two_armed();
  if (pending_) {
    pending_.reset();
  } else if (d.pull_both) {
    pending_ = 1;
  }
  awaiting_ = d.arm;
  return d.arm;
}

std::size_t PolicyState::select_potential(RandomStream& rng) {
  const auto exploit = decide_potential();
  const std::size_t arm = exploit ? *exploit : draw(weights_, rng);
  awaiting_ = arm;
  return arm;
}

std::size_t PolicyState::select_ucb() {
  awaiting_ = decide_ucb();
  return *awaiting_;
}

std::size_t PolicyState::select_full_info() {
  awaiting_ = decide_full_info();
  return *awaiting_;
}

std::size_t PolicyState::select(RandomStream& rng) {
  switch (config_.index()) {
    case 0:
      return select_two_armed();
    case 1:
      return select_potential(rng);
    case 2:
      return select_ucb();
    default:
      return select_full_info();
  }
}

std::vector<double> PolicyState::selection_law() const {
  std::vector<double> law(num_arms(), 0.0);
  switch (config_.index()) {
    case 0:
      law[decide_two_armed().arm] = 1.0;
      break;
    case 1:
      if (const auto exploit = decide_potential()) {
        law[*exploit] = 1.0;
      } else {
        law = weights_;
      }
      break;
    case 2:
      law[decide_ucb()] = 1.0;
      break;
    default:
      law[decide_full_info()] = 1.0;
      break;
  }
  return law;
}

void PolicyState::commit(std::size_t arm) {
  if (arm >= num_arms()) throw std::out_of_range("commit: arm index out of range");
  if (config_.index() == 0) {
    if (decide_two_armed().arm != arm) {
      throw std::logic_error("commit: arm not selectable by the two_armed policy");
    }
    select_two_armed();
    return;
  }
  if (!(selection_law()[arm] > 0.0)) {
    throw std::logic_error("commit: arm has zero selection probability");
  }
  awaiting_ = arm;
}

void PolicyState::update(std::size_t arm, double reward) {
  if (full_information()) {
    throw std::logic_error("update: full-information policy expects update_full_info");
  }
  if (!awaiting_ || *awaiting_ != arm) {
    std::ostringstream msg;
    msg << "update: arm " << arm + 1 << " was not the selected arm under bandit feedback";
    throw std::logic_error(msg.str());
  }
  history_.record(arm, reward);
  history_.advance();
  awaiting_.reset();
}

void PolicyState::update_full_info(std::span<const double> rewards) {
  if (!full_information()) {
    throw std::logic_error("update_full_info: policy uses bandit feedback");
  }
  if (rewards.size() != num_arms()) {
    throw std::invalid_argument("update_full_info: need one reward per arm");
  }
  for (std::size_t i = 0; i < rewards.size(); ++i) history_.record(i, rewards[i]);
  history_.advance();
  awaiting_.reset();
}

}  // namespace bandit
