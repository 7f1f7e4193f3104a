#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bandit/potential.hpp"

namespace bandit {

// Regret upper bounds for the threshold and potential policies, lower
// bounds for the Gaussian instance pairs, and the KL identities behind them.
// Logarithms are natural. Precondition violations throw BoundDomainError
// whose message quotes the validity condition.

class BoundDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_value, double partial_error)
      : std::runtime_error(what), partial_value_(partial_value), partial_error_(partial_error) {}
  double partial_value() const { return partial_value_; }
  double partial_error() const { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

using BoundInput = std::variant<double, std::vector<double>>;

struct BoundResult {
  std::string name;
  double value = 0.0;
  std::map<std::string, BoundInput> inputs;
  std::optional<double> quadrature_abs_error;
};

// delta + 16/delta.
double ub_thm2(double delta);

// sum_{gap>0} [gap + (32/gap) log(5/eps)],  eps in (0, min(1, min gap)].
double ub_psisimp(std::span<const double> gaps, double epsilon);

// sum_{gap>0} [gap + max(1, v) 4 log(9n)/gap]  (epsilon = 0, v = E (Y*)^2).
double ub_psiepszero(std::span<const double> gaps, std::uint64_t n, double v);

// sum_{gap>0} [gap + 32 log(2 gap/eps)/gap * (3 + log log(4/eps))].
double ub_psilog(std::span<const double> gaps, double epsilon);

struct TailIntegral {
  double value = 0.0;
  double abs_error = 0.0;
};

// I = int_{eps/2}^inf 2 psi'(x) / (exp(x^2/2) - 1) dx.
// Adaptive quadrature on [eps/2, X], X = max(10, eps/2 + 10), plus the
// tail beyond X bracketed in [0, 8 c exp(-X^2/2)] using psi'(x) <= 2 c x;
// the bracket midpoint is added and its half-width goes into abs_error.
TailIntegral tail_integral(const PotentialSpec& spec, double epsilon);

// sum_{gap>0} [gap + 8/gap + gap/psi(gap/2) * (8 psi(eps/2)/eps^2 + I)].
BoundResult ub_general(std::span<const double> gaps, double epsilon,
                       const PotentialSpec& spec);

// 1/(4 delta).
double lb_thm5(double delta);
// log(n delta^2 / 2)/(4 delta); negative (vacuous) when n delta^2 < 2.
double lb_thm6(std::uint64_t n, double delta);
// log(n/139)/2; negative (vacuous) for n < 139.
double lb_thm8(std::uint64_t n);

// KL between t-fold products of independent unit-variance Gaussians:
// t * sum_i (a_i - b_i)^2 / 2.
double kl_gaussian_product(std::span<const double> means_a,
                           std::span<const double> means_b, std::uint64_t t);

// KL between observation laws of delta_0 x N(-d,1) and delta_0 x N(d,1)
// when arm 2 is pulled expected_pulls times: 2 d^2 E T_2.
double kl_uninformative_pair(double delta, double expected_pulls);

// BoundResult wrappers used by the CLI and the run sidecar.
BoundResult ub_thm2_result(double delta);
BoundResult ub_psisimp_result(std::span<const double> gaps, double epsilon);
BoundResult ub_psiepszero_result(std::span<const double> gaps, std::uint64_t n, double v);
BoundResult ub_psilog_result(std::span<const double> gaps, double epsilon);
BoundResult lb_thm5_result(double delta);
BoundResult lb_thm6_result(std::uint64_t n, double delta);
BoundResult lb_thm8_result(std::uint64_t n);
BoundResult kl_gaussian_product_result(std::span<const double> means_a,
                                       std::span<const double> means_b, std::uint64_t t);

}  // namespace bandit
