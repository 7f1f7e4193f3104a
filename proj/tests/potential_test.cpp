#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "bandit/potential.hpp"

namespace bandit {
namespace {

TEST(Potential, Values) {
  EXPECT_DOUBLE_EQ(value(PotentialSpec::quadratic(), 0.5), 0.25);
  EXPECT_NEAR(value(PotentialSpec::quadratic_log(1.0), 1.0), 0.72134752044448, 1e-12);
  EXPECT_THROW(value(PotentialSpec::quadratic_log(1.0), 0.25), std::domain_error);
  EXPECT_THROW(value(PotentialSpec::quadratic_log(1.0), 0.5), std::domain_error);
  EXPECT_THROW(value(PotentialSpec::quadratic(), 0.0), std::domain_error);
  EXPECT_THROW(PotentialSpec::quadratic_log(0.0), std::invalid_argument);
}

TEST(Potential, Derivatives) {
  EXPECT_DOUBLE_EQ(derivative(PotentialSpec::quadratic(), 3.0), 6.0);
  const double l4 = std::log(4.0);
  const double expected = 2.0 / l4 - 1.0 / (l4 * l4);
  EXPECT_NEAR(derivative(PotentialSpec::quadratic_log(1.0), 1.0), expected, 1e-15);
  EXPECT_NEAR(expected, 0.922353, 1e-6);

  // Independent check: central finite difference, h = 1e-6.
  const auto spec = PotentialSpec::quadratic_log(1.0);
  const double h = 1e-6;
  const double fd = (value(spec, 1.0 + h) - value(spec, 1.0 - h)) / (2.0 * h);
  EXPECT_NEAR(fd, expected, 1e-6 * expected);
}

std::vector<double> grid(double low, double high, int points) {
  std::vector<double> xs;
  for (int i = 1; i <= points; ++i) xs.push_back(low + (high - low) * i / points);
  return xs;
}

TEST(Potential, StrictlyIncreasingOnDomainGrid) {
  for (const auto& spec : {PotentialSpec::quadratic(), PotentialSpec::quadratic_log(0.1),
                           PotentialSpec::quadratic_log(1.0)}) {
    const auto xs = grid(spec.domain_low(), 10.0, 1000);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      ASSERT_LT(value(spec, xs[i - 1]), value(spec, xs[i])) << spec.name() << " x=" << xs[i];
      ASSERT_GT(value(spec, xs[i]), 0.0);
    }
  }
}

TEST(Potential, DerivativeMatchesFiniteDifferences) {
  for (const auto& spec : {PotentialSpec::quadratic(), PotentialSpec::quadratic_log(0.1),
                           PotentialSpec::quadratic_log(0.5), PotentialSpec::quadratic_log(1.0)}) {
    const double low = spec.domain_low();
    for (double x : grid(low, 10.0, 1000)) {
      const double h = std::min(1e-6, (x - low) / 2.0);
      const double fd = (value(spec, x + h) - value(spec, x - h)) / (2.0 * h);
      const double d = derivative(spec, x);
      ASSERT_LE(std::abs(d - fd), 1e-5 * std::max(1.0, std::abs(d))) << spec.name() << " x=" << x;
    }
  }
}

TEST(Potential, QuadraticLogDerivativeBelowLeadingTerm) {
  for (double eps : {0.05, 0.25, 1.0}) {
    const auto spec = PotentialSpec::quadratic_log(eps);
    for (double x : grid(eps / 2.0, 10.0, 500)) {
      EXPECT_LE(derivative(spec, x), 2.0 * x / std::log(4.0 * x / eps));
    }
  }
}

TEST(Potential, ClosedDomainAllowsEdge) {
  const auto spec = PotentialSpec::quadratic_log(0.5);
  EXPECT_NEAR(value_closed(spec, 0.25), 0.0625 / std::log(2.0), 1e-15);
  EXPECT_THROW(value_closed(spec, 0.2), std::domain_error);
}

TEST(SelectionWeights, Examples) {
  const auto q = PotentialSpec::quadratic();
  const auto w = selection_weights(q, std::vector<double>{1.0, 2.0});
  EXPECT_NEAR(w[0], 0.8, 1e-12);
  EXPECT_NEAR(w[1], 0.2, 1e-12);

  for (double c : {1e-3, 0.7, 42.0}) {
    const auto s = selection_weights(q, std::vector<double>{c, c});
    EXPECT_NEAR(s[0], 0.5, 1e-12);
    EXPECT_NEAR(s[1], 0.5, 1e-12);
  }

  // Hand normalization of (4, 1, 1/4).
  const auto t = selection_weights(q, std::vector<double>{0.5, 1.0, 2.0});
  EXPECT_NEAR(t[0], 16.0 / 21.0, 1e-12);
  EXPECT_NEAR(t[1], 4.0 / 21.0, 1e-12);
  EXPECT_NEAR(t[2], 1.0 / 21.0, 1e-12);
}

TEST(SelectionWeights, RejectsDomainViolation) {
  const auto spec = PotentialSpec::quadratic_log(1.0);
  EXPECT_THROW(selection_weights(spec, std::vector<double>{1.0, 0.4}), std::domain_error);
  EXPECT_THROW(selection_weights(PotentialSpec::quadratic(), std::vector<double>{1.0, 0.0}),
               std::domain_error);
}

TEST(SelectionWeights, StableForTinyArguments) {
  const auto w = selection_weights(PotentialSpec::quadratic(), std::vector<double>{1e-300, 1e-3, 1.0});
  for (double x : w) ASSERT_TRUE(std::isfinite(x));
  EXPECT_NEAR(w[0], 1.0, 1e-12);
  EXPECT_GT(w[1], 0.0 - 1e-300);
}

TEST(SelectionWeights, SumToOneAndPermutationEquivariant) {
  std::vector<double> xs = {0.3, 0.9, 1.7, 0.55, 2.4};
  for (const auto& spec : {PotentialSpec::quadratic(), PotentialSpec::quadratic_log(0.5)}) {
    const auto w = selection_weights(spec, xs);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (double x : w) EXPECT_GT(x, 0.0);

    std::vector<std::size_t> perm(xs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 2, perm.end());
    std::vector<double> permuted;
    for (std::size_t i : perm) permuted.push_back(xs[i]);
    const auto wp = selection_weights(spec, permuted);
    for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_NEAR(wp[k], w[perm[k]], 1e-12);
  }
}

}  // namespace
}  // namespace bandit
