#include "bandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandit/quadrature.hpp"

namespace bandit {
namespace {

constexpr double kQuadratureTolerance = 1e-10;

void require(bool ok, const char* name, const char* condition) {
  if (!ok) {
    throw BoundDomainError(std::string(name) + ": requires " + condition);
  }
}

double min_positive(std::span<const double> gaps) {
  double m = INFINITY;
  for (double g : gaps) {
    if (g > 0.0) m = std::min(m, g);
  }
  return m;
}

void check_gaps(std::span<const double> gaps, const char* name) {
  for (double g : gaps) {
    require(g >= 0.0 && std::isfinite(g), name, "finite gaps >= 0");
  }
}

void check_small_epsilon(std::span<const double> gaps, double epsilon, const char* name) {
  check_gaps(gaps, name);
  const double cap = std::min(1.0, min_positive(gaps));
  require(epsilon > 0.0 && epsilon <= cap, name, "epsilon in (0, min(1, Delta)]");
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

double ub_thm2(double delta) {
  require(delta > 0.0 && std::isfinite(delta), "ub_thm2", "Delta > 0");
  return delta + 16.0 / delta;
}

double ub_psisimp(std::span<const double> gaps, double epsilon) {
  check_small_epsilon(gaps, epsilon, "ub_psisimp");
  double total = 0.0;
  for (double g : gaps) {
    if (g > 0.0) total += g + 32.0 / g * std::log(5.0 / epsilon);
  }
  return total;
}

double ub_psiepszero(std::span<const double> gaps, std::uint64_t n, double v) {
  check_gaps(gaps, "ub_psiepszero");
  require(n >= 1, "ub_psiepszero", "n >= 1");
  require(v >= 0.0 && std::isfinite(v), "ub_psiepszero", "v = E(Y*)^2 >= 0");
  const double scale = std::max(1.0, v) * 4.0 * std::log(9.0 * static_cast<double>(n));
  double total = 0.0;
  for (double g : gaps) {
    if (g > 0.0) total += g + scale / g;
  }
  return total;
}

double ub_psilog(std::span<const double> gaps, double epsilon) {
  check_small_epsilon(gaps, epsilon, "ub_psilog");
  const double loglog = 3.0 + std::log(std::log(4.0 / epsilon));
  double total = 0.0;
  for (double g : gaps) {
    if (g > 0.0) total += g + 32.0 * std::log(2.0 * g / epsilon) / g * loglog;
  }
  return total;
}

TailIntegral tail_integral(const PotentialSpec& spec, double epsilon) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "tail_integral", "epsilon > 0");
  const double lower = epsilon / 2.0;
  require(spec.domain_low() <= lower, "tail_integral",
          "psi defined on [epsilon/2, inf), i.e. psi's own epsilon <= epsilon");

  const double upper = std::max(10.0, lower + 10.0);
  auto integrand = [&spec](double x) {
    return 2.0 * derivative_closed(spec, x) / std::expm1(0.5 * x * x);
  };
  const QuadratureResult q = integrate_adaptive(integrand, lower, upper, kQuadratureTolerance);

  // For x >= X: exp(x^2/2) - 1 >= exp(x^2/2)/2 and psi'(x) <= 2 c x.
  const double c = spec.kind() == PotentialSpec::Kind::kQuadratic
                       ? 1.0
                       : 1.0 / std::log(4.0 * upper / spec.epsilon());
  const double tail_bound = 8.0 * c * std::exp(-0.5 * upper * upper);

  TailIntegral out;
  out.value = q.value + 0.5 * tail_bound;
  out.abs_error = q.abs_error + 0.5 * tail_bound;
  if (!q.converged) {
    std::ostringstream msg;
    msg << "tail_integral: quadrature did not reach tolerance " << kQuadratureTolerance
        << " (estimate " << out.value << " +/- " << out.abs_error << ")";
    throw QuadratureError(msg.str(), out.value, out.abs_error);
  }
  return out;
}

BoundResult ub_general(std::span<const double> gaps, double epsilon,
                       const PotentialSpec& spec) {
  check_gaps(gaps, "ub_general");
  require(epsilon > 0.0 && std::isfinite(epsilon), "ub_general", "epsilon > 0");
  for (double g : gaps) {
    if (g > 0.0) {
      require(g / 2.0 >= spec.domain_low(), "ub_general",
              "every positive gap to satisfy Delta_i/2 inside the domain of psi");
    }
  }
  const TailIntegral integral = tail_integral(spec, epsilon);
  const double half_eps = epsilon / 2.0;
  const double bracket = 8.0 * value_closed(spec, half_eps) / (epsilon * epsilon) + integral.value;

  double total = 0.0;
  double error = 0.0;
  for (double g : gaps) {
    if (g <= 0.0) continue;
    const double scale = g / value_closed(spec, g / 2.0);
    total += g + 8.0 / g + scale * bracket;
    error += scale * integral.abs_error;
  }

  BoundResult r;
  r.name = "ub_general";
  r.value = total;
  r.inputs["gaps"] = to_vector(gaps);
  r.inputs["epsilon"] = epsilon;
  r.inputs["tail_integral"] = integral.value;
  r.quadrature_abs_error = error > 0.0 ? error : integral.abs_error;
  return r;
}

double lb_thm5(double delta) {
  require(delta > 0.0 && std::isfinite(delta), "lb_thm5", "Delta > 0");
  return 1.0 / (4.0 * delta);
}

double lb_thm6(std::uint64_t n, double delta) {
  require(n >= 1, "lb_thm6", "n >= 1");
  require(delta > 0.0 && std::isfinite(delta), "lb_thm6", "Delta > 0");
  return std::log(static_cast<double>(n) * delta * delta / 2.0) / (4.0 * delta);
}

double lb_thm8(std::uint64_t n) {
  require(n >= 1, "lb_thm8", "n >= 1");
  return 0.5 * std::log(static_cast<double>(n) / 139.0);
}

double kl_gaussian_product(std::span<const double> means_a,
                           std::span<const double> means_b, std::uint64_t t) {
  if (means_a.size() != means_b.size()) {
    throw BoundDomainError("kl_gaussian_product: requires mean vectors of equal length");
  }
  double per_round = 0.0;
  for (std::size_t i = 0; i < means_a.size(); ++i) {
    const double d = means_a[i] - means_b[i];
    per_round += d * d / 2.0;
  }
  return static_cast<double>(t) * per_round;
}

double kl_uninformative_pair(double delta, double expected_pulls) {
  require(expected_pulls >= 0.0, "kl_uninformative_pair", "E T_2 >= 0");
  return 2.0 * delta * delta * expected_pulls;
}

BoundResult ub_thm2_result(double delta) {
  return {"ub_thm2", ub_thm2(delta), {{"delta", delta}}, std::nullopt};
}

BoundResult ub_psisimp_result(std::span<const double> gaps, double epsilon) {
  return {"ub_psisimp", ub_psisimp(gaps, epsilon),
          {{"gaps", to_vector(gaps)}, {"epsilon", epsilon}}, std::nullopt};
}

BoundResult ub_psiepszero_result(std::span<const double> gaps, std::uint64_t n, double v) {
  return {"ub_psiepszero", ub_psiepszero(gaps, n, v),
          {{"gaps", to_vector(gaps)}, {"n", static_cast<double>(n)}, {"v", v}},
          std::nullopt};
}

BoundResult ub_psilog_result(std::span<const double> gaps, double epsilon) {
  return {"ub_psilog", ub_psilog(gaps, epsilon),
          {{"gaps", to_vector(gaps)}, {"epsilon", epsilon}}, std::nullopt};
}

BoundResult lb_thm5_result(double delta) {
  return {"lb_thm5", lb_thm5(delta), {{"delta", delta}}, std::nullopt};
}

BoundResult lb_thm6_result(std::uint64_t n, double delta) {
  return {"lb_thm6", lb_thm6(n, delta),
          {{"n", static_cast<double>(n)}, {"delta", delta}}, std::nullopt};
}

BoundResult lb_thm8_result(std::uint64_t n) {
  return {"lb_thm8", lb_thm8(n), {{"n", static_cast<double>(n)}}, std::nullopt};
}

BoundResult kl_gaussian_product_result(std::span<const double> means_a,
                                       std::span<const double> means_b, std::uint64_t t) {
  return {"kl_gaussian_product", kl_gaussian_product(means_a, means_b, t),
          {{"means_a", to_vector(means_a)},
           {"means_b", to_vector(means_b)},
           {"t", static_cast<double>(t)}},
          std::nullopt};
}

}  // namespace bandit
