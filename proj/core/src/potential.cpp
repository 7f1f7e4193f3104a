#include "bandit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bandit {
namespace {

void check_open(const PotentialSpec& spec, double x) {
  if (!(x > spec.domain_low()) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << spec.name() << ": argument " << x << " must exceed " << spec.domain_low();
    throw std::domain_error(msg.str());
  }
}

void check_closed(const PotentialSpec& spec, double x) {
  const bool ok = spec.kind() == PotentialSpec::Kind::kQuadratic
                      ? x > 0.0
                      : x >= spec.domain_low();
  if (!ok || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << spec.name() << ": argument " << x << " is below the domain "
        << spec.domain_low();
    throw std::domain_error(msg.str());
  }
}

double raw_value(const PotentialSpec& spec, double x) {
  if (spec.kind() == PotentialSpec::Kind::kQuadratic) return x * x;
  return x * x / std::log(4.0 * x / spec.epsilon());
}

double raw_derivative(const PotentialSpec& spec, double x) {
  if (spec.kind() == PotentialSpec::Kind::kQuadratic) return 2.0 * x;
  const double l = std::log(4.0 * x / spec.epsilon());
  return 2.0 * x / l - x / (l * l);
}

}  // namespace

PotentialSpec PotentialSpec::quadratic_log(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("quadratic_log potential requires epsilon > 0");
  }
  return PotentialSpec(Kind::kQuadraticLog, epsilon);
}

std::string PotentialSpec::name() const {
  if (kind_ == Kind::kQuadratic) return "quadratic";
  std::ostringstream s;
  s << "quadratic_log(eps=" << epsilon_ << ")";
  return s.str();
}

double value(const PotentialSpec& spec, double x) {
  check_open(spec, x);
  return raw_value(spec, x);
}

double derivative(const PotentialSpec& spec, double x) {
  check_open(spec, x);
  return raw_derivative(spec, x);
}

double log_value(const PotentialSpec& spec, double x) {
  check_open(spec, x);
  const double log_sq = 2.0 * std::log(x);
  if (spec.kind() == PotentialSpec::Kind::kQuadratic) return log_sq;
  return log_sq - std::log(std::log(4.0 * x / spec.epsilon()));
}

double value_closed(const PotentialSpec& spec, double x) {
  check_closed(spec, x);
  return raw_value(spec, x);
}

double derivative_closed(const PotentialSpec& spec, double x) {
  check_closed(spec, x);
  return raw_derivative(spec, x);
}

void selection_weights_into(const PotentialSpec& spec,
                            std::span<const double> abs_means,
                            std::span<double> out) {
  if (abs_means.empty() || out.size() != abs_means.size()) {
    throw std::invalid_argument("selection_weights: size mismatch or empty input");
  }
  double min_log = INFINITY;
  for (std::size_t i = 0; i < abs_means.size(); ++i) {
    out[i] = log_value(spec, abs_means[i]);
    min_log = std::min(min_log, out[i]);
  }
  double total = 0.0;
  for (double& w : out) {
    w = std::exp(min_log - w);
    total += w;
  }
  for (double& w : out) w /= total;
}

std::vector<double> selection_weights(const PotentialSpec& spec,
                                      std::span<const double> abs_means) {
  std::vector<double> out(abs_means.size());
  selection_weights_into(spec, abs_means, out);
  return out;
}

}  // namespace bandit
