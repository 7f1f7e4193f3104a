#pragma once

#include <span>
#include <string>
#include <vector>

namespace bandit {

// Potential psi used by the randomized policy: arm i is drawn with
// probability proportional to 1 / psi(|recentered mean_i|).
//
//   Quadratic         psi(x) = x^2                  on (0, inf)
//   QuadraticLog(eps) psi(x) = x^2 / log(4 x / eps)  on (eps/2, inf)
class PotentialSpec {
 public:
  enum class Kind { kQuadratic, kQuadraticLog };

  static PotentialSpec quadratic() { return PotentialSpec(Kind::kQuadratic, 0.0); }
  static PotentialSpec quadratic_log(double epsilon);

  Kind kind() const { return kind_; }
  // Zero for Quadratic.
  double epsilon() const { return epsilon_; }
  double domain_low() const { return kind_ == Kind::kQuadratic ? 0.0 : epsilon_ / 2.0; }
  std::string name() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

 private:
  PotentialSpec(Kind kind, double epsilon) : kind_(kind), epsilon_(epsilon) {}

  Kind kind_;
  double epsilon_;
};

// All three reject x <= domain_low with std::domain_error.
double value(const PotentialSpec& spec, double x);
double derivative(const PotentialSpec& spec, double x);
double log_value(const PotentialSpec& spec, double x);

// Closed-domain evaluation, x >= domain_low. The bound formulas need
// psi(eps/2) at the domain edge, where QuadraticLog is still finite.
double value_closed(const PotentialSpec& spec, double x);
double derivative_closed(const PotentialSpec& spec, double x);

// w_i = (1/psi(a_i)) / sum_j (1/psi(a_j)), computed as
// exp(min_j log psi(a_j) - log psi(a_i)) normalized, so arguments as small
// as 1e-300 neither overflow nor divide by zero.
std::vector<double> selection_weights(const PotentialSpec& spec,
                                      std::span<const double> abs_means);
void selection_weights_into(const PotentialSpec& spec,
                            std::span<const double> abs_means,
                            std::span<double> out);

}  // namespace bandit
