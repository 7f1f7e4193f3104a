#pragma once

#include <cstddef>
#include <functional>

namespace bandit {

struct QuadratureResult {
  double value = 0.0;
  // Sum over subintervals of |K15 - G7|.
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b]: the
// subinterval with the largest error estimate is bisected until the total
// estimate drops below abs_tol or max_subintervals is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol,
                                    std::size_t max_subintervals = 2000);

}  // namespace bandit
