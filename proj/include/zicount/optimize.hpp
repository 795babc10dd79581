#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zicount/linalg.hpp"

namespace zicount {

/// Objective value together with its analytic gradient.
struct ValueGradient {
  double value = 0.0;
  std::vector<double> gradient;
};

using Objective = std::function<ValueGradient(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct OptimControls {
  double gradient_tol = 1e-7;    // infinity norm of the gradient
  double rel_obj_tol = 1e-10;    // relative objective change per step
  std::size_t max_iterations = 500;
  int max_halvings = 40;         // Armijo backtracking, halving factor 0.5
};

struct OptimResult {
  std::vector<double> argmax;
  double max_value = 0.0;
  double gradient_norm = 0.0;  // infinity norm at argmax
  std::size_t iterations = 0;
  bool converged = false;
};

/// Quasi-Newton (BFGS inverse-Hessian update) ascent with Armijo backtracking.
/// The objective must be finite at the start point; non-finite trial values are
/// handled by step halving, and NonFiniteObjective is thrown only when every
/// trial in a line search fails to produce finite value and gradient.
/// Hitting the iteration cap returns converged=false, not an error.
OptimResult maximize(const Objective& objective, std::vector<double> start,
                     const OptimControls& controls = OptimControls{});

/// Observed information: minus the symmetrized numerical Jacobian of the
/// gradient at theta_hat. Central differences with per-coordinate step
/// step * max(1, |theta_j|). Throws NonFiniteObjective if a probe is non-finite.
Matrix observed_information(const GradientFn& gradient,
                            const std::vector<double>& theta_hat,
                            double step = 1e-5);

}  // namespace zicount
