#pragma once

#include <functional>
#include <vector>

namespace regimelab::detail {

// Objective callback: fills `grad` (same length as x) and returns f(x).
using GradObjective =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

struct LbfgsOptions {
  int max_iterations = 5000;
  double gradient_tolerance = 1e-8;  // on the max-norm of the gradient
  int history = 10;
};

struct LbfgsReport {
  bool converged = false;
  int iterations = 0;
  double value = 0.0;
};

// Limited-memory BFGS with backtracking Armijo line search. Entirely
// deterministic: no randomization, no parallel reductions. The best
// visited point is written back to x even when the iteration cap is hit.
LbfgsReport minimize_lbfgs(const GradObjective& objective, std::vector<double>& x,
                           const LbfgsOptions& options);

}  // namespace regimelab::detail
