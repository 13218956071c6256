#include "lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>

namespace regimelab::detail {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct Pair {
  std::vector<double> s;  // x_{k+1} - x_k
  std::vector<double> y;  // g_{k+1} - g_k
  double rho;             // 1 / (y . s)
};

}  // namespace

LbfgsReport minimize_lbfgs(const GradObjective& objective, std::vector<double>& x,
                           const LbfgsOptions& options) {
  const std::size_t n = x.size();
  std::vector<double> grad(n), new_x(n), new_grad(n), direction(n);
  std::deque<Pair> pairs;

  double f = objective(x, grad);
  std::vector<double> best_x = x;
  double best_f = f;

  LbfgsReport report;
  report.value = f;

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (max_norm(grad) <= options.gradient_tolerance) {
      report.converged = true;
      break;
    }

    // Two-loop recursion for the search direction.
    direction = grad;
    std::vector<double> alpha_coefs(pairs.size());
    for (std::size_t i = pairs.size(); i-- > 0;) {
      const Pair& p = pairs[i];
      alpha_coefs[i] = p.rho * dot(p.s, direction);
      for (std::size_t j = 0; j < n; ++j) direction[j] -= alpha_coefs[i] * p.y[j];
    }
    if (!pairs.empty()) {
      const Pair& last = pairs.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& d : direction) d *= gamma;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Pair& p = pairs[i];
      const double beta = p.rho * dot(p.y, direction);
      for (std::size_t j = 0; j < n; ++j) direction[j] += (alpha_coefs[i] - beta) * p.s[j];
    }
    for (double& d : direction) d = -d;

    double dir_deriv = dot(grad, direction);
    if (!(dir_deriv < 0.0)) {
      // Not a descent direction (stale curvature pairs); restart from the
      // steepest descent direction.
      pairs.clear();
      for (std::size_t j = 0; j < n; ++j) direction[j] = -grad[j];
      dir_deriv = dot(grad, direction);
      if (!(dir_deriv < 0.0)) break;  // gradient is zero or non-finite
    }

    // Backtracking Armijo search.
    double step = pairs.empty() ? std::min(1.0, 1.0 / std::max(max_norm(grad), 1e-12))
                                : 1.0;
    constexpr double kArmijo = 1e-4;
    constexpr double kShrink = 0.5;
    double new_f = f;
    bool accepted = false;
    for (int trial = 0; trial < 60; ++trial) {
      for (std::size_t j = 0; j < n; ++j) new_x[j] = x[j] + step * direction[j];
      new_f = objective(new_x, new_grad);
      if (std::isfinite(new_f) && new_f <= f + kArmijo * step * dir_deriv) {
        accepted = true;
        break;
      }
      step *= kShrink;
    }
    if (!accepted) break;  // step underflow; keep the best point found

    // Curvature pair; skip the update when y.s is too small to be useful.
    Pair p;
    p.s.resize(n);
    p.y.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      p.s[j] = new_x[j] - x[j];
      p.y[j] = new_grad[j] - grad[j];
    }
    const double ys = dot(p.y, p.s);
    if (ys > 1e-12 * std::sqrt(dot(p.y, p.y)) * std::sqrt(dot(p.s, p.s))) {
      p.rho = 1.0 / ys;
      pairs.push_back(std::move(p));
      if (pairs.size() > static_cast<std::size_t>(options.history)) pairs.pop_front();
    }

    x.swap(new_x);
    grad.swap(new_grad);
    f = new_f;
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }

  if (best_f < f) {
    x = best_x;
    f = best_f;
  }
  report.iterations = iter;
  report.value = f;
  return report;
}

}  // namespace regimelab::detail
