#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regimelab/corpus.hpp"
#include "regimelab/model.hpp"
#include "regimelab/sensitivity.hpp"

namespace regimelab {

struct OptimizerConfig {
  int max_iterations = 5000;
  double gradient_tolerance = 1e-8;
  std::int64_t seed = 0;
};

/**
 * Configuration of one MAP fit.
 *
 * lambda is the increment-penalty weight; the equivalent random-walk scale
 * is sig_rw = sqrt(0.5 / lambda), so that
 *   lambda * sum((G_t - G_{t-1})^2) == 0.5 * sum(dG^2) / sig_rw^2.
 *
 * Free variables of the fit are the gap trajectory and (alpha, gamma,
 * kappa); beta and the two thresholds stay fixed at the values below.
 * kappa is kept inside [0,1] through a logistic reparameterization.
 */
struct FitConfig {
  double lambda = 1.15;
  double beta_fixed = 1.0;
  double tau_a_hat = 0.8;
  double tau_p_hat = 0.4;
  double lam_alpha = 1e-2;  // L2 weights on the global parameters
  double lam_gamma = 1e-2;
  double lam_kappa = 1e-2;
  double gauge_w = 1e2;  // pins mean(G) near 0, removing the location gauge
  double eps_p = 1e-12;
  OptimizerConfig optimizer;

  double sig_rw() const;
  ModelParams make_params(double alpha_hat, double gamma_hat, double kappa_hat) const;
  void validate() const;
};

struct ParamHat {
  std::vector<double> gap_trajectory;
  double alpha_hat = 1.0;
  double gamma_hat = 1.0;
  double kappa_hat = 0.5;
};

struct ObjectiveParts {
  double neg_logpost = 0.0;
  double neg_loglik = 0.0;
  double pen_rw = 0.0;
  double gauge_pen = 0.0;
  double pen_l2 = 0.0;
};

struct FitResult {
  ParamHat params_hat;
  ObjectiveParts objective;
  std::vector<RegimeProbs> probs;  // clamped bundle at each fitted G_t
  bool converged = false;
  int iterations = 0;
  // Echo of the inputs so reports and downstream tools can re-derive
  // consistency checks from the result alone.
  std::vector<Label> labels;
  std::vector<int> turn_indices;
  FitConfig config;
};

struct SweepResult {
  std::vector<double> grid;
  std::vector<FitResult> fits;
  // adj_rmse[i] is the RMSE between the trajectories fitted at grid[i]
  // and grid[i+1]; length is grid.size() - 1.
  std::vector<double> adj_rmse;
  // Mean P_MN over MN-labeled turns, per lambda; absent when the corpus
  // has no MN turns.
  std::vector<std::optional<double>> mn_calibration;
  std::optional<double> selected_lambda;
};

// Objective decomposition at a given point:
//   neg_loglik = -sum_t log clamp(P_{y_t}(G_t))
//   pen_rw     = 0.5 * sum_{t>=2} (G_t - G_{t-1})^2 / sig_rw^2
//   gauge_pen  = gauge_w * mean(G)^2
//   pen_l2     = 0.5 * (lam_alpha*alpha^2 + lam_gamma*gamma^2 + lam_kappa*kappa^2)
ObjectiveParts neg_logpost(const ParamHat& ph, const std::vector<Label>& labels,
                           const FitConfig& cfg);

// MAP fit from the default start (G = 0, alpha = gamma = 1, kappa = 0.5).
// Deterministic for fixed corpus and config. Hitting the iteration cap is
// not an error; the best visited point is returned with converged=false.
FitResult fit_map(const LabeledCorpus& corpus, const FitConfig& cfg);
FitResult fit_map(const LabeledCorpus& corpus, const FitConfig& cfg,
                  const ParamHat& init);

// 25 log-spaced points on [0.1, 10].
std::vector<double> default_lambda_grid();

// One fit per grid point, warm-started from the previous solution when
// warm_start is true (grid must be strictly ascending and positive).
SweepResult lambda_sweep(const LabeledCorpus& corpus, const FitConfig& cfg,
                         const std::vector<double>& grid, bool warm_start = true);

// Grid lambda whose MN calibration is nearest the target; ties break
// toward the smaller lambda. Throws CalibrationError when no grid point
// has a defined calibration.
double select_lambda(const SweepResult& sweep, double target = 0.5);

// Re-evaluates the probability bundle along the fitted trajectory with
// the fitted parameters; equals fit.probs element-wise.
std::vector<RegimeProbs> reconstruct_probs(const FitResult& fit);

// Gap derivatives at each fitted G_t under the fitted parameters.
std::vector<SensitivityBundle> trajectory_sensitivities(const FitResult& fit);

}  // namespace regimelab
