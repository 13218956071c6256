#include "regimelab/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "lbfgs.hpp"

namespace regimelab {

double FitConfig::sig_rw() const { return std::sqrt(0.5 / lambda); }

ModelParams FitConfig::make_params(double alpha_hat, double gamma_hat,
                                   double kappa_hat) const {
  ModelParams p;
  p.beta = beta_fixed;
  p.alpha = alpha_hat;
  p.gamma = gamma_hat;
  p.tau_a = tau_a_hat;
  p.tau_p = tau_p_hat;
  p.kappa = kappa_hat;
  p.eps_p = eps_p;
  return p;
}

void FitConfig::validate() const {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw ParameterError("FitConfig: lambda must be finite and > 0");
  }
  if (!(std::isfinite(beta_fixed) && beta_fixed > 0.0)) {
    throw ParameterError("FitConfig: beta_fixed must be finite and > 0");
  }
  if (!std::isfinite(tau_a_hat) || !std::isfinite(tau_p_hat)) {
    throw ParameterError("FitConfig: thresholds must be finite");
  }
  if (!(lam_alpha >= 0.0 && lam_gamma >= 0.0 && lam_kappa >= 0.0)) {
    throw ParameterError("FitConfig: L2 weights must be >= 0");
  }
  if (!(std::isfinite(gauge_w) && gauge_w >= 0.0)) {
    throw ParameterError("FitConfig: gauge_w must be finite and >= 0");
  }
  if (!(eps_p > 0.0 && eps_p < 1e-3)) {
    throw ParameterError("FitConfig: eps_p must be in (0, 1e-3)");
  }
  if (optimizer.max_iterations < 1) {
    throw ParameterError("FitConfig: max_iterations must be >= 1");
  }
  if (!(optimizer.gradient_tolerance > 0.0)) {
    throw ParameterError("FitConfig: gradient_tolerance must be > 0");
  }
}

namespace {

double pick_prob(const RegimeProbs& p, Label y) {
  switch (y) {
    case Label::NP: return p.p_np;
    case Label::FR: return p.p_fr;
    case Label::MN: return p.p_mn;
  }
  return 0.0;
}

// Objective and analytic gradient over the packed vector
// x = [G_1..G_T, alpha, gamma, u] with kappa = sigma(u). Gradients of the
// likelihood use the unclamped probability map; the clamp only guards the
// log evaluation.
class MapObjective {
 public:
  MapObjective(std::vector<Label> labels, const FitConfig& cfg)
      : labels_(std::move(labels)), cfg_(cfg) {}

  std::size_t dim() const { return labels_.size() + 3; }

  double operator()(const std::vector<double>& x, std::vector<double>& grad) const {
    const std::size_t t_count = labels_.size();
    grad.assign(x.size(), 0.0);
    for (const double v : x) {
      if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    }

    const double alpha = x[t_count];
    const double gamma = x[t_count + 1];
    const double u = x[t_count + 2];
    const double kappa = logistic(u);
    const double dkappa_du = kappa * (1.0 - kappa);
    const ModelParams params = cfg_.make_params(alpha, gamma, kappa);

    double nll = 0.0;
    double grad_alpha = 0.0;
    double grad_gamma = 0.0;
    double grad_kappa = 0.0;

    for (std::size_t t = 0; t < t_count; ++t) {
      const double g = x[t];
      const RegimeProbs unc = detail::compute_probs_unclamped(g, params);
      const RegimeProbs cl = detail::apply_clamp(unc, cfg_.eps_p);
      const double p_y = pick_prob(cl, labels_[t]);
      nll -= std::log(p_y);

      const SensitivityBundle sb = detail::compute_derivs(g, unc, params);
      const double s = unc.p_fr_lat;
      const double m = unc.p_mn_lat;
      const double mm = m * (1.0 - m);
      const double dpmn_dalpha = kappa * mm * (std::fabs(g) - cfg_.tau_a_hat);
      const double dpmn_dgamma = kappa * mm * (s - cfg_.tau_p_hat);
      const double dpmn_dkappa = m;

      double dpy_dg = 0.0;
      double label_factor = 0.0;  // dP_y/dtheta = label_factor * dP_MN/dtheta
      switch (labels_[t]) {
        case Label::NP:
          dpy_dg = sb.d_p_np;
          label_factor = -(1.0 - s);
          break;
        case Label::FR:
          dpy_dg = sb.d_p_fr;
          label_factor = -s;
          break;
        case Label::MN:
          dpy_dg = sb.d_p_mn;
          label_factor = 1.0;
          break;
      }
      const double inv_p = 1.0 / p_y;
      grad[t] -= dpy_dg * inv_p;
      grad_alpha -= label_factor * dpmn_dalpha * inv_p;
      grad_gamma -= label_factor * dpmn_dgamma * inv_p;
      grad_kappa -= label_factor * dpmn_dkappa * inv_p;
    }

    // Random-walk increment penalty.
    const double sig2 = cfg_.sig_rw() * cfg_.sig_rw();
    double pen_rw = 0.0;
    for (std::size_t t = 1; t < t_count; ++t) {
      const double d = x[t] - x[t - 1];
      pen_rw += d * d;
      const double dd = d / sig2;
      grad[t] += dd;
      grad[t - 1] -= dd;
    }
    pen_rw = 0.5 * pen_rw / sig2;

    // Gauge penalty on the trajectory mean.
    double mean_g = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) mean_g += x[t];
    mean_g /= static_cast<double>(t_count);
    const double gauge_pen = cfg_.gauge_w * mean_g * mean_g;
    const double dgauge = 2.0 * cfg_.gauge_w * mean_g / static_cast<double>(t_count);
    for (std::size_t t = 0; t < t_count; ++t) grad[t] += dgauge;

    // L2 on the global parameters.
    const double pen_l2 = 0.5 * (cfg_.lam_alpha * alpha * alpha +
                                 cfg_.lam_gamma * gamma * gamma +
                                 cfg_.lam_kappa * kappa * kappa);
    grad_alpha += cfg_.lam_alpha * alpha;
    grad_gamma += cfg_.lam_gamma * gamma;
    grad_kappa += cfg_.lam_kappa * kappa;

    grad[t_count] = grad_alpha;
    grad[t_count + 1] = grad_gamma;
    grad[t_count + 2] = grad_kappa * dkappa_du;

    return nll + pen_rw + gauge_pen + pen_l2;
  }

 private:
  std::vector<Label> labels_;
  FitConfig cfg_;
};

double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

ObjectiveParts neg_logpost(const ParamHat& ph, const std::vector<Label>& labels,
                           const FitConfig& cfg) {
  cfg.validate();
  const std::size_t t_count = ph.gap_trajectory.size();
  if (t_count != labels.size()) {
    throw ShapeError("neg_logpost: trajectory and label lengths differ");
  }
  if (t_count < 2) {
    throw ShapeError("neg_logpost: need at least 2 turns");
  }

  const ModelParams params = cfg.make_params(ph.alpha_hat, ph.gamma_hat, ph.kappa_hat);
  ObjectiveParts parts;

  for (std::size_t t = 0; t < t_count; ++t) {
    const double g = ph.gap_trajectory[t];
    if (!std::isfinite(g)) {
      throw NumericError("neg_logpost: non-finite gap at turn position " +
                             std::to_string(t + 1),
                         static_cast<int>(t + 1));
    }
    const RegimeProbs cl =
        detail::apply_clamp(detail::compute_probs_unclamped(g, params), cfg.eps_p);
    const double term = -std::log(pick_prob(cl, labels[t]));
    if (!std::isfinite(term)) {
      throw NumericError("neg_logpost: non-finite log-likelihood at turn position " +
                             std::to_string(t + 1),
                         static_cast<int>(t + 1));
    }
    parts.neg_loglik += term;
  }

  const double sig2 = cfg.sig_rw() * cfg.sig_rw();
  double sum_sq = 0.0;
  for (std::size_t t = 1; t < t_count; ++t) {
    const double d = ph.gap_trajectory[t] - ph.gap_trajectory[t - 1];
    sum_sq += d * d;
  }
  parts.pen_rw = 0.5 * sum_sq / sig2;

  double mean_g = 0.0;
  for (const double g : ph.gap_trajectory) mean_g += g;
  mean_g /= static_cast<double>(t_count);
  parts.gauge_pen = cfg.gauge_w * mean_g * mean_g;

  parts.pen_l2 = 0.5 * (cfg.lam_alpha * ph.alpha_hat * ph.alpha_hat +
                        cfg.lam_gamma * ph.gamma_hat * ph.gamma_hat +
                        cfg.lam_kappa * ph.kappa_hat * ph.kappa_hat);

  parts.neg_logpost = parts.neg_loglik + parts.pen_rw + parts.gauge_pen + parts.pen_l2;
  if (!std::isfinite(parts.neg_logpost)) {
    throw NumericError("neg_logpost: non-finite objective");
  }
  return parts;
}

FitResult fit_map(const LabeledCorpus& corpus, const FitConfig& cfg) {
  ParamHat init;
  init.gap_trajectory.assign(corpus.size(), 0.0);
  init.alpha_hat = 1.0;
  init.gamma_hat = 1.0;
  init.kappa_hat = 0.5;
  return fit_map(corpus, cfg, init);
}

FitResult fit_map(const LabeledCorpus& corpus, const FitConfig& cfg,
                  const ParamHat& init) {
  cfg.validate();
  const std::size_t t_count = corpus.size();
  if (t_count < 2) {
    throw ShapeError("fit_map: corpus must contain at least 2 turns");
  }
  if (init.gap_trajectory.size() != t_count) {
    throw ShapeError("fit_map: init trajectory length does not match corpus");
  }

  const std::vector<Label> labels = corpus.labels();
  MapObjective objective(labels, cfg);

  std::vector<double> x(t_count + 3);
  std::copy(init.gap_trajectory.begin(), init.gap_trajectory.end(), x.begin());
  x[t_count] = init.alpha_hat;
  x[t_count + 1] = init.gamma_hat;
  // Keep the start strictly inside (0,1) so the reparameterization is finite.
  x[t_count + 2] = logit(std::clamp(init.kappa_hat, 1e-9, 1.0 - 1e-9));

  detail::LbfgsOptions opt;
  opt.max_iterations = cfg.optimizer.max_iterations;
  opt.gradient_tolerance = cfg.optimizer.gradient_tolerance;
  const detail::LbfgsReport report = detail::minimize_lbfgs(
      [&objective](const std::vector<double>& p, std::vector<double>& g) {
        return objective(p, g);
      },
      x, opt);

  FitResult fit;
  fit.params_hat.gap_trajectory.assign(x.begin(), x.begin() + t_count);
  fit.params_hat.alpha_hat = x[t_count];
  fit.params_hat.gamma_hat = x[t_count + 1];
  fit.params_hat.kappa_hat = logistic(x[t_count + 2]);
  fit.objective = neg_logpost(fit.params_hat, labels, cfg);
  fit.converged = report.converged;
  fit.iterations = report.iterations;
  fit.labels = labels;
  fit.turn_indices = corpus.turn_indices();
  fit.config = cfg;

  const ModelParams params = cfg.make_params(
      fit.params_hat.alpha_hat, fit.params_hat.gamma_hat, fit.params_hat.kappa_hat);
  fit.probs.reserve(t_count);
  for (const double g : fit.params_hat.gap_trajectory) {
    fit.probs.push_back(
        detail::apply_clamp(detail::compute_probs_unclamped(g, params), cfg.eps_p));
  }
  return fit;
}

std::vector<double> default_lambda_grid() {
  constexpr int kPoints = 25;
  const double lo = std::log(0.1);
  const double hi = std::log(10.0);
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / (kPoints - 1));
  }
  grid.front() = 0.1;
  grid.back() = 10.0;
  return grid;
}

SweepResult lambda_sweep(const LabeledCorpus& corpus, const FitConfig& cfg,
                         const std::vector<double>& grid, bool warm_start) {
  if (grid.size() < 2) {
    throw ParameterError("lambda_sweep: grid must contain at least 2 values");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(std::isfinite(grid[i]) && grid[i] > 0.0)) {
      throw ParameterError("lambda_sweep: grid values must be finite and > 0");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ParameterError("lambda_sweep: grid must be strictly ascending");
    }
  }

  SweepResult out;
  out.grid = grid;
  out.fits.reserve(grid.size());

  for (std::size_t i = 0; i < grid.size(); ++i) {
    FitConfig c = cfg;
    c.lambda = grid[i];
    if (warm_start && i > 0) {
      out.fits.push_back(fit_map(corpus, c, out.fits.back().params_hat));
    } else {
      out.fits.push_back(fit_map(corpus, c));
    }
  }

  const std::size_t t_count = corpus.size();
  out.adj_rmse.reserve(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto& a = out.fits[i].params_hat.gap_trajectory;
    const auto& b = out.fits[i + 1].params_hat.gap_trajectory;
    double acc = 0.0;
    for (std::size_t t = 0; t < t_count; ++t) {
      const double d = b[t] - a[t];
      acc += d * d;
    }
    out.adj_rmse.push_back(std::sqrt(acc / static_cast<double>(t_count)));
  }

  const std::vector<Label> labels = corpus.labels();
  const bool any_mn = corpus.has_label(Label::MN);
  out.mn_calibration.reserve(grid.size());
  for (const auto& fit : out.fits) {
    if (!any_mn) {
      out.mn_calibration.emplace_back(std::nullopt);
      continue;
    }
    double acc = 0.0;
    int n = 0;
    for (std::size_t t = 0; t < t_count; ++t) {
      if (labels[t] == Label::MN) {
        acc += fit.probs[t].p_mn;
        n += 1;
      }
    }
    out.mn_calibration.emplace_back(acc / n);
  }

  if (any_mn) {
    out.selected_lambda = select_lambda(out);
  }
  return out;
}

double select_lambda(const SweepResult& sweep, double target) {
  double best_lambda = 0.0;
  double best_diff = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    if (i >= sweep.mn_calibration.size() || !sweep.mn_calibration[i].has_value()) {
      continue;
    }
    const double diff = std::fabs(*sweep.mn_calibration[i] - target);
    // Strict comparison keeps the smaller lambda on ties (grid ascends).
    if (diff < best_diff) {
      best_diff = diff;
      best_lambda = sweep.grid[i];
      found = true;
    }
  }
  if (!found) {
    throw CalibrationError(
        "select_lambda: no MN-labeled turns, calibration undefined; pass lambda "
        "explicitly");
  }
  return best_lambda;
}

std::vector<RegimeProbs> reconstruct_probs(const FitResult& fit) {
  const ModelParams params = fit.config.make_params(
      fit.params_hat.alpha_hat, fit.params_hat.gamma_hat, fit.params_hat.kappa_hat);
  std::vector<RegimeProbs> out;
  out.reserve(fit.params_hat.gap_trajectory.size());
  for (const double g : fit.params_hat.gap_trajectory) {
    out.push_back(
        detail::apply_clamp(detail::compute_probs_unclamped(g, params), fit.config.eps_p));
  }
  return out;
}

std::vector<SensitivityBundle> trajectory_sensitivities(const FitResult& fit) {
  const ModelParams params = fit.config.make_params(
      fit.params_hat.alpha_hat, fit.params_hat.gamma_hat, fit.params_hat.kappa_hat);
  std::vector<SensitivityBundle> out;
  out.reserve(fit.params_hat.gap_trajectory.size());
  for (const double g : fit.params_hat.gap_trajectory) {
    out.push_back(
        detail::compute_derivs(g, detail::compute_probs_unclamped(g, params), params));
  }
  return out;
}

}  // namespace regimelab
