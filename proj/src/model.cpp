#include "regimelab/model.hpp"

#include <cmath>

namespace regimelab {

void ModelParams::validate() const {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw ParameterError("ModelParams: beta must be finite and > 0");
  }
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw ParameterError("ModelParams: alpha must be finite and > 0");
  }
  if (!std::isfinite(gamma)) {
    throw ParameterError("ModelParams: gamma must be finite");
  }
  if (!std::isfinite(tau_a) || !std::isfinite(tau_p)) {
    throw ParameterError("ModelParams: thresholds must be finite");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw ParameterError("ModelParams: kappa must be in [0, 1]");
  }
  if (!(eps_p > 0.0 && eps_p < 1e-3)) {
    throw ParameterError("ModelParams: eps_p must be in (0, 1e-3)");
  }
}

void TheoreticalParams::validate() const {
  model.validate();
  if (!(std::isfinite(eta) && eta > 0.0)) {
    throw ParameterError("TheoreticalParams: eta must be finite and > 0");
  }
  if (!std::isfinite(c0) || !std::isfinite(competence) || !std::isfinite(pressure)) {
    throw ParameterError("TheoreticalParams: c0, competence, pressure must be finite");
  }
}

double logistic(double z) {
  if (!std::isfinite(z)) {
    throw ParameterError("logistic: non-finite input");
  }
  // Branch on sign so neither exp() argument is large and positive.
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double latent_fr(double gap, const ModelParams& params) {
  params.validate();
  return logistic(params.beta * gap);
}

double capacity(double competence, double eta, double c0) {
  if (!(std::isfinite(eta) && eta > 0.0)) {
    throw ParameterError("capacity: eta must be finite and > 0");
  }
  return logistic(eta * (competence - c0));
}

MnActivation mn_pressure(double gap, double p_fr_lat, const ModelParams& params) {
  params.validate();
  if (!(p_fr_lat > 0.0 && p_fr_lat < 1.0)) {
    throw ParameterError("mn_pressure: p_fr_lat must be in (0, 1)");
  }
  MnActivation a;
  a.z = params.alpha * (std::fabs(gap) - params.tau_a) +
        params.gamma * (p_fr_lat - params.tau_p);
  a.p_mn_lat = logistic(a.z);
  return a;
}

double clamp_prob(double p, double eps_p) {
  if (p < eps_p) return eps_p;
  if (p > 1.0 - eps_p) return 1.0 - eps_p;
  return p;
}

namespace detail {

RegimeProbs compute_probs_unclamped(double gap, const ModelParams& params) {
  RegimeProbs r;
  r.p_fr_lat = logistic(params.beta * gap);
  r.z_mn = params.alpha * (std::fabs(gap) - params.tau_a) +
           params.gamma * (r.p_fr_lat - params.tau_p);
  r.p_mn_lat = logistic(r.z_mn);
  r.p_mn = params.kappa * r.p_mn_lat;
  r.p_fr = (1.0 - r.p_mn) * r.p_fr_lat;
  r.p_np = (1.0 - r.p_mn) * (1.0 - r.p_fr_lat);
  return r;
}

RegimeProbs apply_clamp(const RegimeProbs& unclamped, double eps_p) {
  RegimeProbs r = unclamped;
  // p_mn is clamped first; the residual split uses the clamped value.
  r.p_mn = clamp_prob(r.p_mn, eps_p);
  r.p_fr = clamp_prob((1.0 - r.p_mn) * r.p_fr_lat, eps_p);
  r.p_np = clamp_prob((1.0 - r.p_mn) * (1.0 - r.p_fr_lat), eps_p);
  return r;
}

}  // namespace detail

RegimeProbs regime_probs_unclamped(double gap, const ModelParams& params) {
  params.validate();
  if (!std::isfinite(gap)) {
    throw ParameterError("regime_probs: non-finite gap");
  }
  return detail::compute_probs_unclamped(gap, params);
}

RegimeProbs regime_probs(double gap, const ModelParams& params) {
  return detail::apply_clamp(regime_probs_unclamped(gap, params), params.eps_p);
}

RegimeProbs regime_probs_theoretical(const TheoreticalParams& tp) {
  tp.validate();
  ModelParams reduced = tp.model;
  reduced.kappa = capacity(tp.competence, tp.eta, tp.c0);
  return regime_probs(tp.pressure - tp.competence, reduced);
}

}  // namespace regimelab
