#pragma once

#include "regimelab/errors.hpp"

namespace regimelab {

/**
 * Scalar parameters of the reduced three-regime probability model.
 *
 * The model assigns each dialogue turn a distribution over three regimes
 * (NP / FR / MN) as a function of a single scalar gap G:
 *
 *   s = sigma(beta * G)                          latent FR propensity
 *   Z = alpha * (|G| - tau_a) + gamma * (s - tau_p)
 *   m = sigma(Z)                                 latent MN activation
 *   P_MN = kappa * m                             priority state
 *   P_FR = (1 - P_MN) * s                        residual split
 *   P_NP = (1 - P_MN) * (1 - s)
 *
 * MN consumes probability mass first; FR and NP share the remainder. In
 * the reduced form kappa is a free scalar in [0,1]; see TheoreticalParams
 * for the form where it is derived from a competence level.
 */
struct ModelParams {
  double beta = 1.0;     // FR slope, > 0
  double alpha = 2.0;    // gap-pressure slope, > 0
  double gamma = 1.5;    // FR-coupling slope
  double tau_a = 0.8;    // gap-magnitude threshold
  double tau_p = 0.4;    // FR-propensity threshold
  double kappa = 0.9;    // capacity scalar in [0,1]
  double eps_p = 1e-12;  // probability clamp, in (0, 1e-3)

  // Throws ParameterError if any invariant is violated.
  void validate() const;
};

// Theoretical (C, A) form: the gap is pressure minus competence and the
// capacity scalar is a logistic in competence, kappa := sigma(eta*(C-c0)).
// The kappa field of `model` is ignored on evaluation.
struct TheoreticalParams {
  ModelParams model;
  double eta = 1.0;         // capacity slope, > 0
  double c0 = 0.0;          // capacity threshold competence
  double competence = 0.0;  // C
  double pressure = 0.0;    // A

  void validate() const;
};

// One evaluation of the model at a given gap.
struct RegimeProbs {
  double p_fr_lat = 0.0;  // s
  double p_mn_lat = 0.0;  // m
  double z_mn = 0.0;      // internal activation Z
  double p_mn = 0.0;
  double p_fr = 0.0;
  double p_np = 0.0;
};

// Numerically stable logistic. sigma(+-1000) saturates to exactly 1.0/0.0
// instead of producing NaN. Throws ParameterError on non-finite input.
double logistic(double z);

// s = sigma(beta * gap). Strictly increasing in gap.
double latent_fr(double gap, const ModelParams& params);

// sigma(eta * (competence - c0)). Throws ParameterError unless eta > 0.
double capacity(double competence, double eta, double c0);

struct MnActivation {
  double z = 0.0;
  double p_mn_lat = 0.0;
};

// Z and sigma(Z) at the given gap and latent FR propensity. Even in the
// gap: mn_pressure(g, s) == mn_pressure(-g, s).
MnActivation mn_pressure(double gap, double p_fr_lat, const ModelParams& params);

// Full clamped bundle. Clamp order is fixed: p_mn first, then p_fr and
// p_np computed from the clamped p_mn and clamped themselves. The triple
// sums to 1 within 4 * eps_p.
RegimeProbs regime_probs(double gap, const ModelParams& params);

// Same map without the clamp. This is the map differentiated by the
// sensitivity module.
RegimeProbs regime_probs_unclamped(double gap, const ModelParams& params);

// Theoretical form: gap = A - C, kappa = capacity(C, eta, c0).
RegimeProbs regime_probs_theoretical(const TheoreticalParams& tp);

double clamp_prob(double p, double eps_p);

namespace detail {

// Evaluation without parameter validation. The estimation path may probe
// values outside the public invariants (e.g. alpha <= 0) mid line search;
// the formulas stay well defined there.
RegimeProbs compute_probs_unclamped(double gap, const ModelParams& params);
RegimeProbs apply_clamp(const RegimeProbs& unclamped, double eps_p);

}  // namespace detail

}  // namespace regimelab
