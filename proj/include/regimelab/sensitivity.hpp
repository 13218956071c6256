#pragma once

#include "regimelab/model.hpp"

namespace regimelab {

/**
 * First- and second-order responses of the regime probabilities to the
 * gap. Derivatives are taken on the unclamped map; the clamp is a
 * presentation guard and is not differentiated. Conventions at the |G|
 * kink: sgn(0) = 0, and the second-derivative impulse at 0 is dropped.
 *
 * The first-order triple is exactly zero-sum: d_p_np + d_p_fr + d_p_mn = 0.
 */
struct SensitivityBundle {
  double d_p_np = 0.0;
  double d_p_fr = 0.0;
  double d_p_mn = 0.0;
  double d2_p_fr = 0.0;    // FR curvature
  double d_p_fr_lat = 0.0; // ds/dG
  double d_p_mn_lat = 0.0; // dm/dG
};

SensitivityBundle derivs_wrt_gap(double gap, const ModelParams& params);

// Derivatives with respect to the alignment pressure A. With competence
// held fixed, dG/dA = 1, so this equals derivs_wrt_gap at gap = A - C
// with kappa = capacity(C).
SensitivityBundle derivs_wrt_pressure(const TheoreticalParams& tp);

// Maximum relative discrepancy between the analytic first derivatives and
// central finite differences of the unclamped probability map. Relative
// error uses denominator max(|analytic|, 1e-8). Requires step in
// [1e-8, 1e-3]; throws KinkError when |gap| <= step.
double finite_diff_check(double gap, const ModelParams& params, double step);

namespace detail {

// Derivative assembly without parameter validation, from a precomputed
// unclamped bundle at the same (gap, params).
SensitivityBundle compute_derivs(double gap, const RegimeProbs& unclamped,
                                 const ModelParams& params);

}  // namespace detail

}  // namespace regimelab
