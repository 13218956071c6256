#include "regimelab/sensitivity.hpp"

#include <algorithm>
#include <cmath>

namespace regimelab {

namespace detail {

SensitivityBundle compute_derivs(double gap, const RegimeProbs& unclamped,
                                 const ModelParams& params) {
  const double s = unclamped.p_fr_lat;
  const double m = unclamped.p_mn_lat;
  const double p_mn = unclamped.p_mn;  // kappa * m, no clamp

  const double ds = params.beta * s * (1.0 - s);
  const double d2s = params.beta * params.beta * s * (1.0 - s) * (1.0 - 2.0 * s);

  const double sgn = (gap > 0.0) ? 1.0 : (gap < 0.0 ? -1.0 : 0.0);
  const double dz = params.alpha * sgn + params.gamma * ds;
  const double d2z = params.gamma * d2s;

  const double dm = m * (1.0 - m) * dz;
  const double d2m = m * (1.0 - m) * d2z + (1.0 - 2.0 * m) * (m * (1.0 - m)) * dz * dz;

  const double d_p_mn = params.kappa * dm;
  const double d2_p_mn = params.kappa * d2m;

  SensitivityBundle b;
  b.d_p_fr_lat = ds;
  b.d_p_mn_lat = dm;
  b.d_p_mn = d_p_mn;
  b.d_p_fr = (1.0 - p_mn) * ds - s * d_p_mn;
  b.d2_p_fr = (1.0 - p_mn) * d2s - 2.0 * ds * d_p_mn - s * d2_p_mn;
  b.d_p_np = -(1.0 - s) * d_p_mn - (1.0 - p_mn) * ds;
  return b;
}

}  // namespace detail

SensitivityBundle derivs_wrt_gap(double gap, const ModelParams& params) {
  params.validate();
  if (!std::isfinite(gap)) {
    throw ParameterError("derivs_wrt_gap: non-finite gap");
  }
  return detail::compute_derivs(gap, detail::compute_probs_unclamped(gap, params), params);
}

SensitivityBundle derivs_wrt_pressure(const TheoreticalParams& tp) {
  tp.validate();
  ModelParams reduced = tp.model;
  reduced.kappa = capacity(tp.competence, tp.eta, tp.c0);
  return derivs_wrt_gap(tp.pressure - tp.competence, reduced);
}

double finite_diff_check(double gap, const ModelParams& params, double step) {
  params.validate();
  if (!(step >= 1e-8 && step <= 1e-3)) {
    throw ParameterError("finite_diff_check: step must be in [1e-8, 1e-3]");
  }
  if (std::fabs(gap) <= step) {
    throw KinkError("finite_diff_check: gap within step of the kink at 0");
  }

  const SensitivityBundle b = derivs_wrt_gap(gap, params);
  const RegimeProbs hi = regime_probs_unclamped(gap + step, params);
  const RegimeProbs lo = regime_probs_unclamped(gap - step, params);
  const double inv2h = 1.0 / (2.0 * step);

  const auto rel = [](double analytic, double numeric) {
    return std::fabs(analytic - numeric) / std::max(std::fabs(analytic), 1e-8);
  };

  double worst = rel(b.d_p_np, (hi.p_np - lo.p_np) * inv2h);
  worst = std::max(worst, rel(b.d_p_fr, (hi.p_fr - lo.p_fr) * inv2h));
  worst = std::max(worst, rel(b.d_p_mn, (hi.p_mn - lo.p_mn) * inv2h));
  worst = std::max(worst, rel(b.d_p_fr_lat, (hi.p_fr_lat - lo.p_fr_lat) * inv2h));
  worst = std::max(worst, rel(b.d_p_mn_lat, (hi.p_mn_lat - lo.p_mn_lat) * inv2h));
  return worst;
}

}  // namespace regimelab
