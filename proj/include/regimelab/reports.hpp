#pragma once

#include <iosfwd>
#include <string>

#include "regimelab/estimation.hpp"

namespace regimelab {

// fit.json: the full FitResult, numbers at 12 significant digits, fixed
// key order so repeated runs are byte-identical.
void write_fit_json(std::ostream& out, const FitResult& fit);
FitResult read_fit_json(std::istream& in);
FitResult read_fit_json_file(const std::string& path);

// trajectory.csv:
//   position,turn,label,G_hat,p_np,p_fr,p_mn,d_p_np,d_p_fr,d_p_mn,d2_p_fr
void write_trajectory_csv(std::ostream& out, const FitResult& fit);

// sweep.csv:
//   lambda,adj_rmse_prev,mn_calibration,neg_loglik,pen_rw,gauge_pen,pen_l2
// The first row has no previous trajectory and leaves adj_rmse_prev empty;
// mn_calibration is empty when the corpus has no MN turns.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace regimelab
