#pragma once

#include <cstdint>
#include <vector>

#include "regimelab/corpus.hpp"
#include "regimelab/estimation.hpp"
#include "regimelab/model.hpp"

namespace regimelab {

enum class Scenario : int {
  random_walk = 0,    // G_1 = g0, G_t = G_{t-1} + sig_rw * z_t
  piecewise_ramp = 1  // hold at g0, rise linearly, hold at |g0|, plus noise
};

// Generator spec for synthetic corpora. Sampling is fully determined by
// (spec, seed): the trajectory draws from RNG stream 1 and the label
// emission from stream 2, both seeded with `seed`.
struct SynthSpec {
  int length = 86;
  double sig_rw = 0.3;
  double g0 = -2.0;
  ModelParams params;
  std::int64_t seed = 0;
  Scenario scenario = Scenario::piecewise_ramp;

  void validate() const;
};

std::vector<double> sample_trajectory(const SynthSpec& spec);

// Independent categorical draw per turn from regime_probs(G_t).
std::vector<Label> sample_labels(const std::vector<double>& trajectory,
                                 const ModelParams& params, std::int64_t seed);

// Wraps a label sequence as a corpus with turn indices 1..T and empty
// text fields, so synthetic data flows through the regular loader.
LabeledCorpus corpus_from_labels(const std::vector<Label>& labels);

struct RecoveryReport {
  double correlation = 0.0;  // r(true, fitted); 0 when either side is constant
  double rmse = 0.0;
  double rmse_zeros = 0.0;            // baseline: all-zeros trajectory
  double correlation_shuffled = 0.0;  // baseline: refit on shuffled labels
  bool pass_rmse = false;             // rmse < rmse_zeros
  bool pass_correlation = false;      // correlation > correlation_shuffled
};

// Compares a fitted trajectory against the generating one. The shuffled
// baseline permutes the fit's labels (RNG stream 3, seeded from the fit
// config) and refits with the same configuration.
RecoveryReport recovery_report(const std::vector<double>& true_gap,
                               const FitResult& fit);

// Pearson correlation with the degenerate-variance convention: 0 when
// either argument has zero variance.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

double rmse(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace regimelab
