#include "regimelab/synthesis.hpp"

#include <cmath>
#include <cstddef>

#include "regimelab/rng.hpp"

namespace regimelab {

namespace {
// Fixed RNG stream ids; see rng.hpp.
constexpr std::uint64_t kTrajectoryStream = 1;
constexpr std::uint64_t kLabelStream = 2;
constexpr std::uint64_t kShuffleStream = 3;
}  // namespace

void SynthSpec::validate() const {
  if (length < 2) {
    throw ParameterError("SynthSpec: length must be >= 2");
  }
  if (!(std::isfinite(sig_rw) && sig_rw > 0.0)) {
    throw ParameterError("SynthSpec: sig_rw must be finite and > 0");
  }
  if (!std::isfinite(g0)) {
    throw ParameterError("SynthSpec: g0 must be finite");
  }
  params.validate();
}

std::vector<double> sample_trajectory(const SynthSpec& spec) {
  spec.validate();
  Pcg32 rng(static_cast<std::uint64_t>(spec.seed), kTrajectoryStream);
  std::vector<double> g(spec.length);

  if (spec.scenario == Scenario::random_walk) {
    g[0] = spec.g0;
    for (int t = 1; t < spec.length; ++t) {
      g[t] = g[t - 1] + spec.sig_rw * rng.next_normal();
    }
    return g;
  }

  // piecewise_ramp: hold at g0 through the first third, rise linearly
  // through the middle, hold at |g0| over the final third. Noise of scale
  // sig_rw is added on top so the labels are not a deterministic function
  // of position.
  const int t_count = spec.length;
  const int first_end = t_count / 3;        // last position of the low plateau
  const int ramp_end = (2 * t_count) / 3;   // last position of the ramp
  const double high = std::fabs(spec.g0);
  for (int t = 0; t < t_count; ++t) {
    double base;
    if (t < first_end) {
      base = spec.g0;
    } else if (t < ramp_end) {
      const double frac = static_cast<double>(t - first_end + 1) /
                          static_cast<double>(ramp_end - first_end + 1);
      base = spec.g0 + frac * (high - spec.g0);
    } else {
      base = high;
    }
    g[t] = base + spec.sig_rw * rng.next_normal();
  }
  return g;
}

std::vector<Label> sample_labels(const std::vector<double>& trajectory,
                                 const ModelParams& params, std::int64_t seed) {
  params.validate();
  Pcg32 rng(static_cast<std::uint64_t>(seed), kLabelStream);
  std::vector<Label> labels;
  labels.reserve(trajectory.size());
  for (const double g : trajectory) {
    if (!std::isfinite(g)) {
      throw ParameterError("sample_labels: non-finite gap value");
    }
    const RegimeProbs p = regime_probs(g, params);
    const double total = p.p_np + p.p_fr + p.p_mn;
    const double u = rng.next_double() * total;
    Label y = Label::MN;
    if (u < p.p_np) {
      y = Label::NP;
    } else if (u < p.p_np + p.p_fr) {
      y = Label::FR;
    }
    labels.push_back(y);
  }
  return labels;
}

LabeledCorpus corpus_from_labels(const std::vector<Label>& labels) {
  LabeledCorpus corpus;
  corpus.turns.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    LabeledTurn t;
    t.turn = static_cast<int>(i + 1);
    t.label = labels[i];
    corpus.turns.push_back(std::move(t));
  }
  return corpus;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ShapeError("pearson: length mismatch");
  }
  const double n = static_cast<double>(a.size());
  if (a.empty()) return 0.0;
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

double rmse(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ShapeError("rmse: length mismatch");
  }
  if (a.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

RecoveryReport recovery_report(const std::vector<double>& true_gap,
                               const FitResult& fit) {
  const std::vector<double>& fitted = fit.params_hat.gap_trajectory;
  if (true_gap.size() != fitted.size()) {
    throw ShapeError("recovery_report: trajectory length mismatch");
  }

  RecoveryReport report;
  report.correlation = pearson(true_gap, fitted);
  report.rmse = rmse(true_gap, fitted);
  report.rmse_zeros = rmse(true_gap, std::vector<double>(true_gap.size(), 0.0));

  // Shuffled-label baseline: permute the labels, refit with the identical
  // configuration, and correlate that trajectory with the truth.
  std::vector<Label> shuffled = fit.labels;
  Pcg32 rng(static_cast<std::uint64_t>(fit.config.optimizer.seed), kShuffleStream);
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    const std::uint32_t j = rng.next_below(static_cast<std::uint32_t>(i));
    std::swap(shuffled[i - 1], shuffled[j]);
  }
  LabeledCorpus shuffled_corpus = corpus_from_labels(shuffled);
  for (std::size_t i = 0; i < shuffled_corpus.turns.size(); ++i) {
    shuffled_corpus.turns[i].turn = fit.turn_indices[i];
  }
  const FitResult shuffled_fit = fit_map(shuffled_corpus, fit.config);
  report.correlation_shuffled = pearson(true_gap, shuffled_fit.params_hat.gap_trajectory);

  report.pass_rmse = report.rmse < report.rmse_zeros;
  report.pass_correlation = report.correlation > report.correlation_shuffled;
  return report;
}

}  // namespace regimelab
