#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "regimelab/errors.hpp"

namespace regimelab {

// Mutually exclusive turn codes. Array-valued analytics index by this
// order: [NP, FR, MN].
enum class Label : int { NP = 0, FR = 1, MN = 2 };

const char* to_string(Label label);

// Accepts exactly "NP", "FR", "MN"; anything else is a SchemaError.
Label label_from_string(const std::string& text);

struct LabeledTurn {
  int turn = 0;  // index in the original session, >= 1
  std::string user;
  std::string assistant;
  Label label = Label::NP;
};

// Ordered, non-empty sequence of labeled turns with strictly increasing
// turn indices. Gaps are allowed (a released corpus may expose only a
// subset of a session); analytics run over positions and carry the
// original turn index as metadata.
struct LabeledCorpus {
  std::vector<LabeledTurn> turns;

  std::size_t size() const { return turns.size(); }
  std::vector<Label> labels() const;
  std::vector<int> turn_indices() const;
  bool has_label(Label label) const;
};

// Parse and validate the JSON corpus format: an array of objects with
// keys "turn", "user", "assistant", "label". Unknown extra keys are
// ignored; missing text fields default to empty.
LabeledCorpus load_corpus(const std::string& json_text);
LabeledCorpus load_corpus(std::istream& in);
LabeledCorpus load_corpus_file(const std::string& path);

// Inverse of load_corpus on (turn, label) pairs; text fields round-trip
// verbatim.
std::string serialize_corpus(const LabeledCorpus& corpus);

// Labels in turn order, paired with the original turn indices.
std::vector<std::pair<int, Label>> label_strip(const LabeledCorpus& corpus);

// Per-position counts of each label among positions 1..t.
std::vector<std::array<int, 3>> cumulative_counts(const LabeledCorpus& corpus);

// Per-position label proportions over the trailing window
// [max(1, t-window+1) .. t]. The window is truncated at the start, so
// every triple sums to 1. Requires window >= 1.
std::vector<std::array<double, 3>> sliding_proportions(const LabeledCorpus& corpus,
                                                       int window);

// CSV dump of the label-dynamics series:
//   position,turn,label,cum_np,cum_fr,cum_mn,win_np,win_fr,win_mn
// with proportions at 6 decimal places.
void write_dynamics_csv(std::ostream& out, const LabeledCorpus& corpus, int window);

}  // namespace regimelab
