#include "regimelab/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace regimelab {

const char* to_string(Label label) {
  switch (label) {
    case Label::NP: return "NP";
    case Label::FR: return "FR";
    case Label::MN: return "MN";
  }
  return "??";
}

Label label_from_string(const std::string& text) {
  if (text == "NP") return Label::NP;
  if (text == "FR") return Label::FR;
  if (text == "MN") return Label::MN;
  throw SchemaError("unknown label \"" + text + "\" (expected NP, FR, or MN)");
}

std::vector<Label> LabeledCorpus::labels() const {
  std::vector<Label> out;
  out.reserve(turns.size());
  for (const auto& t : turns) out.push_back(t.label);
  return out;
}

std::vector<int> LabeledCorpus::turn_indices() const {
  std::vector<int> out;
  out.reserve(turns.size());
  for (const auto& t : turns) out.push_back(t.turn);
  return out;
}

bool LabeledCorpus::has_label(Label label) const {
  return std::any_of(turns.begin(), turns.end(),
                     [label](const LabeledTurn& t) { return t.label == label; });
}

namespace {

void validate_order(const LabeledCorpus& corpus) {
  if (corpus.turns.empty()) {
    throw OrderError("corpus is empty");
  }
  int prev = 0;
  for (const auto& t : corpus.turns) {
    if (t.turn <= prev) {
      throw OrderError("turn indices must be strictly increasing (turn " +
                           std::to_string(t.turn) + " after " + std::to_string(prev) + ")",
                       t.turn);
    }
    prev = t.turn;
  }
}

}  // namespace

LabeledCorpus load_corpus(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw SchemaError("corpus document must be a JSON array of turn objects");
  }

  LabeledCorpus corpus;
  corpus.turns.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_object()) {
      throw SchemaError("corpus entries must be JSON objects");
    }
    LabeledTurn t;
    if (!item.contains("turn") || !item["turn"].is_number_integer()) {
      throw SchemaError("turn entry missing integer \"turn\" field");
    }
    t.turn = item["turn"].get<int>();
    if (t.turn < 1) {
      throw SchemaError("turn index must be >= 1", t.turn);
    }
    if (!item.contains("label") || !item["label"].is_string()) {
      throw SchemaError("missing string \"label\" field", t.turn);
    }
    try {
      t.label = label_from_string(item["label"].get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(std::string(e.what()) + " at turn " + std::to_string(t.turn),
                        t.turn);
    }
    if (item.contains("user") && item["user"].is_string()) {
      t.user = item["user"].get<std::string>();
    }
    if (item.contains("assistant") && item["assistant"].is_string()) {
      t.assistant = item["assistant"].get<std::string>();
    }
    corpus.turns.push_back(std::move(t));
  }
  validate_order(corpus);
  return corpus;
}

LabeledCorpus load_corpus(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_corpus(buf.str());
}

LabeledCorpus load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open corpus file: " + path);
  }
  return load_corpus(in);
}

std::string serialize_corpus(const LabeledCorpus& corpus) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& t : corpus.turns) {
    doc.push_back({{"turn", t.turn},
                   {"user", t.user},
                   {"assistant", t.assistant},
                   {"label", to_string(t.label)}});
  }
  return doc.dump(2) + "\n";
}

std::vector<std::pair<int, Label>> label_strip(const LabeledCorpus& corpus) {
  std::vector<std::pair<int, Label>> out;
  out.reserve(corpus.size());
  for (const auto& t : corpus.turns) out.emplace_back(t.turn, t.label);
  return out;
}

std::vector<std::array<int, 3>> cumulative_counts(const LabeledCorpus& corpus) {
  std::vector<std::array<int, 3>> out;
  out.reserve(corpus.size());
  std::array<int, 3> acc{0, 0, 0};
  for (const auto& t : corpus.turns) {
    acc[static_cast<int>(t.label)] += 1;
    out.push_back(acc);
  }
  return out;
}

std::vector<std::array<double, 3>> sliding_proportions(const LabeledCorpus& corpus,
                                                       int window) {
  if (window < 1) {
    throw ParameterError("sliding_proportions: window must be >= 1");
  }
  const auto labels = corpus.labels();
  std::vector<std::array<double, 3>> out;
  out.reserve(labels.size());
  std::array<int, 3> counts{0, 0, 0};
  for (std::size_t t = 0; t < labels.size(); ++t) {
    counts[static_cast<int>(labels[t])] += 1;
    if (t >= static_cast<std::size_t>(window)) {
      counts[static_cast<int>(labels[t - window])] -= 1;
    }
    const double len = static_cast<double>(std::min<std::size_t>(t + 1, window));
    out.push_back({counts[0] / len, counts[1] / len, counts[2] / len});
  }
  return out;
}

void write_dynamics_csv(std::ostream& out, const LabeledCorpus& corpus, int window) {
  const auto cum = cumulative_counts(corpus);
  const auto win = sliding_proportions(corpus, window);
  out << "position,turn,label,cum_np,cum_fr,cum_mn,win_np,win_fr,win_mn\n";
  char buf[64];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& t = corpus.turns[i];
    out << (i + 1) << ',' << t.turn << ',' << to_string(t.label) << ','
        << cum[i][0] << ',' << cum[i][1] << ',' << cum[i][2];
    for (const double p : win[i]) {
      std::snprintf(buf, sizeof(buf), ",%.6f", p);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace regimelab
