#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bishop/lexicon.hpp"
#include "bishop/resolution.hpp"
#include "bishop/scene.hpp"

namespace bishop {

/// Strategy tags a corpus record may carry.
inline const std::vector<std::string>& known_tags() {
  static const std::vector<std::string> tags{"colour",   "extremum", "region",
                                             "combined", "grouping", "spatial",
                                             "anaphora", "other",    "error"};
  return tags;
}

/// One utterance of a session. The first record of a session carries the
/// scene; later ones play on the scene left after earlier targets were removed.
struct CorpusRecord {
  std::string session;
  std::optional<int> index;
  std::optional<Scene> scene;
  std::string utterance;
  ObjectId target = 0;
  std::vector<std::string> tags;
  int line = 0;
};

/// JSONL, one record per line; blank lines and lines starting with '#' are
/// skipped. "scene" is an inline scene document or a path relative to
/// `base_dir`. Errors name the offending line.
std::vector<CorpusRecord> parse_corpus(std::string_view text,
                                       const std::filesystem::path& base_dir = {});
std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path);
nlohmann::json corpus_record_to_json(const CorpusRecord& r);

struct RecordOutcome {
  std::string session;
  int line = 0;
  std::string utterance;
  ObjectId target = 0;
  std::optional<ObjectId> chosen;
  Consistency consistency = Consistency::NoReferent;
  bool correct = false;
  std::vector<std::string> tags;
};

struct Tally {
  int total = 0;
  int correct = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct EvalReport {
  std::vector<RecordOutcome> outcomes;
  Tally all;
  Tally all_except_other;
  Tally clean;  // neither "other" nor "error"
  std::map<std::string, Tally> per_tag;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Replays every session in order; the seed of the k-th record is seed + k.
/// Throws Errc::kValidation for an empty corpus or a target missing from the
/// scene at its turn.
EvalReport evaluate_corpus(const std::vector<CorpusRecord>& records, const Lexicon& lexicon,
                           std::uint64_t seed);

struct BaselineReport {
  int sessions = 0;
  int trials = 0;
  int objects = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_error = 0.0;

  nlohmann::json to_json() const;
};

/// Uniform guessing among the objects still on the board; one target is
/// removed per trial. `objects` defaults to `trials`.
BaselineReport run_baseline(int sessions, int trials, std::uint64_t seed,
                            std::optional<int> objects = std::nullopt);

/// H_T / T: expected success rate when objects == trials.
double harmonic_baseline(int trials);

}  // namespace bishop
