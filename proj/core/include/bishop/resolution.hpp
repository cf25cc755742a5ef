#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bishop/chart.hpp"
#include "bishop/lexicon.hpp"
#include "bishop/scene.hpp"

namespace bishop {

enum class Consistency { Consistent, WithinGroupAmbiguity, ContradictingConstituents, NoReferent };

std::string_view to_string(Consistency c);

/// Top weights closer than this count as a tie.
inline constexpr double kAmbiguityMargin = 1e-9;

struct Candidate {
  int edge = 0;  // index into the chart
  int start = 0;
  int end = 0;
  Category category = Category::NP;
  RefKind ref_kind = RefKind::Single;
  bool determinate = false;
  Epoch epoch = Epoch::Current;
  ObjectId top = 0;                 // referents_single
  std::vector<ObjectId> referents;  // referents_group
  std::map<ObjectId, double> weights;
};

struct Filtered {
  std::vector<Candidate> candidates;
  Consistency verdict = Consistency::NoReferent;
};

struct Resolution {
  std::optional<ObjectId> chosen;
  Consistency consistency = Consistency::NoReferent;
  bool used_random_tiebreak = false;
  std::uint64_t seed = 0;
  std::vector<Candidate> candidates;
};

/// Referring edges of maximal length, checked for consistency.
Filtered filter_candidates(const Chart& chart, const World& world);

/// Commits to one object. Composite referents map to their lowest member.
Resolution select_referent(const Filtered& filtered, const World& world, std::uint64_t seed);

struct DetailedResolution {
  Resolution resolution;
  Chart chart;
};

/// tokenize, parse, filter and select against the current scene, with the
/// previous scene available to anaphora.
Resolution resolve(std::string_view utterance, const SceneState& state, const Lexicon& lexicon,
                   const Grammar& grammar, std::uint64_t seed);
Resolution resolve(std::string_view utterance, const SceneState& state, const Lexicon& lexicon,
                   std::uint64_t seed);
DetailedResolution resolve_detailed(std::string_view utterance, const SceneState& state,
                                    const Lexicon& lexicon, const Grammar& grammar,
                                    std::uint64_t seed);

nlohmann::json resolution_to_json(const Resolution& r);

}  // namespace bishop
