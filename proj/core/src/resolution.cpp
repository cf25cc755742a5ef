#include "bishop/resolution.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "bishop/error.hpp"

namespace bishop {

namespace {

/// Maps composites to their lowest member so results are real objects.
ObjectId to_base(ObjectId id, const VisionContext& vision) {
  if (!vision.is_composite(id)) return id;
  const auto m = vision.members(id);
  return *std::min_element(m.begin(), m.end());
}

bool ambiguous(const Candidate& c) {
  if (c.weights.size() < 2) return false;
  double first = -1.0;
  double second = -1.0;
  for (const auto& [id, w] : c.weights) {
    if (w > first) {
      second = first;
      first = w;
    } else if (w > second) {
      second = w;
    }
  }
  return first - second <= kAmbiguityMargin;
}

}  // namespace

std::string_view to_string(Consistency c) {
  switch (c) {
    case Consistency::Consistent:
      return "Consistent";
    case Consistency::WithinGroupAmbiguity:
      return "WithinGroupAmbiguity";
    case Consistency::ContradictingConstituents:
      return "ContradictingConstituents";
    case Consistency::NoReferent:
      return "NoReferent";
  }
  return "?";
}

Filtered filter_candidates(const Chart& chart, const World& world) {
  Filtered out;
  int longest = 0;
  for (const Edge& e : chart.edges()) {
    const Concept* c = as_concept(e.value);
    if (c && c->refers()) longest = std::max(longest, e.length());
  }
  if (longest == 0) return out;

  const auto& edges = chart.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const Concept* c = as_concept(e.value);
    if (!c || !c->refers() || e.length() != longest) continue;
    Candidate cand;
    cand.edge = static_cast<int>(i);
    cand.start = e.start;
    cand.end = e.end;
    cand.category = e.category;
    cand.ref_kind = c->ref_kind;
    cand.determinate = c->determinate;
    cand.epoch = c->epoch;
    cand.top = referents_single(*c);
    cand.referents = referents_group(*c, world.rel_threshold);
    cand.weights = c->weights;
    out.candidates.push_back(std::move(cand));
  }

  const auto& cs = out.candidates;
  const bool all_group = std::all_of(cs.begin(), cs.end(), [](const Candidate& c) {
    return c.ref_kind == RefKind::Group;
  });
  const bool all_single = std::all_of(cs.begin(), cs.end(), [](const Candidate& c) {
    return c.ref_kind == RefKind::Single;
  });
  if (!all_group && !all_single) {
    out.verdict = Consistency::ContradictingConstituents;
    return out;
  }
  if (all_single) {
    for (const auto& c : cs) {
      if (c.determinate && ambiguous(c)) {
        out.verdict = Consistency::WithinGroupAmbiguity;
        return out;
      }
    }
    for (const auto& c : cs) {
      if (c.top != cs.front().top || c.epoch != cs.front().epoch) {
        out.verdict = Consistency::ContradictingConstituents;
        return out;
      }
    }
  } else {
    for (const auto& c : cs) {
      if (c.referents != cs.front().referents) {
        out.verdict = Consistency::ContradictingConstituents;
        return out;
      }
    }
  }
  out.verdict = Consistency::Consistent;
  return out;
}

Resolution select_referent(const Filtered& filtered, const World& world, std::uint64_t seed) {
  Resolution r;
  r.seed = seed;
  r.candidates = filtered.candidates;
  r.consistency = filtered.verdict;
  if (filtered.candidates.empty()) {
    r.consistency = Consistency::NoReferent;
    return r;
  }
  const Candidate& first = filtered.candidates.front();
  const VisionContext& vision = world.vision(first.epoch);

  if (filtered.verdict == Consistency::Consistent) {
    if (first.ref_kind == RefKind::Single) {
      r.chosen = to_base(first.top, vision);
    } else {
      // Best base object within the group.
      std::optional<ObjectId> best;
      for (const auto& [id, w] : first.weights) {
        if (vision.is_composite(id)) continue;
        if (!best || w > first.weights.at(*best)) best = id;
      }
      r.chosen = best ? *best : to_base(first.top, vision);
    }
    return r;
  }

  std::set<ObjectId> pool;
  for (const auto& c : filtered.candidates) {
    const VisionContext& v = world.vision(c.epoch);
    for (ObjectId id : c.referents) {
      if (v.is_composite(id)) {
        for (ObjectId m : v.members(id)) pool.insert(m);
      } else {
        pool.insert(id);
      }
    }
  }
  // Only objects still on the board can be picked.
  std::vector<ObjectId> ids;
  for (ObjectId id : pool) {
    if (world.current->contains(id) && !world.current->is_composite(id)) ids.push_back(id);
  }
  if (ids.empty()) {
    r.consistency = Consistency::NoReferent;
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  r.chosen = ids[pick(rng)];
  r.used_random_tiebreak = true;
  return r;
}

DetailedResolution resolve_detailed(std::string_view utterance, const SceneState& state,
                                    const Lexicon& lexicon, const Grammar& grammar,
                                    std::uint64_t seed) {
  VisionContext current(state.raster());
  std::optional<VisionContext> previous;
  World world;
  world.current = &current;
  if (const SceneSnapshot* prev = state.previous()) {
    previous.emplace(prev->raster, VisionParams{}, kPreviousCompositeIdBase);
    world.previous = &*previous;
    world.last_removed = state.last_removed();
  }
  Chart chart = parse(tokenize(utterance), lexicon, grammar, world);
  const Filtered filtered = filter_candidates(chart, world);
  Resolution r = select_referent(filtered, world, seed);
  if (state.empty()) {
    r.chosen.reset();
    r.consistency = Consistency::NoReferent;
    r.used_random_tiebreak = false;
  }
  return {std::move(r), std::move(chart)};
}

Resolution resolve(std::string_view utterance, const SceneState& state, const Lexicon& lexicon,
                   const Grammar& grammar, std::uint64_t seed) {
  return resolve_detailed(utterance, state, lexicon, grammar, seed).resolution;
}

Resolution resolve(std::string_view utterance, const SceneState& state, const Lexicon& lexicon,
                   std::uint64_t seed) {
  return resolve(utterance, state, lexicon, lexicon.grammar(), seed);
}

nlohmann::json resolution_to_json(const Resolution& r) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : r.candidates) {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [id, w] : c.weights) weights[std::to_string(id)] = w;
    candidates.push_back({{"span", {c.start, c.end}},
                          {"category", std::string(to_string(c.category))},
                          {"ref_kind", std::string(to_string(c.ref_kind))},
                          {"determinate", c.determinate},
                          {"epoch", std::string(to_string(c.epoch))},
                          {"top", c.top},
                          {"referents", c.referents},
                          {"weights", std::move(weights)}});
  }
  return {{"chosen", r.chosen ? nlohmann::json(*r.chosen) : nlohmann::json(nullptr)},
          {"consistency", std::string(to_string(r.consistency))},
          {"used_random_tiebreak", r.used_random_tiebreak},
          {"seed", r.seed},
          {"candidates", std::move(candidates)}};
}

}  // namespace bishop
