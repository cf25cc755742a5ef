#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bishop/lexicon.hpp"
#include "bishop/scene.hpp"

namespace bishop {

enum class RefKind { NotReferring, Single, Group };
enum class Epoch { Current, Previous };

std::string_view to_string(RefKind k);
std::string_view to_string(Epoch e);

/// An ordering composer recorded on a concept so it can be re-run after the
/// underlying set changes. `position` is the token index of its word.
struct AppliedOrdering {
  int position = 0;
  OrderingParams params;
  friend bool operator==(const AppliedOrdering&, const AppliedOrdering&) = default;
};

/// Weighted referent set passed between composers.
struct Concept {
  std::map<ObjectId, double> weights;
  RefKind ref_kind = RefKind::NotReferring;
  bool determinate = false;
  Epoch epoch = Epoch::Current;
  bool split_groups = false;
  /// Set once a prepositional phrase has attached to this concept.
  bool has_pp = false;

  /// The concept before any ordering composer ran, plus the orderings in
  /// utterance order. Empty `orderings` means `base` is null.
  std::shared_ptr<const Concept> base;
  std::vector<AppliedOrdering> orderings;

  bool refers() const { return ref_kind != RefKind::NotReferring && !weights.empty(); }
  /// Stable text key: weights rounded to 1e-9 plus flags and ordering history.
  std::string identity() const;
  /// "{3:0.38,5:1}"
  std::string weights_string() const;
};

inline constexpr double kDefaultRelThreshold = 0.5;

/// argmax weight, lowest id on ties. Throws Errc::kInvalidArgument when empty.
ObjectId referents_single(const Concept& c);

/// {o : w(o) >= w_min + rel_threshold * (w_max - w_min)}, ascending.
std::vector<ObjectId> referents_group(const Concept& c,
                                      double rel_threshold = kDefaultRelThreshold);

}  // namespace bishop
