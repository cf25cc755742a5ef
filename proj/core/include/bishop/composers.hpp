#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bishop/colour_model.hpp"
#include "bishop/concept.hpp"
#include "bishop/vision.hpp"

namespace bishop {

/// Composite ids allocated while interpreting against the previous scene.
inline constexpr ObjectId kPreviousCompositeIdBase = 1 << 21;

/// What composers see of the world during one resolution.
struct World {
  VisionContext* current = nullptr;
  VisionContext* previous = nullptr;  // set iff the session has removed an object
  std::optional<ObjectId> last_removed;
  double rel_threshold = kDefaultRelThreshold;

  /// Throws Errc::kAnaphoraUnavailable for Previous without history.
  VisionContext& vision(Epoch epoch) const;
};

/// All visible base objects with weight 1.
Concept default_concept(const World& world, RefBehaviour ref);

/// Candidate objects a composer works on: the concept is split first when its
/// split flag is set, then thresholded with referents_group. When composites
/// survive the threshold only composites are returned.
std::vector<ObjectId> objects_for(const Concept& c, const World& world);

Concept compose_colour(const ColourModel& model, const Concept& arg, const World& world);

/// Adds one ordering and re-runs all recorded orderings over the base concept
/// in utterance order, so stacked extrema do not depend on parse shape.
Concept compose_ordering(const OrderingParams& params, int position, const Concept& arg,
                         const World& world);
/// A single ordering pass without replay bookkeeping.
Concept apply_ordering(const OrderingParams& params, const Concept& arg, const World& world);

/// Zero or one concept holding every qualifying group as a composite plus its
/// members, weighted exp(-cohesion / threshold).
std::vector<Concept> compose_grouping(std::optional<int> count, const Concept& arg,
                                      const World& world);

Concept compose_spatial(std::string_view direction, const Concept& target,
                        const Concept& landmark, const World& world);

Concept compose_anaphora(const World& world);

Concept compose_select(const Concept& arg, bool determinate = true);

/// Replaces the best composite by its members at weight 1. Concepts without
/// composites pass through unchanged.
Concept split_group(const Concept& c, const World& world);

/// "X of Y": splits the group concept `groups` and restricts `head` to the
/// members of its best group, replaying head's orderings.
Concept restrict_to_group(const Concept& head, const Concept& groups, const World& world);

}  // namespace bishop
