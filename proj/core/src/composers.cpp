#include "bishop/composers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "bishop/error.hpp"

namespace bishop {

namespace {

[[noreturn]] void fail(const std::string& why) { throw Error(Errc::kCompositionFailed, why); }

Concept strip_history(Concept c) {
  c.base.reset();
  c.orderings.clear();
  return c;
}

/// The pre-ordering concept of `c`, carrying c's own flags.
Concept root_of(const Concept& c) {
  if (!c.base) return strip_history(c);
  Concept root = *c.base;
  root.ref_kind = c.ref_kind;
  root.determinate = c.determinate;
  root.epoch = c.epoch;
  root.split_groups = c.split_groups;
  root.has_pp = c.has_pp;
  return strip_history(std::move(root));
}

Concept replay(Concept root, std::vector<AppliedOrdering> orderings, const World& world) {
  if (orderings.empty()) return root;
  Concept c = root;
  for (const auto& o : orderings) c = apply_ordering(o.params, c, world);
  c.base = std::make_shared<const Concept>(std::move(root));
  c.orderings = std::move(orderings);
  return c;
}

/// Applies a set-changing step to the base of `arg` and replays its orderings.
template <typename F>
Concept rebase(const Concept& arg, const World& world, F&& step) {
  return replay(step(root_of(arg)), arg.orderings, world);
}

bool has_composite(const Concept& c, const VisionContext& vision) {
  return std::any_of(c.weights.begin(), c.weights.end(),
                     [&](const auto& kv) { return vision.is_composite(kv.first); });
}

RefKind referring(RefKind k) { return k == RefKind::NotReferring ? RefKind::Single : k; }

}  // namespace

VisionContext& World::vision(Epoch epoch) const {
  if (epoch == Epoch::Previous) {
    if (!previous) throw Error(Errc::kAnaphoraUnavailable, "no previous scene");
    return *previous;
  }
  return *current;
}

Concept default_concept(const World& world, RefBehaviour ref) {
  Concept c;
  for (ObjectId id : world.current->base_ids()) c.weights[id] = 1.0;
  c.ref_kind = ref == RefBehaviour::Group    ? RefKind::Group
               : ref == RefBehaviour::Single ? RefKind::Single
                                             : RefKind::NotReferring;
  return c;
}

std::vector<ObjectId> objects_for(const Concept& c, const World& world) {
  const Concept& source = c;
  Concept split;
  const Concept* use = &source;
  if (c.split_groups) {
    split = split_group(c, world);
    use = &split;
  }
  std::vector<ObjectId> ids = referents_group(*use, world.rel_threshold);
  const VisionContext& vision = world.vision(use->epoch);
  std::vector<ObjectId> composites;
  std::copy_if(ids.begin(), ids.end(), std::back_inserter(composites),
               [&](ObjectId id) { return vision.is_composite(id); });
  return composites.empty() ? ids : composites;
}

Concept compose_colour(const ColourModel& model, const Concept& arg, const World& world) {
  return rebase(arg, world, [&](Concept root) {
    const VisionContext& vision = world.vision(root.epoch);
    Concept out = root;
    out.weights.clear();
    for (ObjectId id : objects_for(root, world)) {
      out.weights[id] = model.pdf(vision.average_rgb(id));
    }
    if (out.weights.empty()) fail("colour: no candidates");
    out.ref_kind = referring(root.ref_kind);
    out.split_groups = false;
    return out;
  });
}

Concept apply_ordering(const OrderingParams& params, const Concept& arg, const World& world) {
  const VisionContext& vision = world.vision(arg.epoch);
  const std::vector<ObjectId> ids = objects_for(arg, world);
  if (ids.empty()) fail("ordering: no candidates");

  struct Item {
    ObjectId id;
    double feature;
  };
  std::vector<Item> items;
  Vec2 point;
  if (params.mode == OrderingMode::Region) {
    if (!params.region_point) fail("ordering: region without a reference point");
    point = vision.board_to_pixel(*params.region_point);
  }
  for (ObjectId id : ids) {
    const Vec2 c = vision.centroid(id);
    double f = 0.0;
    if (params.mode == OrderingMode::Region) {
      f = norm(c - point);
    } else {
      f = params.axis == Axis::X ? c.x : c.y;
    }
    items.push_back({id, f});
  }

  Concept out = strip_history(arg);
  out.weights.clear();
  out.ref_kind = referring(arg.ref_kind);
  out.split_groups = false;
  const double g = params.gamma;

  if (params.mode == OrderingMode::Region) {
    double d_max = 0.0;
    for (const auto& it : items) d_max = std::max(d_max, it.feature);
    for (const auto& it : items) {
      const double ratio = (items.size() == 1 || d_max == 0.0) ? 0.0 : it.feature / d_max;
      out.weights[it.id] = std::pow(g, 1.0 + ratio);
    }
    return out;
  }

  const bool max = params.mode == OrderingMode::Max;
  std::stable_sort(items.begin(), items.end(), [max](const Item& a, const Item& b) {
    if (a.feature != b.feature) return max ? a.feature > b.feature : a.feature < b.feature;
    return a.id < b.id;
  });
  double lo = items.front().feature;
  double hi = items.back().feature;
  if (lo > hi) std::swap(lo, hi);
  for (std::size_t rank = 0; rank < items.size(); ++rank) {
    const double v = hi > lo ? (items[rank].feature - lo) / (hi - lo) : 0.0;
    const double exponent = static_cast<double>(rank) * (1.0 + (max ? 1.0 - v : v));
    out.weights[items[rank].id] = std::pow(g, exponent);
  }
  return out;
}

Concept compose_ordering(const OrderingParams& params, int position, const Concept& arg,
                         const World& world) {
  std::vector<AppliedOrdering> orderings = arg.orderings;
  orderings.push_back({position, params});
  std::stable_sort(orderings.begin(), orderings.end(),
                   [](const AppliedOrdering& a, const AppliedOrdering& b) {
                     return a.position < b.position;
                   });
  return replay(root_of(arg), std::move(orderings), world);
}

std::vector<Concept> compose_grouping(std::optional<int> count, const Concept& arg,
                                      const World& world) {
  VisionContext& vision = world.vision(arg.epoch);
  std::vector<ObjectId> candidates;
  for (ObjectId id : objects_for(arg, world)) {
    if (vision.is_composite(id)) {
      const auto m = vision.members(id);
      candidates.insert(candidates.end(), m.begin(), m.end());
    } else {
      candidates.push_back(id);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.size() < 2) fail("grouping: fewer than two candidates");

  const GroupSet groups = vision.find_groups(candidates, count);
  if (groups.empty()) return {};

  Concept out;
  out.ref_kind = RefKind::Group;
  out.determinate = arg.determinate;
  out.epoch = arg.epoch;
  out.has_pp = arg.has_pp;
  const double threshold = vision.params().group_distance_threshold;
  for (const auto& g : groups.groups) {
    const SceneObject composite = vision.make_composite(g.members);
    const double w = std::exp(-g.cohesion / threshold);
    out.weights[composite.id] = w;
    for (ObjectId m : g.members) out.weights[m] = w;
  }
  return {std::move(out)};
}

Concept compose_spatial(std::string_view direction, const Concept& target,
                        const Concept& landmark, const World& world) {
  if (!target.refers() || !landmark.refers()) fail("spatial: arguments must refer");
  const std::vector<ObjectId> landmarks = objects_for(landmark, world);
  return rebase(target, world, [&](Concept root) {
    const Epoch epoch =
        landmark.epoch == Epoch::Previous || root.epoch == Epoch::Previous ? Epoch::Previous
                                                                           : Epoch::Current;
    const VisionContext& vision = world.vision(epoch);
    const VisionContext& target_vision = world.vision(root.epoch);
    auto is_member = [&](ObjectId group, ObjectId id) {
      if (!vision.is_composite(group)) return false;
      const auto m = vision.members(group);
      return std::find(m.begin(), m.end(), id) != m.end();
    };

    Concept out = root;
    out.weights.clear();
    for (ObjectId t : objects_for(root, world)) {
      if (!vision.contains(t) || (epoch != root.epoch && target_vision.is_composite(t))) continue;
      double best = 0.0;
      for (ObjectId l : landmarks) {
        if (t == l || is_member(l, t) || is_member(t, l)) continue;
        try {
          best = std::max(best, vision.spatial_score(t, l, direction));
        } catch (const Error&) {
          // Undefined directions contribute nothing.
        }
      }
      if (best > 0.0) out.weights[t] = best;
    }
    if (out.weights.empty()) fail("spatial: no target satisfies the relation");
    out.ref_kind = RefKind::Single;
    out.split_groups = false;
    out.has_pp = true;
    return out;
  });
}

Concept compose_anaphora(const World& world) {
  if (!world.last_removed || !world.previous) {
    throw Error(Errc::kAnaphoraUnavailable, "no object has been removed yet");
  }
  Concept c;
  c.weights[*world.last_removed] = 1.0;
  c.ref_kind = RefKind::Single;
  c.determinate = true;
  c.epoch = Epoch::Previous;
  return c;
}

Concept compose_select(const Concept& arg, bool determinate) {
  Concept out = arg;
  out.determinate = determinate;
  return out;
}

Concept split_group(const Concept& c, const World& world) {
  const VisionContext& vision = world.vision(c.epoch);
  std::optional<ObjectId> best;
  for (const auto& [id, w] : c.weights) {
    if (vision.is_composite(id) && (!best || w > c.weights.at(*best))) best = id;
  }
  if (!best) return c;
  Concept out = strip_history(c);
  out.weights.clear();
  for (ObjectId m : vision.members(*best)) out.weights[m] = 1.0;
  out.ref_kind = RefKind::Single;
  out.split_groups = false;
  return out;
}

Concept restrict_to_group(const Concept& head, const Concept& groups, const World& world) {
  if (!head.refers() || !groups.refers()) fail("of: arguments must refer");
  // A phrase already modified by a preposition is not a nominal head for
  // "of"; the spatial "to the left of" rules cover that reading.
  if (head.has_pp) fail("of: head already carries a prepositional phrase");
  if (!has_composite(groups, world.vision(groups.epoch))) fail("of: no group to split");

  Concept split = groups;
  split.split_groups = true;
  const Concept members = split_group(split, world);
  return rebase(head, world, [&](Concept root) {
    Concept out = root;
    out.weights.clear();
    for (const auto& [id, w] : members.weights) {
      auto it = root.weights.find(id);
      if (it != root.weights.end()) out.weights[id] = it->second;
    }
    if (out.weights.empty()) fail("of: head and group share no objects");
    out.split_groups = false;
    return out;
  });
}

}  // namespace bishop
