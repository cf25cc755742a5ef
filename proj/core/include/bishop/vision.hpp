#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bishop/geometry.hpp"
#include "bishop/scene.hpp"

namespace bishop {

struct VisionParams {
  double group_distance_threshold = 0.15;  // board units, set by hand
  double avs_lambda = 0.7;
};

using ColourTriple = std::array<double, 3>;

struct Group {
  int id = 0;
  std::vector<ObjectId> members;  // sorted
  double cohesion = 0.0;          // mean pairwise centroid distance, board units
};

struct GroupSet {
  std::vector<Group> groups;
  bool empty() const { return groups.empty(); }
};

/// Features computed from a rendered raster: per-object pixel sets, colour
/// averages, centres of mass, distance groups, convex-hull composites and the
/// attentional vector sum. A context belongs to one resolution; composites are
/// registered into it as grouping composers run.
///
/// The raster must outlive the context.
class VisionContext {
 public:
  explicit VisionContext(const Raster& raster, VisionParams params = {},
                         ObjectId composite_id_base = kCompositeIdBase);

  const VisionParams& params() const { return params_; }
  int width() const { return raster_->width; }
  int height() const { return raster_->height; }

  bool contains(ObjectId id) const { return regions_.count(id) > 0; }
  /// Non-composite objects owning at least one pixel, ascending.
  std::vector<ObjectId> base_ids() const;

  std::span<const Pixel> pixels(ObjectId id) const;
  ColourTriple average_rgb(ObjectId id) const;
  Vec2 centroid(ObjectId id) const;
  /// Centroid distance in pixels.
  double distance(ObjectId a, ObjectId b) const;
  /// Centroid distance in board units.
  double board_distance(ObjectId a, ObjectId b) const;
  Vec2 board_to_pixel(BoardPos pos) const;

  /// Single-linkage components (edges between centroids closer than the
  /// threshold) restricted to `candidates`. Singletons are never groups; with
  /// `count` only components of exactly that size are kept.
  GroupSet find_groups(std::span<const ObjectId> candidates,
                       std::optional<int> count = std::nullopt) const;

  /// Registers a composite whose pixel set is the filled convex hull of all
  /// member pixels. Requires at least two members with pixels. Asking again
  /// for the same member set returns the already registered composite.
  SceneObject make_composite(std::span<const ObjectId> members);
  bool is_composite(ObjectId id) const;
  std::span<const ObjectId> members(ObjectId id) const;

  /// Closest pixel pair (landmark pixel, trajector pixel), or nullopt when the
  /// two pixel sets overlap. Ties resolve to the first pair in row-major order.
  std::optional<std::pair<Pixel, Pixel>> closest_pixels(ObjectId landmark,
                                                        ObjectId trajector) const;

  /// Unit direction from landmark to trajector interpolating between the
  /// centre-of-mass vector (weight lambda) and the closest-points vector.
  Vec2 avs_direction(ObjectId trajector, ObjectId landmark) const;
  Vec2 avs_direction(ObjectId trajector, ObjectId landmark, double lambda) const;

  /// align(theta) / max(board distance, 1e-6), align = max(0, 1 - theta/90deg).
  double spatial_score(ObjectId trajector, ObjectId landmark,
                       std::string_view direction) const;

  static const std::map<std::string, Vec2, std::less<>>& reference_vectors();
  static std::optional<Vec2> reference_vector(std::string_view name);

 private:
  struct Region {
    std::vector<Pixel> pixels;    // row-major
    std::vector<Pixel> boundary;  // row-major subsequence of pixels
    Vec2 centroid;
    ColourTriple mean_rgb{};
    std::vector<ObjectId> members;
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
    std::vector<std::uint8_t> mask;  // bounding-box occupancy

    bool covers(Pixel p) const;
  };

  const Region& region(ObjectId id) const;
  void finish_region(Region& r) const;

  const Raster* raster_;
  VisionParams params_;
  ObjectId next_composite_id_;
  std::unordered_map<ObjectId, Region> regions_;
  std::map<std::vector<ObjectId>, ObjectId> composite_index_;
};

/// Convex hull of a point set (monotone chain), counter-clockwise in a y-up
/// sense, without collinear points. Fewer than three points are returned as is
/// after de-duplication.
std::vector<Pixel> convex_hull(std::vector<Pixel> points);

}  // namespace bishop
