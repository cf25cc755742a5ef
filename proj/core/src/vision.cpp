#include "bishop/vision.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "bishop/error.hpp"

namespace bishop {

namespace {

constexpr double kMinScoreDistance = 1e-6;

long long cross_i(Pixel o, Pixel a, Pixel b) {
  return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
         static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 == 0.0 ? 0.0 : std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

Vec2 unit(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

}  // namespace

std::vector<Pixel> convex_hull(std::vector<Pixel> points) {
  std::sort(points.begin(), points.end(), [](Pixel a, Pixel b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;

  std::vector<Pixel> hull(2 * points.size());
  std::size_t k = 0;
  for (const Pixel p : points) {
    while (k >= 2 && cross_i(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const Pixel p = points[i];
    while (k >= lower && cross_i(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool VisionContext::Region::covers(Pixel p) const {
  if (p.x < x0 || p.x > x1 || p.y < y0 || p.y > y1) return false;
  return mask[static_cast<std::size_t>(p.y - y0) * static_cast<std::size_t>(x1 - x0 + 1) +
              static_cast<std::size_t>(p.x - x0)] != 0;
}

VisionContext::VisionContext(const Raster& raster, VisionParams params,
                             ObjectId composite_id_base)
    : raster_(&raster), params_(params), next_composite_id_(composite_id_base) {
  for (int y = 0; y < raster.height; ++y) {
    for (int x = 0; x < raster.width; ++x) {
      const ObjectId id = raster.owner(x, y);
      if (id != kBackground) regions_[id].pixels.push_back({x, y});
    }
  }
  for (auto& [id, r] : regions_) finish_region(r);
}

void VisionContext::finish_region(Region& r) const {
  r.x0 = r.y0 = std::numeric_limits<int>::max();
  r.x1 = r.y1 = std::numeric_limits<int>::min();
  double sx = 0, sy = 0;
  ColourTriple sum{};
  for (const Pixel p : r.pixels) {
    r.x0 = std::min(r.x0, p.x);
    r.x1 = std::max(r.x1, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.y1 = std::max(r.y1, p.y);
    sx += p.x;
    sy += p.y;
    const Rgb c = raster_->colour(p.x, p.y);
    sum[0] += c.r;
    sum[1] += c.g;
    sum[2] += c.b;
  }
  const double n = static_cast<double>(r.pixels.size());
  r.centroid = {sx / n, sy / n};
  r.mean_rgb = {sum[0] / n, sum[1] / n, sum[2] / n};

  const auto w = static_cast<std::size_t>(r.x1 - r.x0 + 1);
  r.mask.assign(w * static_cast<std::size_t>(r.y1 - r.y0 + 1), 0);
  for (const Pixel p : r.pixels) {
    r.mask[static_cast<std::size_t>(p.y - r.y0) * w + static_cast<std::size_t>(p.x - r.x0)] = 1;
  }
  r.boundary.clear();
  for (const Pixel p : r.pixels) {
    if (!r.covers({p.x - 1, p.y}) || !r.covers({p.x + 1, p.y}) ||
        !r.covers({p.x, p.y - 1}) || !r.covers({p.x, p.y + 1})) {
      r.boundary.push_back(p);
    }
  }
}

const VisionContext::Region& VisionContext::region(ObjectId id) const {
  auto it = regions_.find(id);
  if (it == regions_.end() || it->second.pixels.empty()) {
    throw Error(Errc::kEmptyRegion, "object " + std::to_string(id) + " owns no pixels");
  }
  return it->second;
}

std::vector<ObjectId> VisionContext::base_ids() const {
  std::vector<ObjectId> ids;
  for (const auto& [id, r] : regions_) {
    if (r.members.empty()) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::span<const Pixel> VisionContext::pixels(ObjectId id) const { return region(id).pixels; }

ColourTriple VisionContext::average_rgb(ObjectId id) const { return region(id).mean_rgb; }

Vec2 VisionContext::centroid(ObjectId id) const { return region(id).centroid; }

double VisionContext::distance(ObjectId a, ObjectId b) const {
  return norm(centroid(a) - centroid(b));
}

double VisionContext::board_distance(ObjectId a, ObjectId b) const {
  const Vec2 d = centroid(a) - centroid(b);
  return std::hypot(d.x / width(), d.y / height());
}

Vec2 VisionContext::board_to_pixel(BoardPos pos) const {
  return bishop::board_to_pixel(pos, width(), height());
}

GroupSet VisionContext::find_groups(std::span<const ObjectId> candidates,
                                    std::optional<int> count) const {
  if (candidates.empty()) {
    throw Error(Errc::kInvalidArgument, "find_groups needs at least one candidate");
  }
  std::vector<ObjectId> ids(candidates.begin(), candidates.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::erase_if(ids, [this](ObjectId id) { return !contains(id); });

  const double threshold = params_.group_distance_threshold;
  std::vector<bool> visited(ids.size(), false);
  GroupSet out;
  for (std::size_t seed = 0; seed < ids.size(); ++seed) {
    if (visited[seed]) continue;
    std::vector<ObjectId> component;
    std::deque<std::size_t> frontier{seed};
    visited[seed] = true;
    while (!frontier.empty()) {
      const std::size_t i = frontier.front();
      frontier.pop_front();
      component.push_back(ids[i]);
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (!visited[j] && board_distance(ids[i], ids[j]) < threshold) {
          visited[j] = true;
          frontier.push_back(j);
        }
      }
    }
    if (component.size() < 2) continue;
    if (count && static_cast<int>(component.size()) != *count) continue;
    std::sort(component.begin(), component.end());

    double total = 0.0;
    int pairs = 0;
    for (std::size_t a = 0; a < component.size(); ++a) {
      for (std::size_t b = a + 1; b < component.size(); ++b) {
        total += board_distance(component[a], component[b]);
        ++pairs;
      }
    }
    out.groups.push_back({static_cast<int>(out.groups.size()), std::move(component),
                          total / pairs});
  }
  return out;
}

SceneObject VisionContext::make_composite(std::span<const ObjectId> members) {
  std::vector<ObjectId> ids(members.begin(), members.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) {
    throw Error(Errc::kInvalidArgument, "a composite needs at least two members");
  }
  std::vector<Pixel> points;
  for (ObjectId id : ids) {
    if (is_composite(id)) {
      throw Error(Errc::kInvalidArgument, "composite members must be base objects");
    }
    const auto px = pixels(id);
    points.insert(points.end(), px.begin(), px.end());
  }
  if (auto it = composite_index_.find(ids); it != composite_index_.end()) {
    const Region& existing = regions_.at(it->second);
    SceneObject object;
    object.id = it->second;
    object.is_composite = true;
    object.members = ids;
    object.board_pos = {(existing.centroid.x + 0.5) / width(),
                        (existing.centroid.y + 0.5) / height()};
    return object;
  }
  const std::vector<Pixel> hull = convex_hull(points);

  int x0 = std::numeric_limits<int>::max(), y0 = x0;
  int x1 = std::numeric_limits<int>::min(), y1 = x1;
  for (const Pixel p : hull) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }

  Region r;
  r.members = ids;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Pixel p{x, y};
      bool inside = false;
      if (hull.size() >= 3) {
        inside = true;
        for (std::size_t i = 0; i < hull.size() && inside; ++i) {
          inside = cross_i(hull[i], hull[(i + 1) % hull.size()], p) >= 0;
        }
      } else if (hull.size() == 2) {
        inside = segment_distance({double(x), double(y)}, {double(hull[0].x), double(hull[0].y)},
                                  {double(hull[1].x), double(hull[1].y)}) <= 0.5;
      } else {
        inside = p == hull[0];
      }
      if (inside) r.pixels.push_back(p);
    }
  }
  finish_region(r);

  SceneObject object;
  object.id = next_composite_id_++;
  object.is_composite = true;
  object.members = ids;
  object.board_pos = {(r.centroid.x + 0.5) / width(), (r.centroid.y + 0.5) / height()};
  regions_.emplace(object.id, std::move(r));
  composite_index_.emplace(ids, object.id);
  return object;
}

bool VisionContext::is_composite(ObjectId id) const {
  auto it = regions_.find(id);
  return it != regions_.end() && !it->second.members.empty();
}

std::span<const ObjectId> VisionContext::members(ObjectId id) const {
  return region(id).members;
}

std::optional<std::pair<Pixel, Pixel>> VisionContext::closest_pixels(
    ObjectId landmark, ObjectId trajector) const {
  const Region& l = region(landmark);
  const Region& t = region(trajector);
  const bool overlap = std::any_of(t.pixels.begin(), t.pixels.end(),
                                   [&](Pixel p) { return l.covers(p); });
  if (overlap) return std::nullopt;

  long long best = std::numeric_limits<long long>::max();
  std::pair<Pixel, Pixel> pair;
  for (const Pixel a : l.boundary) {
    for (const Pixel b : t.boundary) {
      const long long dx = b.x - a.x;
      const long long dy = b.y - a.y;
      const long long d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        pair = {a, b};
      }
    }
  }
  return pair;
}

Vec2 VisionContext::avs_direction(ObjectId trajector, ObjectId landmark) const {
  return avs_direction(trajector, landmark, params_.avs_lambda);
}

Vec2 VisionContext::avs_direction(ObjectId trajector, ObjectId landmark, double lambda) const {
  if (trajector == landmark) {
    throw Error(Errc::kUndefinedDirection, "trajector and landmark are the same object");
  }
  const Vec2 centres = centroid(trajector) - centroid(landmark);
  const auto closest = closest_pixels(landmark, trajector);
  const bool have_centres = norm(centres) > 1e-12;
  if (!have_centres && !closest) {
    throw Error(Errc::kUndefinedDirection,
                "objects " + std::to_string(trajector) + " and " + std::to_string(landmark) +
                    " share a centre and overlap");
  }
  Vec2 centre_dir;
  Vec2 proximal_dir;
  if (closest) {
    proximal_dir = unit({double(closest->second.x - closest->first.x),
                         double(closest->second.y - closest->first.y)});
  }
  centre_dir = have_centres ? unit(centres) : proximal_dir;
  if (!closest) proximal_dir = centre_dir;

  const Vec2 blend = lambda * centre_dir + (1.0 - lambda) * proximal_dir;
  if (norm(blend) < 1e-12) {
    throw Error(Errc::kUndefinedDirection, "centre and proximal directions cancel");
  }
  return unit(blend);
}

double VisionContext::spatial_score(ObjectId trajector, ObjectId landmark,
                                    std::string_view direction) const {
  const auto ref = reference_vector(direction);
  if (!ref) {
    throw Error(Errc::kInvalidArgument, "unknown direction '" + std::string(direction) + "'");
  }
  const Vec2 dir = avs_direction(trajector, landmark);
  const double theta = std::acos(std::clamp(dot(dir, *ref), -1.0, 1.0));
  const double align = std::max(0.0, 1.0 - theta / (std::numbers::pi / 2.0));
  return align / std::max(board_distance(trajector, landmark), kMinScoreDistance);
}

const std::map<std::string, Vec2, std::less<>>& VisionContext::reference_vectors() {
  // Raster coordinates: y grows towards the viewer.
  static const std::map<std::string, Vec2, std::less<>> table{
      {"left", {-1, 0}},  {"right", {1, 0}},  {"behind", {0, -1}}, {"back", {0, -1}},
      {"above", {0, -1}}, {"top", {0, -1}},   {"front", {0, 1}},   {"below", {0, 1}},
      {"bottom", {0, 1}},
  };
  return table;
}

std::optional<Vec2> VisionContext::reference_vector(std::string_view name) {
  const auto& table = reference_vectors();
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace bishop
