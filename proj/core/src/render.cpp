#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bishop/scene.hpp"

namespace bishop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fixed per-pixel texture in [-kTextureNoise, kTextureNoise] per channel. It
// keeps the per-pixel colour distribution full rank.
std::array<int, 3> texture(int x, int y) {
  const std::uint64_t h =
      splitmix64((static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)) << 32) |
                 static_cast<std::uint32_t>(x));
  constexpr int span = 2 * kTextureNoise + 1;
  return {static_cast<int>((h & 0xffff) % span) - kTextureNoise,
          static_cast<int>(((h >> 16) & 0xffff) % span) - kTextureNoise,
          static_cast<int>(((h >> 32) & 0xffff) % span) - kTextureNoise};
}

std::uint8_t clamp_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

double edge(Vec2 a, Vec2 b, Vec2 p) { return cross(b - a, p - a); }

}  // namespace

Raster::Raster(int w, int h, Rgb background)
    : width(w),
      height(h),
      rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), background),
      id_map(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), kBackground) {}

Vec2 board_to_pixel(BoardPos pos, int width, int height) {
  return {pos.x * width - 0.5, pos.y * height - 0.5};
}

std::array<Vec2, 3> cone_footprint(const SceneObject& object, int width, int height) {
  const Vec2 c = board_to_pixel(object.board_pos, width, height);
  const double base = kConeBaseWidth * (0.7 + 0.6 * object.board_pos.y) * width;
  const double tall = kConeAspect * base;
  // Vertices placed so that the triangle's centroid is the board position.
  return {Vec2{c.x, c.y - 2.0 * tall / 3.0}, Vec2{c.x - base / 2.0, c.y + tall / 3.0},
          Vec2{c.x + base / 2.0, c.y + tall / 3.0}};
}

Raster render(const Scene& scene) {
  Raster raster(scene.width, scene.height, kBackgroundColour);

  std::vector<const SceneObject*> order;
  order.reserve(scene.objects.size());
  for (const auto& o : scene.objects) order.push_back(&o);
  std::stable_sort(order.begin(), order.end(), [](const SceneObject* a, const SceneObject* b) {
    if (a->board_pos.y != b->board_pos.y) return a->board_pos.y < b->board_pos.y;
    return a->id < b->id;
  });

  for (const SceneObject* object : order) {
    const auto tri = cone_footprint(*object, scene.width, scene.height);
    const double top = tri[0].y;
    const double bottom = tri[1].y;
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(tri[1].x, tri[0].x))));
    const int x1 = std::min(scene.width - 1, static_cast<int>(std::ceil(std::max(tri[2].x, tri[0].x))));
    const int y0 = std::max(0, static_cast<int>(std::floor(top)));
    const int y1 = std::min(scene.height - 1, static_cast<int>(std::ceil(bottom)));
    const Rgb base = base_colour(object->colour_class);
    // Orientation-independent inside test with a tiny tolerance for pixels
    // exactly on an edge.
    const double area = edge(tri[0], tri[1], tri[2]);
    const double sign = area < 0 ? -1.0 : 1.0;

    for (int y = y0; y <= y1; ++y) {
      const double t = std::clamp((y - top) / (bottom - top), 0.0, 1.0);
      const double lum = 1.0 + kShadingAmplitude - 2.0 * kShadingAmplitude * t;
      for (int x = x0; x <= x1; ++x) {
        const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
        const double e0 = sign * edge(tri[0], tri[1], p);
        const double e1 = sign * edge(tri[1], tri[2], p);
        const double e2 = sign * edge(tri[2], tri[0], p);
        if (e0 < -1e-9 || e1 < -1e-9 || e2 < -1e-9) continue;
        const auto noise = texture(x, y);
        const std::size_t i = raster.index(x, y);
        raster.rgb[i] = Rgb{clamp_channel(base.r * lum + noise[0]),
                            clamp_channel(base.g * lum + noise[1]),
                            clamp_channel(base.b * lum + noise[2])};
        raster.id_map[i] = object->id;
      }
    }
  }
  return raster;
}

}  // namespace bishop
