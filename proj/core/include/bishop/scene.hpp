#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bishop/geometry.hpp"

namespace bishop {

using ObjectId = std::int32_t;

inline constexpr ObjectId kBackground = -1;
/// Composite (group hull) ids are allocated from here upward, so they never
/// collide with base object ids.
inline constexpr ObjectId kCompositeIdBase = 1 << 20;
inline constexpr int kMaxObjects = 30;
inline constexpr int kRasterSize = 512;

enum class ColourClass { kGreen, kPurple };

std::string_view to_string(ColourClass c);
ColourClass colour_class_from_string(std::string_view name);

struct BoardPos {
  double x = 0.0;  // [0,1], left to right
  double y = 0.0;  // [0,1], back (top of screen) to front (bottom)
  friend bool operator==(BoardPos, BoardPos) = default;
};

struct SceneObject {
  ObjectId id = 0;
  BoardPos board_pos;
  ColourClass colour_class = ColourClass::kGreen;
  bool is_composite = false;
  std::vector<ObjectId> members;  // non-empty iff is_composite

  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

struct Scene {
  std::uint64_t seed = 0;
  int width = kRasterSize;
  int height = kRasterSize;
  std::vector<SceneObject> objects;

  const SceneObject* find(ObjectId id) const;
  bool contains(ObjectId id) const { return find(id) != nullptr; }
  std::vector<ObjectId> ids() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Throws Errc::kValidation on duplicate ids, composite objects, positions
/// outside the board or a bad raster size.
void validate_scene(const Scene& scene);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(Rgb, Rgb) = default;
};

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<Rgb> rgb;
  std::vector<ObjectId> id_map;  // kBackground where no object was drawn

  Raster() = default;
  Raster(int w, int h, Rgb background);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  ObjectId owner(int x, int y) const { return id_map[index(x, y)]; }
  Rgb colour(int x, int y) const { return rgb[index(x, y)]; }

  friend bool operator==(const Raster&, const Raster&) = default;
};

// Rendering parameters. The cone footprint is an isoceles triangle whose base
// width grows towards the front of the board to mimic perspective.
inline constexpr double kConeBaseWidth = 0.04;      // board units at y = 0.5
inline constexpr double kConeAspect = 1.25;         // height / base width
inline constexpr double kMinSeparation = 0.04;      // board units
inline constexpr int kPlacementRetries = 200;
inline constexpr double kBoardMargin = 0.06;
inline constexpr Rgb kBackgroundColour{96, 96, 104};
inline constexpr Rgb kGreenBase{60, 170, 70};
inline constexpr Rgb kPurpleBase{140, 60, 160};
inline constexpr double kShadingAmplitude = 0.12;
inline constexpr int kTextureNoise = 8;

Rgb base_colour(ColourClass c);

/// Board position to pixel space (pixel (x, y) has its centre at (x, y)).
Vec2 board_to_pixel(BoardPos pos, int width, int height);

/// Triangle footprint of a cone in pixel space: apex, base-left, base-right.
std::array<Vec2, 3> cone_footprint(const SceneObject& object, int width, int height);

/// Painter's algorithm: objects with smaller y are drawn first, so objects
/// nearer the viewer occlude those behind them.
Raster render(const Scene& scene);

/// Generates only the object layout. Throws Errc::kInvalidArgument when
/// n_objects is outside [1, 30] and Errc::kGenerationFailed when placement
/// keeps failing.
Scene generate_layout(std::uint64_t seed, int n_objects);

struct SceneSnapshot {
  Scene scene;
  Raster raster;
};

/// Immutable scene plus one step of removal history for anaphora.
class SceneState {
 public:
  explicit SceneState(Scene scene);

  const Scene& scene() const { return current_->scene; }
  const Raster& raster() const { return current_->raster; }
  const SceneSnapshot& current() const { return *current_; }
  const SceneSnapshot* previous() const { return previous_.get(); }
  std::optional<ObjectId> last_removed() const { return last_removed_; }
  std::uint64_t seed() const { return current_->scene.seed; }
  bool empty() const { return current_->scene.objects.empty(); }

  /// Returns the state after removing a base object. The old current scene
  /// becomes `previous`. Throws Errc::kNotFound for unknown ids.
  SceneState remove_object(ObjectId id) const;

 private:
  SceneState(std::shared_ptr<const SceneSnapshot> current,
             std::shared_ptr<const SceneSnapshot> previous,
             std::optional<ObjectId> last_removed);

  std::shared_ptr<const SceneSnapshot> current_;
  std::shared_ptr<const SceneSnapshot> previous_;
  std::optional<ObjectId> last_removed_;
};

SceneState generate_scene(std::uint64_t seed, int n_objects);

// "bishop-scene v1" documents. Rasters are never serialized.
inline constexpr std::string_view kSceneFormat = "bishop-scene v1";

nlohmann::json scene_to_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& doc);
std::string serialize_scene(const Scene& scene);
Scene parse_scene(std::string_view text);
Scene load_scene_file(const std::filesystem::path& path);
void save_scene_file(const Scene& scene, const std::filesystem::path& path);

}  // namespace bishop
