#include "bishop/scene.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "bishop/error.hpp"

namespace bishop {

namespace {

// Maps the full 64-bit generator output onto [0, 1) with 53 bits, so that the
// layout does not depend on the standard library's distribution internals.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

constexpr int kSceneAttempts = 50;

bool every_object_visible(const Scene& scene) {
  const Raster raster = render(scene);
  std::set<ObjectId> seen(raster.id_map.begin(), raster.id_map.end());
  return std::all_of(scene.objects.begin(), scene.objects.end(),
                     [&](const SceneObject& o) { return seen.count(o.id) > 0; });
}

}  // namespace

std::string_view to_string(ColourClass c) {
  return c == ColourClass::kGreen ? "green" : "purple";
}

ColourClass colour_class_from_string(std::string_view name) {
  if (name == "green") return ColourClass::kGreen;
  if (name == "purple") return ColourClass::kPurple;
  throw Error(Errc::kValidation, "unknown colour class '" + std::string(name) + "'");
}

Rgb base_colour(ColourClass c) {
  return c == ColourClass::kGreen ? kGreenBase : kPurpleBase;
}

const SceneObject* Scene::find(ObjectId id) const {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [id](const SceneObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

std::vector<ObjectId> Scene::ids() const {
  std::vector<ObjectId> out;
  out.reserve(objects.size());
  for (const auto& o : objects) out.push_back(o.id);
  std::sort(out.begin(), out.end());
  return out;
}

void validate_scene(const Scene& scene) {
  if (scene.width <= 0 || scene.height <= 0) {
    throw Error(Errc::kValidation, "scene raster size must be positive");
  }
  std::set<ObjectId> ids;
  for (const auto& o : scene.objects) {
    if (o.id < 0 || o.id >= kCompositeIdBase) {
      throw Error(Errc::kValidation, "object id " + std::to_string(o.id) + " out of range");
    }
    if (!ids.insert(o.id).second) {
      throw Error(Errc::kValidation, "duplicate object id " + std::to_string(o.id));
    }
    if (o.is_composite || !o.members.empty()) {
      throw Error(Errc::kValidation, "scenes hold base objects only (id " +
                                         std::to_string(o.id) + ")");
    }
    if (!(o.board_pos.x >= 0.0 && o.board_pos.x <= 1.0 && o.board_pos.y >= 0.0 &&
          o.board_pos.y <= 1.0)) {
      throw Error(Errc::kValidation,
                  "object " + std::to_string(o.id) + " lies outside the board");
    }
  }
}

Scene generate_layout(std::uint64_t seed, int n_objects) {
  if (n_objects < 1 || n_objects > kMaxObjects) {
    throw Error(Errc::kInvalidArgument,
                "n_objects must be in [1, 30], got " + std::to_string(n_objects));
  }
  std::mt19937_64 rng(seed);
  const double span = 1.0 - 2.0 * kBoardMargin;

  for (int attempt = 0; attempt < kSceneAttempts; ++attempt) {
    Scene scene;
    scene.seed = seed;
    for (int k = 0; k < n_objects; ++k) {
      bool placed = false;
      for (int retry = 0; retry < kPlacementRetries && !placed; ++retry) {
        const BoardPos pos{kBoardMargin + span * unit_draw(rng),
                           kBoardMargin + span * unit_draw(rng)};
        const bool clear = std::none_of(
            scene.objects.begin(), scene.objects.end(), [&](const SceneObject& o) {
              return std::hypot(o.board_pos.x - pos.x, o.board_pos.y - pos.y) <
                     kMinSeparation;
            });
        if (clear) {
          SceneObject object;
          object.id = k;
          object.board_pos = pos;
          object.colour_class =
              unit_draw(rng) < 0.5 ? ColourClass::kGreen : ColourClass::kPurple;
          scene.objects.push_back(object);
          placed = true;
        }
      }
      if (!placed) {
        throw Error(Errc::kGenerationFailed,
                    "could not place object " + std::to_string(k) + " for seed " +
                        std::to_string(seed));
      }
    }
    if (every_object_visible(scene)) return scene;
  }
  throw Error(Errc::kGenerationFailed,
              "every layout for seed " + std::to_string(seed) + " had a hidden object");
}

SceneState::SceneState(Scene scene) {
  validate_scene(scene);
  auto snapshot = std::make_shared<SceneSnapshot>();
  snapshot->raster = render(scene);
  snapshot->scene = std::move(scene);
  current_ = std::move(snapshot);
}

SceneState::SceneState(std::shared_ptr<const SceneSnapshot> current,
                       std::shared_ptr<const SceneSnapshot> previous,
                       std::optional<ObjectId> last_removed)
    : current_(std::move(current)),
      previous_(std::move(previous)),
      last_removed_(last_removed) {}

SceneState SceneState::remove_object(ObjectId id) const {
  if (!current_->scene.contains(id)) {
    throw Error(Errc::kNotFound, "no object with id " + std::to_string(id));
  }
  Scene next = current_->scene;
  std::erase_if(next.objects, [id](const SceneObject& o) { return o.id == id; });
  auto snapshot = std::make_shared<SceneSnapshot>();
  snapshot->raster = render(next);
  snapshot->scene = std::move(next);
  return SceneState(std::move(snapshot), current_, id);
}

SceneState generate_scene(std::uint64_t seed, int n_objects) {
  return SceneState(generate_layout(seed, n_objects));
}

}  // namespace bishop
