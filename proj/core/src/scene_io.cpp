#include <algorithm>
#include <fstream>
#include <sstream>

#include "bishop/error.hpp"
#include "bishop/scene.hpp"
#include "json_util.hpp"

namespace bishop {

namespace detail {

nlohmann::json parse_json(std::string_view text, std::string_view what) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw Error(Errc::kParse, std::string(what) + ": line " + std::to_string(line) + ": " +
                                  e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                              std::string_view context) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::kValidation,
                std::string(context) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

}  // namespace detail

nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : scene.objects) {
    objects.push_back({{"id", o.id},
                       {"x", o.board_pos.x},
                       {"y", o.board_pos.y},
                       {"colour", to_string(o.colour_class)}});
  }
  return {{"format", kSceneFormat},
          {"seed", scene.seed},
          {"width", scene.width},
          {"height", scene.height},
          {"objects", std::move(objects)}};
}

Scene scene_from_json(const nlohmann::json& doc) {
  constexpr std::string_view ctx = "scene";
  if (!doc.is_object()) throw Error(Errc::kValidation, "scene: expected an object");
  if (doc.contains("format") && doc.at("format") != kSceneFormat) {
    throw Error(Errc::kValidation,
                "scene: unsupported format " + doc.at("format").dump());
  }
  Scene scene;
  try {
    scene.seed = doc.value("seed", std::uint64_t{0});
    scene.width = doc.value("width", kRasterSize);
    scene.height = doc.value("height", kRasterSize);
    for (const auto& item : detail::require(doc, "objects", ctx)) {
      SceneObject o;
      o.id = detail::require(item, "id", ctx).get<ObjectId>();
      o.board_pos.x = detail::require(item, "x", ctx).get<double>();
      o.board_pos.y = detail::require(item, "y", ctx).get<double>();
      o.colour_class =
          colour_class_from_string(detail::require(item, "colour", ctx).get<std::string>());
      scene.objects.push_back(std::move(o));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kValidation, std::string("scene: ") + e.what());
  }
  validate_scene(scene);
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  return scene_to_json(scene).dump(2) + "\n";
}

Scene parse_scene(std::string_view text) {
  return scene_from_json(detail::parse_json(text, "scene"));
}

Scene load_scene_file(const std::filesystem::path& path) {
  try {
    return parse_scene(detail::read_text_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_scene_file(const Scene& scene, const std::filesystem::path& path) {
  detail::write_text_file(path, serialize_scene(scene));
}

}  // namespace bishop
