#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "bishop/composers.hpp"
#include "bishop/lexicon.hpp"
#include "bishop/scene.hpp"
#include "bishop/vision.hpp"

namespace bishop::test {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(BISHOP_DATA_DIR) / rel;
}

inline const Lexicon& packaged_lexicon() {
  static const Lexicon lexicon = load_lexicon_file(data_path("lexicon.json"));
  return lexicon;
}

inline std::shared_ptr<const Lexicon> shared_lexicon() {
  static const auto lexicon = std::make_shared<const Lexicon>(packaged_lexicon());
  return lexicon;
}

struct Placed {
  char colour;  // 'g' or 'p'
  double x;
  double y;
};

/// Scene whose object ids follow the order of `objects`.
inline Scene make_scene(std::initializer_list<Placed> objects) {
  Scene s;
  ObjectId id = 0;
  for (const auto& o : objects) {
    SceneObject obj;
    obj.id = id++;
    obj.board_pos = {o.x, o.y};
    obj.colour_class = o.colour == 'g' ? ColourClass::kGreen : ColourClass::kPurple;
    s.objects.push_back(obj);
  }
  return s;
}

/// Hand-painted raster: every listed pixel gets the object's id and colour.
struct PaintedObject {
  ObjectId id;
  std::vector<Pixel> pixels;
  Rgb rgb{0, 0, 0};
};

inline Raster paint(int width, int height, const std::vector<PaintedObject>& objects) {
  Raster r(width, height, Rgb{0, 0, 0});
  for (const auto& o : objects) {
    for (const Pixel p : o.pixels) {
      r.id_map[r.index(p.x, p.y)] = o.id;
      r.rgb[r.index(p.x, p.y)] = o.rgb;
    }
  }
  return r;
}

inline std::vector<Pixel> block(int x0, int y0, int w, int h) {
  std::vector<Pixel> out;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) out.push_back({x, y});
  }
  return out;
}

/// Centroids by a plain scan of the id map, independent of VisionContext.
inline std::map<ObjectId, Vec2> scan_centroids(const Raster& r) {
  std::map<ObjectId, std::tuple<double, double, long>> acc;
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      const ObjectId id = r.owner(x, y);
      if (id == kBackground) continue;
      auto& [sx, sy, n] = acc[id];
      sx += x;
      sy += y;
      ++n;
    }
  }
  std::map<ObjectId, Vec2> out;
  for (const auto& [id, a] : acc) {
    const auto& [sx, sy, n] = a;
    out[id] = {sx / static_cast<double>(n), sy / static_cast<double>(n)};
  }
  return out;
}

/// Plain union-find used as a grouping oracle.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

/// Components of size >= 2 under "centroid distance < threshold" in board
/// units, each sorted, ordered by smallest member.
inline std::vector<std::vector<ObjectId>> union_find_groups(const std::map<ObjectId, Vec2>& c,
                                                            int width, int height,
                                                            double threshold) {
  std::vector<ObjectId> ids;
  for (const auto& [id, _] : c) ids.push_back(id);
  UnionFind uf(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const Vec2 a = c.at(ids[i]);
      const Vec2 b = c.at(ids[j]);
      if (std::hypot((a.x - b.x) / width, (a.y - b.y) / height) < threshold) uf.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<ObjectId>> by_root;
  for (std::size_t i = 0; i < ids.size(); ++i) by_root[uf.find(i)].push_back(ids[i]);
  std::vector<std::vector<ObjectId>> out;
  for (auto& [_, members] : by_root) {
    if (members.size() >= 2) out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A world over a single current context.
inline World world_of(VisionContext& current) {
  World w;
  w.current = &current;
  return w;
}

inline Concept concept_of(std::map<ObjectId, double> weights, RefKind kind = RefKind::Single) {
  Concept c;
  c.weights = std::move(weights);
  c.ref_kind = kind;
  return c;
}

}  // namespace bishop::test
