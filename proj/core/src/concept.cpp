#include "bishop/concept.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bishop/error.hpp"

namespace bishop {

std::string_view to_string(RefKind k) {
  switch (k) {
    case RefKind::NotReferring:
      return "NotReferring";
    case RefKind::Single:
      return "Single";
    case RefKind::Group:
      return "Group";
  }
  return "?";
}

std::string_view to_string(Epoch e) { return e == Epoch::Current ? "Current" : "Previous"; }

std::string Concept::weights_string() const {
  std::ostringstream out;
  out.precision(6);
  out << '{';
  bool first = true;
  for (const auto& [id, w] : weights) {
    if (!first) out << ',';
    first = false;
    out << id << ':' << w;
  }
  out << '}';
  return out.str();
}

std::string Concept::identity() const {
  std::ostringstream out;
  out << static_cast<int>(ref_kind) << determinate << static_cast<int>(epoch) << split_groups
      << has_pp << '|';
  for (const auto& [id, w] : weights) {
    // Weights span many magnitudes (densities are tiny), so round relative
    // to the weight itself.
    const double scale = w == 0.0 ? 0.0 : std::pow(10.0, std::floor(std::log10(std::abs(w))));
    const double rounded = scale == 0.0 ? 0.0 : std::round(w / scale * 1e9) / 1e9 * scale;
    out << id << ':' << rounded << ',';
  }
  if (base) {
    out << "|o";
    for (const auto& o : orderings) out << o.position << o.params.label() << ',';
    out << "|b" << base->identity();
  }
  return out.str();
}

ObjectId referents_single(const Concept& c) {
  if (c.weights.empty()) throw Error(Errc::kInvalidArgument, "concept has no referents");
  auto best = c.weights.begin();
  for (auto it = c.weights.begin(); it != c.weights.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

std::vector<ObjectId> referents_group(const Concept& c, double rel_threshold) {
  std::vector<ObjectId> out;
  if (c.weights.empty()) return out;
  const auto [lo, hi] = std::minmax_element(
      c.weights.begin(), c.weights.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const double cutoff = lo->second + rel_threshold * (hi->second - lo->second);
  for (const auto& [id, w] : c.weights) {
    if (w >= cutoff) out.push_back(id);
  }
  return out;
}

}  // namespace bishop
