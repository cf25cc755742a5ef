#include "bishop/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <tuple>

#include "bishop/error.hpp"
#include "bishop/vision.hpp"
#include "json_util.hpp"

namespace bishop {

namespace {

constexpr std::array<std::pair<ComposerKind, std::string_view>, 10> kKindNames{{
    {ComposerKind::ColourProbabilistic, "ColourProbabilistic"},
    {ComposerKind::OrderingExtremum, "OrderingExtremum"},
    {ComposerKind::OrderingRegion, "OrderingRegion"},
    {ComposerKind::Grouping, "Grouping"},
    {ComposerKind::Spatial, "Spatial"},
    {ComposerKind::Anaphoric, "Anaphoric"},
    {ComposerKind::Select, "Select"},
    {ComposerKind::Bridge, "Bridge"},
    {ComposerKind::GroupSplit, "GroupSplit"},
    {ComposerKind::Identity, "Identity"},
}};

std::string describe(const LexicalEntry& e) {
  return "entry '" + e.word + "' (" + std::string(to_string(e.category)) + ", " +
         std::string(to_string(e.composer.kind)) + ")";
}

void validate_entry(const LexicalEntry& e, const std::vector<ColourModel>& models) {
  if (e.word.empty()) throw Error(Errc::kValidation, "lexical entry with an empty word");
  if (e.category == Category::NP) {
    throw Error(Errc::kValidation, describe(e) + ": NP is not a lexical category");
  }
  const auto arities = allowed_arities(e.composer.kind);
  if (std::find(arities.begin(), arities.end(), e.arity) == arities.end()) {
    throw Error(Errc::kValidation, describe(e) + ": arity " + std::to_string(e.arity) +
                                       " is not allowed for this composer kind");
  }
  const ComposerSpec& c = e.composer;
  switch (c.kind) {
    case ComposerKind::ColourProbabilistic: {
      const bool found = std::any_of(models.begin(), models.end(),
                                     [&](const ColourModel& m) { return m.name == c.model; });
      if (!found) {
        throw Error(Errc::kValidation,
                    describe(e) + ": unknown colour model '" + c.model + "'");
      }
      break;
    }
    case ComposerKind::OrderingExtremum:
    case ComposerKind::OrderingRegion: {
      const auto& o = c.ordering;
      if (!(o.gamma > 0.0 && o.gamma < 1.0)) {
        throw Error(Errc::kValidation, describe(e) + ": gamma must lie in (0, 1)");
      }
      const bool region = c.kind == ComposerKind::OrderingRegion;
      if (region != (o.mode == OrderingMode::Region) || region != o.region_point.has_value()) {
        throw Error(Errc::kValidation, describe(e) + ": inconsistent ordering parameters");
      }
      break;
    }
    case ComposerKind::Spatial:
      if (!VisionContext::reference_vector(c.direction)) {
        throw Error(Errc::kValidation,
                    describe(e) + ": unknown direction '" + c.direction + "'");
      }
      break;
    case ComposerKind::Grouping:
      if (c.count && *c.count < 2) {
        throw Error(Errc::kValidation, describe(e) + ": group count must be at least 2");
      }
      break;
    default:
      break;
  }
}

nlohmann::json composer_to_json(const ComposerSpec& c) {
  nlohmann::json j{{"kind", std::string(to_string(c.kind))}};
  switch (c.kind) {
    case ComposerKind::ColourProbabilistic:
      j["model"] = c.model;
      break;
    case ComposerKind::OrderingExtremum:
      j["axis"] = c.ordering.axis == Axis::X ? "x" : "y";
      j["mode"] = c.ordering.mode == OrderingMode::Min ? "min" : "max";
      if (c.ordering.gamma != kDefaultGamma) j["gamma"] = c.ordering.gamma;
      break;
    case ComposerKind::OrderingRegion:
      j["point"] = c.ordering.point_name;
      if (c.ordering.gamma != kDefaultGamma) j["gamma"] = c.ordering.gamma;
      break;
    case ComposerKind::Spatial:
      j["direction"] = c.direction;
      break;
    case ComposerKind::Grouping:
      if (c.count) j["count"] = *c.count;
      break;
    case ComposerKind::Select:
      j["determinate"] = c.determinate;
      break;
    default:
      break;
  }
  return j;
}

ComposerSpec composer_from_json(const nlohmann::json& j, std::string_view ctx) {
  ComposerSpec c;
  c.kind = composer_kind_from_string(detail::require(j, "kind", ctx).get<std::string>());
  c.ordering.gamma = j.value("gamma", kDefaultGamma);
  switch (c.kind) {
    case ComposerKind::ColourProbabilistic:
      c.model = detail::require(j, "model", ctx).get<std::string>();
      break;
    case ComposerKind::OrderingExtremum: {
      const auto axis = detail::require(j, "axis", ctx).get<std::string>();
      const auto mode = detail::require(j, "mode", ctx).get<std::string>();
      if (axis != "x" && axis != "y") {
        throw Error(Errc::kValidation, std::string(ctx) + ": axis must be x or y");
      }
      if (mode != "min" && mode != "max") {
        throw Error(Errc::kValidation, std::string(ctx) + ": mode must be min or max");
      }
      c.ordering.axis = axis == "x" ? Axis::X : Axis::Y;
      c.ordering.mode = mode == "min" ? OrderingMode::Min : OrderingMode::Max;
      break;
    }
    case ComposerKind::OrderingRegion: {
      c.ordering.mode = OrderingMode::Region;
      c.ordering.point_name = detail::require(j, "point", ctx).get<std::string>();
      c.ordering.region_point = region_point(c.ordering.point_name);
      if (!c.ordering.region_point) {
        throw Error(Errc::kValidation, std::string(ctx) + ": unknown reference point '" +
                                           c.ordering.point_name + "'");
      }
      break;
    }
    case ComposerKind::Spatial:
      c.direction = detail::require(j, "direction", ctx).get<std::string>();
      break;
    case ComposerKind::Grouping:
      if (j.contains("count")) c.count = j.at("count").get<int>();
      break;
    case ComposerKind::Select:
      c.determinate = j.value("determinate", true);
      break;
    default:
      break;
  }
  return c;
}

}  // namespace

std::string_view to_string(RefBehaviour r) {
  switch (r) {
    case RefBehaviour::None:
      return "None";
    case RefBehaviour::Single:
      return "Single";
    case RefBehaviour::Group:
      return "Group";
  }
  return "?";
}

RefBehaviour ref_behaviour_from_string(std::string_view name) {
  if (name == "None") return RefBehaviour::None;
  if (name == "Single") return RefBehaviour::Single;
  if (name == "Group") return RefBehaviour::Group;
  throw Error(Errc::kValidation, "unknown reference behaviour '" + std::string(name) + "'");
}

std::string_view to_string(ComposerKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

ComposerKind composer_kind_from_string(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw Error(Errc::kValidation, "unknown composer kind '" + std::string(name) + "'");
}

std::optional<BoardPos> region_point(std::string_view name) {
  if (name == "centre" || name == "center") return BoardPos{0.5, 0.5};
  return std::nullopt;
}

std::string OrderingParams::label() const {
  switch (mode) {
    case OrderingMode::Min:
      return axis == Axis::X ? "O.x.min" : "O.y.min";
    case OrderingMode::Max:
      return axis == Axis::X ? "O.x.max" : "O.y.max";
    case OrderingMode::Region:
      return "O.region(" + point_name + ")";
  }
  return "O";
}

std::string ComposerSpec::label() const {
  switch (kind) {
    case ComposerKind::ColourProbabilistic:
      return "P(" + model + ")";
    case ComposerKind::OrderingExtremum:
    case ComposerKind::OrderingRegion:
      return ordering.label();
    case ComposerKind::Grouping:
      return count ? "G" + std::to_string(*count) : "G";
    case ComposerKind::Spatial:
      return "SP." + direction;
    case ComposerKind::Anaphoric:
      return "A";
    case ComposerKind::Select:
      return determinate ? "S" : "S.indef";
    case ComposerKind::Bridge:
      return "B";
    case ComposerKind::GroupSplit:
      return "B.of";
    case ComposerKind::Identity:
      return "I";
  }
  return "?";
}

std::vector<int> allowed_arities(ComposerKind kind) {
  switch (kind) {
    case ComposerKind::ColourProbabilistic:
    case ComposerKind::Identity:
      return {0, 1};
    case ComposerKind::OrderingExtremum:
    case ComposerKind::OrderingRegion:
    case ComposerKind::Select:
    case ComposerKind::Grouping:
    case ComposerKind::Anaphoric:
      return {1};
    case ComposerKind::Spatial:
    case ComposerKind::Bridge:
    case ComposerKind::GroupSplit:
      return {2};
  }
  return {};
}

Lexicon::Lexicon(std::vector<ColourModel> colour_models, std::vector<LexicalEntry> entries,
                 Grammar grammar)
    : colour_models_(std::move(colour_models)),
      entries_(std::move(entries)),
      grammar_(std::move(grammar)) {
  std::set<std::string> model_names;
  for (const auto& m : colour_models_) {
    m.validate();
    if (!model_names.insert(m.name).second) {
      throw Error(Errc::kValidation, "duplicate colour model '" + m.name + "'");
    }
  }
  grammar_.validate();
  std::set<std::tuple<std::string, Category, ComposerKind>> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    validate_entry(e, colour_models_);
    if (!seen.emplace(e.word, e.category, e.composer.kind).second) {
      throw Error(Errc::kValidation, "duplicate " + describe(e));
    }
    by_word_[e.word].push_back(i);
  }
}

std::vector<const LexicalEntry*> Lexicon::lookup(std::string_view token) const {
  std::vector<const LexicalEntry*> out;
  auto it = by_word_.find(token);
  if (it == by_word_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&entries_[i]);
  return out;
}

const ColourModel& Lexicon::colour_model(std::string_view name) const {
  for (const auto& m : colour_models_) {
    if (m.name == name) return m;
  }
  throw Error(Errc::kNotFound, "unknown colour model '" + std::string(name) + "'");
}

bool operator==(const Lexicon& a, const Lexicon& b) {
  if (a.entries_ != b.entries_ || a.grammar_ != b.grammar_) return false;
  if (a.colour_models_.size() != b.colour_models_.size()) return false;
  for (std::size_t i = 0; i < a.colour_models_.size(); ++i) {
    const auto& x = a.colour_models_[i];
    const auto& y = b.colour_models_[i];
    if (x.name != y.name || !x.mean.isApprox(y.mean, 1e-12) || !x.cov.isApprox(y.cov, 1e-12)) {
      return false;
    }
  }
  return true;
}

nlohmann::json lexicon_to_json(const Lexicon& lexicon) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto& m : lexicon.colour_models()) {
    nlohmann::json cov = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) cov.push_back({m.cov(r, 0), m.cov(r, 1), m.cov(r, 2)});
    models.push_back({{"name", m.name},
                      {"mean", {m.mean[0], m.mean[1], m.mean[2]}},
                      {"cov", std::move(cov)}});
  }
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : lexicon.entries()) {
    entries.push_back({{"word", e.word},
                       {"category", std::string(to_string(e.category))},
                       {"arity", e.arity},
                       {"ref", std::string(to_string(e.ref))},
                       {"composer", composer_to_json(e.composer)}});
  }
  return {{"format", kLexiconFormat},
          {"colour_models", std::move(models)},
          {"entries", std::move(entries)},
          {"grammar", grammar_to_json(lexicon.grammar())}};
}

Lexicon lexicon_from_json(const nlohmann::json& doc) {
  constexpr std::string_view ctx = "lexicon";
  if (!doc.is_object()) throw Error(Errc::kValidation, "lexicon: expected an object");
  if (doc.contains("format") && doc.at("format") != kLexiconFormat) {
    throw Error(Errc::kValidation, "lexicon: unsupported format " + doc.at("format").dump());
  }
  try {
    std::vector<ColourModel> models;
    for (const auto& m : doc.value("colour_models", nlohmann::json::array())) {
      ColourModel model;
      model.name = detail::require(m, "name", ctx).get<std::string>();
      const auto mean = detail::require(m, "mean", ctx).get<std::vector<double>>();
      const auto cov = detail::require(m, "cov", ctx).get<std::vector<std::vector<double>>>();
      if (mean.size() != 3 || cov.size() != 3) {
        throw Error(Errc::kValidation, "lexicon: colour model '" + model.name + "' is not 3-D");
      }
      for (int r = 0; r < 3; ++r) {
        model.mean[r] = mean[static_cast<std::size_t>(r)];
        if (cov[static_cast<std::size_t>(r)].size() != 3) {
          throw Error(Errc::kValidation, "lexicon: colour model '" + model.name + "' is not 3-D");
        }
        for (int c = 0; c < 3; ++c) {
          model.cov(r, c) = cov[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
      }
      models.push_back(std::move(model));
    }

    std::vector<LexicalEntry> entries;
    std::size_t i = 0;
    for (const auto& item : detail::require(doc, "entries", ctx)) {
      const std::string where = "lexicon entry " + std::to_string(i++);
      LexicalEntry e;
      e.word = detail::require(item, "word", where).get<std::string>();
      e.category = category_from_string(detail::require(item, "category", where).get<std::string>());
      e.arity = detail::require(item, "arity", where).get<int>();
      e.ref = ref_behaviour_from_string(item.value("ref", std::string("None")));
      e.composer = composer_from_json(detail::require(item, "composer", where), where);
      entries.push_back(std::move(e));
    }

    Grammar grammar =
        doc.contains("grammar") ? grammar_from_json(doc.at("grammar")) : Grammar::standard();
    return Lexicon(std::move(models), std::move(entries), std::move(grammar));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kValidation, std::string("lexicon: ") + e.what());
  }
}

std::string serialize_lexicon(const Lexicon& lexicon) {
  return lexicon_to_json(lexicon).dump(2) + "\n";
}

Lexicon parse_lexicon(std::string_view text) {
  return lexicon_from_json(detail::parse_json(text, "lexicon"));
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  try {
    return parse_lexicon(detail::read_text_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_lexicon_file(const Lexicon& lexicon, const std::filesystem::path& path) {
  detail::write_text_file(path, serialize_lexicon(lexicon));
}

std::vector<LexicalEntry> starter_entries() {
  using C = Category;
  using K = ComposerKind;
  std::vector<LexicalEntry> out;

  auto add = [&](std::string word, C cat, int arity, RefBehaviour ref, ComposerSpec spec) {
    out.push_back({std::move(word), cat, arity, ref, std::move(spec)});
  };
  auto simple = [](K kind) {
    ComposerSpec s;
    s.kind = kind;
    return s;
  };
  auto extremum = [](Axis axis, OrderingMode mode) {
    ComposerSpec s;
    s.kind = K::OrderingExtremum;
    s.ordering.axis = axis;
    s.ordering.mode = mode;
    return s;
  };
  auto spatial = [](std::string direction) {
    ComposerSpec s;
    s.kind = K::Spatial;
    s.direction = std::move(direction);
    return s;
  };
  auto grouping = [](std::optional<int> count) {
    ComposerSpec s;
    s.kind = K::Grouping;
    s.count = count;
    return s;
  };
  const auto none = RefBehaviour::None;
  const auto single = RefBehaviour::Single;
  const auto group = RefBehaviour::Group;

  ComposerSpec the = simple(K::Select);
  add("the", C::ART, 1, none, the);
  ComposerSpec a = simple(K::Select);
  a.determinate = false;
  add("a", C::ART, 1, none, a);

  for (const char* colour : {"green", "purple"}) {
    ComposerSpec s = simple(K::ColourProbabilistic);
    s.model = colour;
    add(colour, C::CADJ, 1, none, s);
    add(colour, C::N, 0, single, s);
  }

  add("one", C::N, 0, single, simple(K::Identity));
  add("cone", C::N, 0, single, simple(K::Identity));
  add("ones", C::N, 0, group, simple(K::Identity));
  add("cones", C::N, 0, group, simple(K::Identity));

  struct Extremum {
    const char* word;
    Axis axis;
    OrderingMode mode;
    bool noun;
  };
  const Extremum extrema[] = {
      {"left", Axis::X, OrderingMode::Min, true},
      {"leftmost", Axis::X, OrderingMode::Min, true},
      {"right", Axis::X, OrderingMode::Max, true},
      {"rightmost", Axis::X, OrderingMode::Max, true},
      {"front", Axis::Y, OrderingMode::Max, true},
      {"frontmost", Axis::Y, OrderingMode::Max, true},
      {"closest", Axis::Y, OrderingMode::Max, false},
      {"bottom", Axis::Y, OrderingMode::Max, true},
      {"bottommost", Axis::Y, OrderingMode::Max, false},
      {"back", Axis::Y, OrderingMode::Min, true},
      {"backmost", Axis::Y, OrderingMode::Min, false},
      {"rear", Axis::Y, OrderingMode::Min, true},
      {"rearmost", Axis::Y, OrderingMode::Min, false},
      {"top", Axis::Y, OrderingMode::Min, true},
      {"topmost", Axis::Y, OrderingMode::Min, false},
      {"furthest", Axis::Y, OrderingMode::Min, false},
  };
  for (const auto& x : extrema) {
    add(x.word, C::ADJ, 1, none, extremum(x.axis, x.mode));
    if (x.noun) add(x.word, C::N, 1, none, extremum(x.axis, x.mode));
  }
  add("left", C::N, 2, single, spatial("left"));
  add("right", C::N, 2, single, spatial("right"));
  add("front", C::N, 2, single, spatial("front"));
  add("top", C::N, 2, single, spatial("top"));

  for (const char* word : {"middle", "centre", "center"}) {
    ComposerSpec s;
    s.kind = K::OrderingRegion;
    s.ordering.mode = OrderingMode::Region;
    s.ordering.point_name = "centre";
    s.ordering.region_point = region_point("centre");
    add(word, C::ADJ, 1, none, s);
    add(word, C::N, 1, none, s);
  }

  add("corner", C::N, 1, none, simple(K::Identity));
  add("side", C::N, 1, none, simple(K::Identity));

  add("group", C::N, 1, group, grouping(std::nullopt));
  add("row", C::N, 1, group, grouping(std::nullopt));
  add("pair", C::N, 1, group, grouping(2));
  add("two", C::ADJ, 1, group, grouping(2));
  add("three", C::ADJ, 1, group, grouping(3));

  add("of", C::POF, 2, none, simple(K::GroupSplit));
  for (const char* p : {"on", "in", "to", "at"}) add(p, C::P, 2, none, simple(K::Bridge));
  add("at", C::PAT, 2, none, simple(K::Bridge));
  add("in", C::PIN, 2, none, simple(K::Bridge));
  add("behind", C::P, 2, single, spatial("behind"));
  add("below", C::P, 2, single, spatial("below"));
  add("above", C::P, 2, single, spatial("above"));

  add("that", C::REL, 2, none, simple(K::Bridge));
  add("that", C::ADJ, 1, single, simple(K::Anaphoric));
  add("previous", C::ADJ, 1, single, simple(K::Anaphoric));
  add("which", C::REL, 2, none, simple(K::Bridge));
  add("is", C::VPRES, 1, none, simple(K::Identity));
  add("that's", C::RELVPRES, 1, none, simple(K::Identity));
  add("it's", C::RELVPRES, 1, none, simple(K::Identity));
  add("just", C::SPEC, 1, none, simple(K::Identity));
  add("right", C::SPEC, 1, none, simple(K::Identity));
  return out;
}

std::vector<ColourModel> fit_starter_colour_models(std::uint64_t seed, int cones_per_class) {
  if (cones_per_class < 1) {
    throw Error(Errc::kInvalidArgument, "cones_per_class must be positive");
  }
  std::vector<ColourTriple> samples[2];
  int cones[2] = {0, 0};
  for (std::uint64_t s = seed; cones[0] < cones_per_class || cones[1] < cones_per_class; ++s) {
    const Scene scene = generate_layout(s, kMaxObjects);
    const Raster raster = render(scene);
    for (const auto& o : scene.objects) {
      const int k = o.colour_class == ColourClass::kGreen ? 0 : 1;
      if (cones[k] >= cones_per_class) continue;
      ++cones[k];
      for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
          if (raster.owner(x, y) != o.id) continue;
          const Rgb c = raster.colour(x, y);
          samples[k].push_back({double(c.r), double(c.g), double(c.b)});
        }
      }
    }
  }
  return {fit_colour_model("green", samples[0]), fit_colour_model("purple", samples[1])};
}

}  // namespace bishop
