#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bishop/colour_model.hpp"
#include "bishop/grammar.hpp"
#include "bishop/scene.hpp"

namespace bishop {

/// What a word refers to on its own ("cone" vs "cones").
enum class RefBehaviour { None, Single, Group };

enum class ComposerKind {
  ColourProbabilistic,
  OrderingExtremum,
  OrderingRegion,
  Grouping,
  Spatial,
  Anaphoric,
  Select,
  Bridge,
  GroupSplit,
  Identity,
};

std::string_view to_string(RefBehaviour r);
std::string_view to_string(ComposerKind k);
RefBehaviour ref_behaviour_from_string(std::string_view name);
ComposerKind composer_kind_from_string(std::string_view name);

enum class Axis { X, Y };
enum class OrderingMode { Min, Max, Region };

inline constexpr double kDefaultGamma = 0.38;

struct OrderingParams {
  double gamma = kDefaultGamma;
  Axis axis = Axis::X;
  OrderingMode mode = OrderingMode::Min;
  std::optional<BoardPos> region_point;  // set iff mode == Region
  std::string point_name;                // e.g. "centre"

  /// "O.x.min", "O.y.max", "O.region(centre)"
  std::string label() const;
  friend bool operator==(const OrderingParams&, const OrderingParams&) = default;
};

/// Named reference points for region composers, in board units.
std::optional<BoardPos> region_point(std::string_view name);

/// Only the fields relevant to `kind` are meaningful.
struct ComposerSpec {
  ComposerKind kind = ComposerKind::Identity;
  OrderingParams ordering;  // OrderingExtremum, OrderingRegion
  std::string direction;    // Spatial
  std::optional<int> count; // Grouping
  std::string model;        // ColourProbabilistic
  bool determinate = true;  // Select

  /// Short tag used in chart dumps, e.g. "P(purple)", "S", "O.x.min".
  std::string label() const;
  friend bool operator==(const ComposerSpec&, const ComposerSpec&) = default;
};

/// Arity values a composer kind accepts.
std::vector<int> allowed_arities(ComposerKind kind);

struct LexicalEntry {
  std::string word;
  Category category = Category::N;
  int arity = 0;
  RefBehaviour ref = RefBehaviour::None;
  ComposerSpec composer;

  friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
};

class Lexicon {
 public:
  Lexicon() = default;
  /// Validates every entry; throws Errc::kValidation on arity mismatches,
  /// incomplete parameters, dangling colour models or duplicate
  /// (word, category, kind) triples.
  Lexicon(std::vector<ColourModel> colour_models, std::vector<LexicalEntry> entries,
          Grammar grammar = Grammar::standard());

  /// Entries for a lowercase token, in file order; empty for unknown words.
  std::vector<const LexicalEntry*> lookup(std::string_view token) const;
  const ColourModel& colour_model(std::string_view name) const;

  const std::vector<ColourModel>& colour_models() const { return colour_models_; }
  const std::vector<LexicalEntry>& entries() const { return entries_; }
  const Grammar& grammar() const { return grammar_; }
  /// Position of an entry inside entries(); entries are never reallocated.
  std::size_t index_of(const LexicalEntry* entry) const {
    return static_cast<std::size_t>(entry - entries_.data());
  }

  friend bool operator==(const Lexicon& a, const Lexicon& b);

 private:
  std::vector<ColourModel> colour_models_;
  std::vector<LexicalEntry> entries_;
  Grammar grammar_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_word_;
};

inline constexpr std::string_view kLexiconFormat = "bishop-lexicon v1";

nlohmann::json lexicon_to_json(const Lexicon& lexicon);
Lexicon lexicon_from_json(const nlohmann::json& doc);
std::string serialize_lexicon(const Lexicon& lexicon);
/// Syntax errors carry a "line N" locus.
Lexicon parse_lexicon(std::string_view text);
Lexicon load_lexicon_file(const std::filesystem::path& path);
void save_lexicon_file(const Lexicon& lexicon, const std::filesystem::path& path);

/// The packaged word list. Colour entries reference models named "green" and
/// "purple", which must be supplied.
std::vector<LexicalEntry> starter_entries();

/// Fits the two colour models from per-pixel samples of `cones_per_class`
/// rendered cones of each class, drawn from scenes seeded from `seed`.
std::vector<ColourModel> fit_starter_colour_models(std::uint64_t seed, int cones_per_class = 100);

}  // namespace bishop
