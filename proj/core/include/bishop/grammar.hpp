#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace bishop {

/// Grammatical categories. Terminal names follow the lexicon file; NP is the
/// only nonterminal that never appears on a lexical entry.
enum class Category { ADJ, CADJ, N, REL, VPRES, RELVPRES, ART, SPEC, P, POF, PAT, PIN, NP };

std::string_view to_string(Category c);
/// Throws Errc::kValidation for unknown names.
Category category_from_string(std::string_view name);

/// T_k(T_a, ...): the composer carried by tail constituent `composer` is applied
/// to the values of the tail constituents listed in `args`.
struct ArgTemplate {
  int composer = 0;
  std::vector<int> args;

  friend bool operator==(const ArgTemplate&, const ArgTemplate&) = default;
};

ArgTemplate parse_template(std::string_view text);
std::string to_string(const ArgTemplate& t);

struct GrammarRule {
  Category head = Category::NP;
  std::vector<Category> tail;
  std::vector<ArgTemplate> templates;

  /// "NP <- NP P NP : T1(T0,T2)"
  std::string name() const;
  friend bool operator==(const GrammarRule&, const GrammarRule&) = default;
};

struct Grammar {
  std::vector<GrammarRule> rules;

  /// The nineteen rules of the reference grammar.
  static Grammar standard();
  /// Throws Errc::kValidation on empty tails, missing templates or template
  /// indices outside the tail.
  void validate() const;
  friend bool operator==(const Grammar&, const Grammar&) = default;
};

nlohmann::json grammar_to_json(const Grammar& grammar);
Grammar grammar_from_json(const nlohmann::json& doc);

}  // namespace bishop
