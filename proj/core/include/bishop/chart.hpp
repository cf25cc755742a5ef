#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bishop/grammar.hpp"
#include "bishop/semantic_value.hpp"

namespace bishop {

/// Lowercases, splits on whitespace and strips punctuation; apostrophes
/// between letters are kept ("that's").
std::vector<std::string> tokenize(std::string_view utterance);

/// A completed constituent.
struct Edge {
  Category category = Category::NP;
  int start = 0;
  int end = 0;  // exclusive; extended over trailing unknown words
  Value value;
  int rule = -1;  // index into the grammar, -1 for lexical leaves
  int template_index = 0;
  std::vector<int> children;
  std::string word;  // leaves only

  int length() const { return end - start; }
};

class Chart {
 public:
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  /// Tokens with no lexical entry.
  const std::vector<int>& unknown() const { return unknown_; }

  /// One line per edge: "span=[i,j) CAT concept={id:w,...} via RULE".
  std::string dump(const Grammar& grammar) const;

 private:
  friend Chart parse(const std::vector<std::string>&, const Lexicon&, const Grammar&,
                     const World&);
  std::vector<std::string> tokens_;
  std::vector<int> unknown_;
  std::vector<Edge> edges_;
};

/// Bottom-up chart parse with composition on rule completion. Unknown tokens
/// produce no leaves; every edge that would end right before one ends after
/// it instead.
Chart parse(const std::vector<std::string>& tokens, const Lexicon& lexicon,
            const Grammar& grammar, const World& world);

}  // namespace bishop
