#include <cctype>

#include "bishop/chart.hpp"

namespace bishop {

std::vector<std::string> tokenize(std::string_view utterance) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&]() {
    // Apostrophes survive only between letters or digits.
    std::string kept;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const char c = word[i];
      if (std::isalnum(static_cast<unsigned char>(c))) {
        kept.push_back(c);
      } else if (c == '\'' && !kept.empty() && i + 1 < word.size() &&
                 std::isalnum(static_cast<unsigned char>(word[i + 1]))) {
        kept.push_back(c);
      }
    }
    if (!kept.empty()) tokens.push_back(std::move(kept));
    word.clear();
  };
  for (char ch : utterance) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else {
      word.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return tokens;
}

}  // namespace bishop
