#include <gtest/gtest.h>

#include "bishop/error.hpp"
#include "bishop/grammar.hpp"

namespace bishop {
namespace {

TEST(Grammar, StandardMatchesReferenceTable) {
  const std::vector<std::string> expected{
      "ADJ <- ADJ ADJ : T1(T0)",
      "NP <- ADJ NP : T0(T1)",
      "NP <- CADJ N : T0(T1)",
      "NP <- N : T0()",
      "NP <- ART NP : T0(T1)",
      "NP <- NP P NP : T1(T0,T2)",
      "NP <- NP P ART N POF NP : T3(T0,T5)",
      "NP <- NP RELVPRES P ART N POF NP : T3(T0,T5)",
      "NP <- NP P N POF NP : T2(T0,T4)",
      "NP <- NP REL VPRES NP : T1(T0,T3)",
      "NP <- NP REL P NP : T2(T0,T3)",
      "NP <- NP REL VPRES P NP : T3(T0,T4)",
      "NP <- NP RELVPRES P NP : T2(T0,T3)",
      "NP <- NP REL VPRES ADJ : T3(T0)",
      "NP <- NP RELVPRES ADJ : T2(T0)",
      "NP <- NP REL CADJ : T2(T0)",
      "P <- SPEC P : T0(T1)",
      "P <- P P : T1()",
      "P <- POF : T0()",
  };
  const Grammar g = Grammar::standard();
  ASSERT_EQ(g.rules.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(g.rules[i].name(), expected[i]);
  EXPECT_NO_THROW(g.validate());
}

TEST(Grammar, TemplateParsing) {
  EXPECT_EQ(parse_template("T1(T0,T2)"), (ArgTemplate{1, {0, 2}}));
  EXPECT_EQ(parse_template("T0()"), (ArgTemplate{0, {}}));
  EXPECT_EQ(parse_template(" T3( T0 , T5 ) "), (ArgTemplate{3, {0, 5}}));
  EXPECT_EQ(to_string(ArgTemplate{2, {0, 4}}), "T2(T0,T4)");
  for (const char* bad : {"", "T", "X1(T0)", "T1(T0", "T1(0)", "T1(T0,)"}) {
    EXPECT_THROW(parse_template(bad), Error) << bad;
  }
}

TEST(Grammar, JsonRoundTrip) {
  const Grammar g = Grammar::standard();
  EXPECT_EQ(grammar_from_json(grammar_to_json(g)), g);
}

TEST(Grammar, ValidateRejectsBadIndices) {
  Grammar g;
  g.rules.push_back({Category::NP, {Category::N}, {ArgTemplate{1, {}}}});
  EXPECT_THROW(g.validate(), Error);
  g.rules[0].templates = {};
  EXPECT_THROW(g.validate(), Error);
  g.rules[0] = {Category::NP, {}, {ArgTemplate{0, {}}}};
  EXPECT_THROW(g.validate(), Error);
}

TEST(Category, NamesRoundTrip) {
  for (auto c : {Category::ADJ, Category::CADJ, Category::N, Category::REL, Category::VPRES,
                 Category::RELVPRES, Category::ART, Category::SPEC, Category::P, Category::POF,
                 Category::PAT, Category::PIN, Category::NP}) {
    EXPECT_EQ(category_from_string(to_string(c)), c);
  }
  EXPECT_THROW(category_from_string("VERB"), Error);
}

}  // namespace
}  // namespace bishop
