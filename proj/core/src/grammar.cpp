#include "bishop/grammar.hpp"

#include <array>
#include <cctype>

#include "bishop/error.hpp"
#include "json_util.hpp"

namespace bishop {

namespace {

constexpr std::array<std::pair<Category, std::string_view>, 13> kCategoryNames{{
    {Category::ADJ, "ADJ"},
    {Category::CADJ, "CADJ"},
    {Category::N, "N"},
    {Category::REL, "REL"},
    {Category::VPRES, "VPRES"},
    {Category::RELVPRES, "RELVPRES"},
    {Category::ART, "ART"},
    {Category::SPEC, "SPEC"},
    {Category::P, "P"},
    {Category::POF, "POF"},
    {Category::PAT, "PAT"},
    {Category::PIN, "PIN"},
    {Category::NP, "NP"},
}};

GrammarRule rule(Category head, std::vector<Category> tail, std::string_view tmpl) {
  return {head, std::move(tail), {parse_template(tmpl)}};
}

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [cat, name] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "?";
}

Category category_from_string(std::string_view name) {
  for (const auto& [cat, n] : kCategoryNames) {
    if (n == name) return cat;
  }
  throw Error(Errc::kValidation, "unknown category '" + std::string(name) + "'");
}

ArgTemplate parse_template(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto fail = [&]() -> Error {
    return Error(Errc::kValidation, "malformed argument template '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  auto index = [&]() {
    if (pos >= s.size() || s[pos] != 'T') throw fail();
    ++pos;
    const std::size_t begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == begin || pos - begin > 3) throw fail();
    return std::stoi(s.substr(begin, pos - begin));
  };

  ArgTemplate t;
  t.composer = index();
  if (pos >= s.size() || s[pos] != '(') throw fail();
  ++pos;
  if (pos < s.size() && s[pos] == ')') {
    ++pos;
  } else {
    while (true) {
      t.args.push_back(index());
      if (pos >= s.size()) throw fail();
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      if (s[pos] != ',') throw fail();
      ++pos;
    }
  }
  if (pos != s.size()) throw fail();
  return t;
}

std::string to_string(const ArgTemplate& t) {
  std::string out = "T" + std::to_string(t.composer) + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += "T" + std::to_string(t.args[i]);
  }
  return out + ")";
}

std::string GrammarRule::name() const {
  std::string out(to_string(head));
  out += " <-";
  for (Category c : tail) {
    out += " ";
    out += to_string(c);
  }
  out += " :";
  for (const auto& t : templates) out += " " + to_string(t);
  return out;
}

Grammar Grammar::standard() {
  using C = Category;
  Grammar g;
  g.rules = {
      rule(C::ADJ, {C::ADJ, C::ADJ}, "T1(T0)"),
      rule(C::NP, {C::ADJ, C::NP}, "T0(T1)"),
      rule(C::NP, {C::CADJ, C::N}, "T0(T1)"),
      rule(C::NP, {C::N}, "T0()"),
      rule(C::NP, {C::ART, C::NP}, "T0(T1)"),
      rule(C::NP, {C::NP, C::P, C::NP}, "T1(T0,T2)"),
      rule(C::NP, {C::NP, C::P, C::ART, C::N, C::POF, C::NP}, "T3(T0,T5)"),
      rule(C::NP, {C::NP, C::RELVPRES, C::P, C::ART, C::N, C::POF, C::NP}, "T3(T0,T5)"),
      rule(C::NP, {C::NP, C::P, C::N, C::POF, C::NP}, "T2(T0,T4)"),
      rule(C::NP, {C::NP, C::REL, C::VPRES, C::NP}, "T1(T0,T3)"),
      rule(C::NP, {C::NP, C::REL, C::P, C::NP}, "T2(T0,T3)"),
      rule(C::NP, {C::NP, C::REL, C::VPRES, C::P, C::NP}, "T3(T0,T4)"),
      rule(C::NP, {C::NP, C::RELVPRES, C::P, C::NP}, "T2(T0,T3)"),
      rule(C::NP, {C::NP, C::REL, C::VPRES, C::ADJ}, "T3(T0)"),
      rule(C::NP, {C::NP, C::RELVPRES, C::ADJ}, "T2(T0)"),
      rule(C::NP, {C::NP, C::REL, C::CADJ}, "T2(T0)"),
      rule(C::P, {C::SPEC, C::P}, "T0(T1)"),
      rule(C::P, {C::P, C::P}, "T1()"),
      rule(C::P, {C::POF}, "T0()"),
  };
  return g;
}

void Grammar::validate() const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    const std::string where = "grammar rule " + std::to_string(i);
    if (r.tail.empty()) throw Error(Errc::kValidation, where + ": empty tail");
    if (r.templates.empty()) throw Error(Errc::kValidation, where + ": no argument template");
    const int n = static_cast<int>(r.tail.size());
    for (const auto& t : r.templates) {
      auto bad = [n](int k) { return k < 0 || k >= n; };
      bool invalid = bad(t.composer);
      for (int a : t.args) invalid = invalid || bad(a) || a == t.composer;
      if (invalid) {
        throw Error(Errc::kValidation,
                    where + ": template " + to_string(t) + " does not fit a tail of " +
                        std::to_string(n));
      }
    }
  }
}

nlohmann::json grammar_to_json(const Grammar& grammar) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : grammar.rules) {
    nlohmann::json tail = nlohmann::json::array();
    for (Category c : r.tail) tail.push_back(std::string(to_string(c)));
    nlohmann::json templates = nlohmann::json::array();
    for (const auto& t : r.templates) templates.push_back(to_string(t));
    rules.push_back({{"head", std::string(to_string(r.head))},
                     {"tail", std::move(tail)},
                     {"templates", std::move(templates)}});
  }
  return rules;
}

Grammar grammar_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(Errc::kValidation, "grammar: expected an array of rules");
  Grammar g;
  try {
    for (const auto& item : doc) {
      GrammarRule r;
      r.head = category_from_string(detail::require(item, "head", "grammar").get<std::string>());
      for (const auto& c : detail::require(item, "tail", "grammar")) {
        r.tail.push_back(category_from_string(c.get<std::string>()));
      }
      for (const auto& t : detail::require(item, "templates", "grammar")) {
        r.templates.push_back(parse_template(t.get<std::string>()));
      }
      g.rules.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kValidation, std::string("grammar: ") + e.what());
  }
  g.validate();
  return g;
}

}  // namespace bishop
