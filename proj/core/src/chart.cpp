#include "bishop/chart.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

#include "bishop/error.hpp"

namespace bishop {

namespace {

struct Arc {
  int rule = 0;
  int start = 0;
  int end = 0;
  std::vector<int> children;
};

class Parser {
 public:
  Parser(const std::vector<std::string>& tokens, const Lexicon& lexicon, const Grammar& grammar,
         const World& world)
      : lexicon_(lexicon), grammar_(grammar), world_(world), n_(static_cast<int>(tokens.size())) {
    known_.resize(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) known_[i] = !lexicon.lookup(tokens[i]).empty();
  }

  std::vector<Edge> run(const std::vector<std::string>& tokens) {
    for (int i = 0; i < n_; ++i) {
      for (const LexicalEntry* entry : lexicon_.lookup(tokens[static_cast<std::size_t>(i)])) {
        Edge leaf;
        leaf.category = entry->category;
        leaf.start = i;
        leaf.end = extend(i + 1);
        leaf.value = leaf_value(*entry, i);
        leaf.word = entry->word;
        add(std::move(leaf));
      }
    }
    while (!agenda_.empty()) {
      const int e = agenda_.front();
      agenda_.pop_front();
      process(e);
    }
    return std::move(edges_);
  }

 private:
  using Key = std::pair<int, Category>;

  int extend(int end) const {
    while (end < n_ && !known_[static_cast<std::size_t>(end)]) ++end;
    return end;
  }

  void add(Edge edge) {
    std::ostringstream key;
    key << static_cast<int>(edge.category) << '/' << edge.start << '/' << edge.end << '/'
        << value_identity(edge.value);
    if (!seen_.insert(key.str()).second) return;
    edges_.push_back(std::move(edge));
    agenda_.push_back(static_cast<int>(edges_.size()) - 1);
  }

  void process(int e) {
    const Category cat = edges_[static_cast<std::size_t>(e)].category;
    const int start = edges_[static_cast<std::size_t>(e)].start;
    const int end = edges_[static_cast<std::size_t>(e)].end;
    by_start_[{start, cat}].push_back(e);

    for (std::size_t r = 0; r < grammar_.rules.size(); ++r) {
      if (grammar_.rules[r].tail.front() == cat) {
        advance(Arc{static_cast<int>(r), start, end, {e}});
      }
    }
    const auto waiting = waiting_.find({start, cat});
    if (waiting == waiting_.end()) return;
    for (std::size_t i = 0; i < waiting->second.size(); ++i) {
      Arc arc = arcs_[static_cast<std::size_t>(waiting->second[i])];
      arc.end = end;
      arc.children.push_back(e);
      advance(std::move(arc));
    }
  }

  void advance(Arc arc) {
    const GrammarRule& rule = grammar_.rules[static_cast<std::size_t>(arc.rule)];
    if (arc.children.size() == rule.tail.size()) {
      complete(arc);
      return;
    }
    const Key key{arc.end, rule.tail[arc.children.size()]};
    arcs_.push_back(arc);
    waiting_[key].push_back(static_cast<int>(arcs_.size()) - 1);
    const auto ready = by_start_.find(key);
    if (ready == by_start_.end()) return;
    const std::vector<int> edges = ready->second;
    for (int e : edges) {
      Arc next = arc;
      next.end = edges_[static_cast<std::size_t>(e)].end;
      next.children.push_back(e);
      advance(std::move(next));
    }
  }

  void complete(const Arc& arc) {
    const GrammarRule& rule = grammar_.rules[static_cast<std::size_t>(arc.rule)];
    for (std::size_t t = 0; t < rule.templates.size(); ++t) {
      const ArgTemplate& tmpl = rule.templates[t];
      std::vector<Value> results;
      try {
        std::vector<const Value*> args;
        for (int a : tmpl.args) {
          args.push_back(&edges_[static_cast<std::size_t>(arc.children[static_cast<std::size_t>(a)])].value);
        }
        const Value& head =
            edges_[static_cast<std::size_t>(arc.children[static_cast<std::size_t>(tmpl.composer)])].value;
        results = apply_value(head, args, world_, lexicon_);
      } catch (const Error&) {
        continue;  // the rule does not fire
      }
      for (auto& value : results) {
        Edge edge;
        edge.category = rule.head;
        edge.start = arc.start;
        edge.end = arc.end;
        edge.value = std::move(value);
        edge.rule = arc.rule;
        edge.template_index = static_cast<int>(t);
        edge.children = arc.children;
        add(std::move(edge));
      }
    }
  }

  const Lexicon& lexicon_;
  const Grammar& grammar_;
  const World& world_;
  int n_;
  std::vector<bool> known_;
  std::vector<Edge> edges_;
  std::deque<int> agenda_;
  std::unordered_set<std::string> seen_;
  std::vector<Arc> arcs_;
  std::map<Key, std::vector<int>> waiting_;
  std::map<Key, std::vector<int>> by_start_;
};

}  // namespace

Chart parse(const std::vector<std::string>& tokens, const Lexicon& lexicon,
            const Grammar& grammar, const World& world) {
  Chart chart;
  chart.tokens_ = tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (lexicon.lookup(tokens[i]).empty()) chart.unknown_.push_back(static_cast<int>(i));
  }
  chart.edges_ = Parser(tokens, lexicon, grammar, world).run(tokens);
  return chart;
}

std::string Chart::dump(const Grammar& grammar) const {
  std::ostringstream out;
  for (const Edge& e : edges_) {
    out << "span=[" << e.start << ',' << e.end << ") " << to_string(e.category) << ' ';
    if (const Concept* c = as_concept(e.value)) {
      out << "concept=" << c->weights_string() << " ref=" << to_string(c->ref_kind);
      if (c->determinate) out << " det";
      if (c->epoch == Epoch::Previous) out << " prev";
    } else {
      out << std::get<Function>(e.value).label();
    }
    out << " via ";
    if (e.rule < 0) {
      out << "lex:" << e.word;
    } else {
      const GrammarRule& rule = grammar.rules[static_cast<std::size_t>(e.rule)];
      out << to_string(rule.head) << " <-";
      for (Category c : rule.tail) out << ' ' << to_string(c);
      out << " : " << to_string(rule.templates[static_cast<std::size_t>(e.template_index)]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace bishop
