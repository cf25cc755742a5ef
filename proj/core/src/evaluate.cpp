#include <cstdio>
#include <map>
#include <sstream>

#include "bishop/error.hpp"
#include "bishop/harness.hpp"

namespace bishop {

namespace {

bool has_tag(const RecordOutcome& o, std::string_view tag) {
  return std::find(o.tags.begin(), o.tags.end(), tag) != o.tags.end();
}

void count(Tally& t, bool correct) {
  ++t.total;
  if (correct) ++t.correct;
}

std::string row(std::string_view label, const Tally& t) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-32.*s %6d %8d %8.1f%%\n", static_cast<int>(label.size()),
                label.data(), t.total, t.correct, 100.0 * t.accuracy());
  return buf;
}

nlohmann::json tally_json(const Tally& t) {
  return {{"total", t.total}, {"correct", t.correct}, {"accuracy", t.accuracy()}};
}

}  // namespace

EvalReport evaluate_corpus(const std::vector<CorpusRecord>& records, const Lexicon& lexicon,
                           std::uint64_t seed) {
  if (records.empty()) throw Error(Errc::kValidation, "corpus is empty");

  // Sessions in order of first appearance, records in file order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> sessions;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [it, fresh] = sessions.try_emplace(records[i].session);
    if (fresh) order.push_back(records[i].session);
    it->second.push_back(i);
  }

  EvalReport report;
  for (const auto& name : order) {
    const auto& idx = sessions.at(name);
    const CorpusRecord& head = records[idx.front()];
    if (!head.scene) {
      throw Error(Errc::kValidation, "corpus line " + std::to_string(head.line) +
                                         ": first record of session '" + name +
                                         "' has no scene");
    }
    SceneState state(*head.scene);
    std::optional<int> last_index;
    for (std::size_t k : idx) {
      const CorpusRecord& r = records[k];
      const std::string where = "corpus line " + std::to_string(r.line);
      if (r.scene && k != idx.front()) {
        throw Error(Errc::kValidation, where + ": only the first record of a session may carry a scene");
      }
      if (r.index) {
        if (last_index && *r.index <= *last_index) {
          throw Error(Errc::kValidation, where + ": session indices must increase");
        }
        last_index = r.index;
      }
      if (!state.scene().contains(r.target)) {
        throw Error(Errc::kValidation, where + ": target " + std::to_string(r.target) +
                                           " is not on the board at this turn");
      }
      const Resolution res = resolve(r.utterance, state, lexicon, seed + k);
      RecordOutcome o;
      o.session = r.session;
      o.line = r.line;
      o.utterance = r.utterance;
      o.target = r.target;
      o.chosen = res.chosen;
      o.consistency = res.consistency;
      o.correct = res.chosen && *res.chosen == r.target;
      o.tags = r.tags;
      report.outcomes.push_back(std::move(o));
      state = state.remove_object(r.target);
    }
  }

  for (const auto& o : report.outcomes) {
    count(report.all, o.correct);
    const bool other = has_tag(o, "other");
    if (!other) count(report.all_except_other, o.correct);
    if (!other && !has_tag(o, "error")) count(report.clean, o.correct);
    for (const auto& tag : o.tags) count(report.per_tag[tag], o.correct);
  }
  return report;
}

std::string EvalReport::to_text() const {
  std::ostringstream out;
  char header[128];
  std::snprintf(header, sizeof header, "%-32s %6s %8s %9s\n", "Strategy", "count", "correct",
                "accuracy");
  out << header;
  for (const auto& tag : known_tags()) {
    auto it = per_tag.find(tag);
    if (it != per_tag.end()) out << row(tag, it->second);
  }
  out << '\n';
  out << row("All", all);
  out << row("All except 'Other'", all_except_other);
  out << row("All except 'Other' and 'Errors'", clean);
  for (const auto& o : outcomes) {
    if (o.correct) continue;
    out << "MISS line " << o.line << " [" << o.session << "] \"" << o.utterance
        << "\" target=" << o.target << " chosen="
        << (o.chosen ? std::to_string(*o.chosen) : std::string("none")) << " ("
        << to_string(o.consistency) << ")\n";
  }
  return out.str();
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json tags = nlohmann::json::object();
  for (const auto& [tag, t] : per_tag) tags[tag] = tally_json(t);
  nlohmann::json records = nlohmann::json::array();
  for (const auto& o : outcomes) {
    records.push_back({{"session", o.session},
                       {"line", o.line},
                       {"utterance", o.utterance},
                       {"target", o.target},
                       {"chosen", o.chosen ? nlohmann::json(*o.chosen) : nlohmann::json()},
                       {"consistency", std::string(to_string(o.consistency))},
                       {"correct", o.correct}});
  }
  return {{"all", tally_json(all)},
          {"all_except_other", tally_json(all_except_other)},
          {"clean", tally_json(clean)},
          {"per_tag", std::move(tags)},
          {"records", std::move(records)}};
}

}  // namespace bishop
