#include <algorithm>
#include <sstream>

#include "bishop/error.hpp"
#include "bishop/harness.hpp"
#include "json_util.hpp"

namespace bishop {

std::vector<CorpusRecord> parse_corpus(std::string_view text,
                                       const std::filesystem::path& base_dir) {
  std::vector<CorpusRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = "corpus line " + std::to_string(number);
    try {
      const auto doc = detail::parse_json(line, where);
      CorpusRecord r;
      r.line = number;
      r.session = detail::require(doc, "session", where).get<std::string>();
      if (doc.contains("index")) r.index = doc.at("index").get<int>();
      if (doc.contains("scene")) {
        const auto& s = doc.at("scene");
        r.scene = s.is_string() ? load_scene_file(base_dir / s.get<std::string>())
                                : scene_from_json(s);
      }
      r.utterance = detail::require(doc, "utterance", where).get<std::string>();
      r.target = detail::require(doc, "target", where).get<ObjectId>();
      r.tags = doc.value("tags", std::vector<std::string>{});
      for (const auto& tag : r.tags) {
        const auto& known = known_tags();
        if (std::find(known.begin(), known.end(), tag) == known.end()) {
          throw Error(Errc::kValidation, "unknown tag '" + tag + "'");
        }
      }
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kValidation, where + ": " + e.what());
    } catch (const Error& e) {
      const std::string msg = e.what();
      throw Error(e.code(), msg.rfind("corpus line", 0) == 0 ? msg : where + ": " + msg);
    }
  }
  return records;
}

std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path) {
  try {
    return parse_corpus(detail::read_text_file(path), path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

nlohmann::json corpus_record_to_json(const CorpusRecord& r) {
  nlohmann::json j{{"session", r.session}};
  if (r.index) j["index"] = *r.index;
  if (r.scene) j["scene"] = scene_to_json(*r.scene);
  j["utterance"] = r.utterance;
  j["target"] = r.target;
  j["tags"] = r.tags;
  return j;
}

}  // namespace bishop
