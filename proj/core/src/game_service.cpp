#include "bishop/game_service.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "bishop/error.hpp"
#include "bishop/harness.hpp"

namespace bishop {

namespace {

int status_for(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument:
    case Errc::kValidation:
    case Errc::kParse:
      return 400;
    case Errc::kNotFound:
      return 404;
    case Errc::kConflict:
      return 409;
    default:
      return 500;
  }
}

std::string hex_colour(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::uint64_t random_u64() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

template <typename F>
GameService::Response guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return GameService::error(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return GameService::error(400, to_string(Errc::kValidation), e.what());
  }
}

}  // namespace

GameService::GameService(std::shared_ptr<const Lexicon> lexicon)
    : GameService(std::move(lexicon), Options{}) {}

GameService::GameService(std::shared_ptr<const Lexicon> lexicon, Options options)
    : lexicon_(std::move(lexicon)), options_(std::move(options)), id_salt_(random_u64()) {
  if (!lexicon_) throw Error(Errc::kInvalidArgument, "game service needs a lexicon");
  if (options_.transcript_dir) std::filesystem::create_directories(*options_.transcript_dir);
}

GameService::Response GameService::error(int status, std::string_view code,
                                         std::string_view message) {
  return {status, {{"code", std::string(code)}, {"message", std::string(message)}}};
}

nlohmann::json GameService::scene_view(const Scene& scene) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : scene.objects) {
    nlohmann::json polygon = nlohmann::json::array();
    for (const Vec2& v : cone_footprint(o, scene.width, scene.height)) {
      polygon.push_back({v.x, v.y});
    }
    objects.push_back({{"id", o.id},
                       {"x", o.board_pos.x},
                       {"y", o.board_pos.y},
                       {"colour", hex_colour(base_colour(o.colour_class))},
                       {"polygon", std::move(polygon)}});
  }
  return {{"width", scene.width}, {"height", scene.height}, {"objects", std::move(objects)}};
}

std::string GameService::new_id() {
  std::lock_guard lock(sessions_mutex_);
  std::uint64_t x = id_salt_ + 0x9e3779b97f4a7c15ULL * ++id_counter_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(Errc::kNotFound, "unknown session '" + id + "'");
  return it->second;
}

nlohmann::json GameService::score_json(const Session& s) const {
  return {{"correct", s.correct}, {"attempts", s.attempts}};
}

GameService::Response GameService::create_session(const nlohmann::json& body) {
  return guarded([&]() -> Response {
    const nlohmann::json args = body.is_null() ? nlohmann::json::object() : body;
    if (!args.is_object()) throw Error(Errc::kValidation, "expected a JSON object");
    const auto seed = args.contains("seed") ? args.at("seed").get<std::uint64_t>() : random_u64();
    const int objects = args.value("objects", kMaxObjects);
    auto session = std::make_shared<Session>(generate_scene(seed, objects));
    session->id = new_id();
    session->last_used = options_.now();
    {
      std::lock_guard lock(sessions_mutex_);
      sessions_[session->id] = session;
    }
    return {201, {{"id", session->id},
                  {"seed", seed},
                  {"scene", scene_view(session->state.scene())},
                  {"score", score_json(*session)}}};
  });
}

GameService::Response GameService::scene(const std::string& id) {
  return guarded([&]() -> Response {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    s->last_used = options_.now();
    nlohmann::json body = scene_view(s->state.scene());
    body["score"] = score_json(*s);
    body["pending"] = s->pending.has_value();
    return {200, std::move(body)};
  });
}

GameService::Response GameService::submit_utterance(const std::string& id,
                                                    const nlohmann::json& body) {
  return guarded([&]() -> Response {
    auto s = find(id);
    if (!body.is_object() || !body.contains("text") || !body.at("text").is_string()) {
      throw Error(Errc::kValidation, "expected {\"text\": string}");
    }
    const std::string text = body.at("text").get<std::string>();
    std::lock_guard lock(s->mutex);
    s->last_used = options_.now();
    if (s->state.empty()) throw Error(Errc::kConflict, "the board is empty; the game is over");
    Resolution r = resolve(text, s->state, *lexicon_, s->state.seed() + s->turns++);
    nlohmann::json out = resolution_to_json(r);
    s->pending = Pending{text, std::move(r)};
    out["pending"] = true;
    return {200, std::move(out)};
  });
}

GameService::Response GameService::confirm(const std::string& id, const nlohmann::json& body) {
  return guarded([&]() -> Response {
    auto s = find(id);
    if (!body.is_object() || !body.contains("correct") || !body.at("correct").is_boolean()) {
      throw Error(Errc::kValidation, "expected {\"correct\": boolean, \"target\"?: id}");
    }
    const bool correct = body.at("correct").get<bool>();
    std::optional<ObjectId> target;
    if (body.contains("target") && !body.at("target").is_null()) {
      target = body.at("target").get<ObjectId>();
    }
    std::lock_guard lock(s->mutex);
    s->last_used = options_.now();
    if (!s->pending) throw Error(Errc::kConflict, "no pending selection to confirm");
    if (target && !s->state.scene().contains(*target)) {
      throw Error(Errc::kNotFound, "target " + std::to_string(*target) + " is not on the board");
    }
    const auto chosen = s->pending->resolution.chosen;
    Turn turn{s->pending->utterance, chosen, correct ? "correct" : "rejected", target};
    if (correct) {
      if (!chosen) throw Error(Errc::kConflict, "nothing was selected");
      if (target && *target != *chosen) {
        throw Error(Errc::kConflict, "target does not match the selected object");
      }
      turn.target = chosen;
      s->state = s->state.remove_object(*chosen);
      ++s->correct;
    }
    ++s->attempts;
    s->pending.reset();
    persist(*s, turn);
    s->transcript.push_back(std::move(turn));
    return {200, {{"scene", scene_view(s->state.scene())},
                  {"score", score_json(*s)},
                  {"remaining", s->state.scene().objects.size()},
                  {"removed", correct ? nlohmann::json(*chosen) : nlohmann::json()}}};
  });
}

void GameService::persist(const Session& s, const Turn& turn) const {
  // Only turns with a known target make usable corpus records.
  if (!options_.transcript_dir || !turn.target || turn.outcome != "correct") return;
  CorpusRecord r;
  r.session = s.id;
  r.index = s.correct;
  if (s.correct == 1) r.scene = s.initial;
  r.utterance = turn.utterance;
  r.target = *turn.target;
  std::ofstream out(*options_.transcript_dir / (s.id + ".jsonl"), std::ios::app);
  if (!out) throw Error(Errc::kIo, "cannot write transcript for session " + s.id);
  out << corpus_record_to_json(r).dump() << '\n';
}

GameService::Response GameService::health() const {
  return {200, {{"status", "ok"}, {"sessions", session_count()}}};
}

std::size_t GameService::expire_idle() {
  const auto now = options_.now();
  std::lock_guard lock(sessions_mutex_);
  std::size_t removed = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    bool idle = false;
    {
      std::lock_guard session_lock(it->second->mutex);
      idle = now - it->second->last_used > options_.idle_timeout;
    }
    if (idle) {
      it = sessions_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t GameService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

}  // namespace bishop
