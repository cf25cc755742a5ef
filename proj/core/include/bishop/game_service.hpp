#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bishop/lexicon.hpp"
#include "bishop/resolution.hpp"
#include "bishop/scene.hpp"

namespace bishop {

/// The describer/listener game behind a transport-neutral interface: every
/// handler returns an HTTP status and a JSON body.
class GameService {
 public:
  using Clock = std::chrono::steady_clock;

  struct Options {
    std::chrono::minutes idle_timeout{30};
    /// When set, confirmed turns are appended to <dir>/<session>.jsonl as
    /// corpus records.
    std::optional<std::filesystem::path> transcript_dir;
    std::function<Clock::time_point()> now = [] { return Clock::now(); };
  };

  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  explicit GameService(std::shared_ptr<const Lexicon> lexicon);
  GameService(std::shared_ptr<const Lexicon> lexicon, Options options);

  /// Body: {seed?, objects?}. Replies {id, scene}.
  Response create_session(const nlohmann::json& body);
  Response scene(const std::string& id);
  /// Body: {text}. Resolves without touching the scene; the result becomes the
  /// session's pending selection.
  Response submit_utterance(const std::string& id, const nlohmann::json& body);
  /// Body: {correct, target?}. Replies {scene, score}.
  Response confirm(const std::string& id, const nlohmann::json& body);
  Response health() const;

  /// Drops sessions idle for longer than the timeout; returns how many.
  std::size_t expire_idle();
  std::size_t session_count() const;

  /// {width, height, objects:[{id, x, y, colour, polygon}]}
  static nlohmann::json scene_view(const Scene& scene);
  static Response error(int status, std::string_view code, std::string_view message);

 private:
  struct Turn {
    std::string utterance;
    std::optional<ObjectId> chosen;
    std::string outcome;  // "correct" or "rejected"
    std::optional<ObjectId> target;
  };
  struct Pending {
    std::string utterance;
    Resolution resolution;
  };
  struct Session {
    std::mutex mutex;
    std::string id;
    SceneState state;
    Scene initial;
    int correct = 0;
    int attempts = 0;
    std::uint64_t turns = 0;
    std::vector<Turn> transcript;
    std::optional<Pending> pending;
    Clock::time_point last_used;

    explicit Session(SceneState s) : state(std::move(s)), initial(state.scene()) {}
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();
  void persist(const Session& s, const Turn& turn) const;
  nlohmann::json score_json(const Session& s) const;

  std::shared_ptr<const Lexicon> lexicon_;
  Options options_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_;
};

}  // namespace bishop
