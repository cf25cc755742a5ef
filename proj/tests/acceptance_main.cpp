// Runs every acceptance criterion and prints one line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "bishop/chart.hpp"
#include "bishop/error.hpp"
#include "bishop/harness.hpp"
#include "bishop/resolution.hpp"
#include "test_support.hpp"

namespace {

using namespace bishop;
using Clock = std::chrono::steady_clock;

struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BISHOP_CLI + "\" " + args + " 2>&1";
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

double heading(Vec2 v) { return std::atan2(v.y, v.x); }

double angle_gap(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 2 * std::numbers::pi - d);
}

// 1
void golden() {
  const SceneState s(load_scene_file(test::data_path("scenes/purple_on_left.json")));
  const auto centroids = test::scan_centroids(s.raster());
  std::optional<ObjectId> leftmost, leftmost_purple;
  for (const auto& o : s.scene().objects) {
    const double x = centroids.at(o.id).x;
    if (!leftmost || x < centroids.at(*leftmost).x) leftmost = o.id;
    if (o.colour_class == ColourClass::kPurple &&
        (!leftmost_purple || x < centroids.at(*leftmost_purple).x)) {
      leftmost_purple = o.id;
    }
  }
  check(leftmost_purple && leftmost_purple != leftmost, "fixture: leftmost purple is leftmost");

  const auto t0 = Clock::now();
  const DetailedResolution d =
      resolve_detailed("the purple one on the left", s, test::packaged_lexicon(),
                       test::packaged_lexicon().grammar(), 0);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  check(d.resolution.chosen == leftmost_purple, "wrong referent");
  check(d.resolution.consistency == Consistency::Consistent, "verdict is not Consistent");
  bool np = false;
  for (const auto& e : d.chart.edges()) {
    np |= e.category == Category::NP && e.start == 0 && e.end == 6;
  }
  check(np, "no NP over [0,6)");
  check(secs < 1.0, "took " + std::to_string(secs) + " s");
}

// 2
void baseline() {
  const auto t0 = Clock::now();
  const CommandResult r = run_cli("baseline --sessions 10000 --trials 30 --json");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  check(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
  const double mean = nlohmann::json::parse(r.out).at("mean").get<double>();
  double h = 0;
  for (int k = 1; k <= 30; ++k) h += 1.0 / k;
  check(std::fabs(mean - h / 30) <= 0.003, "mean " + std::to_string(mean));
  check(secs < 10.0, "took " + std::to_string(secs) + " s");
}

// 3
void regression_corpus() {
  const auto path = test::data_path("corpus/regression.jsonl");
  const auto records = load_corpus(path);
  check(records.size() >= 40, "only " + std::to_string(records.size()) + " records");
  std::set<std::string> tags;
  std::set<std::string> sessions;
  for (const auto& r : records) {
    tags.insert(r.tags.begin(), r.tags.end());
    sessions.insert(r.session);
  }
  for (const char* t : {"colour", "extremum", "region", "grouping", "spatial", "anaphora",
                        "combined", "other", "error"}) {
    check(tags.count(t) > 0, std::string("no record tagged ") + t);
  }
  check(sessions.size() >= 3, "fewer than 3 sessions");

  const auto t0 = Clock::now();
  const CommandResult r = run_cli("eval --json --corpus " + q(path));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  check(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
  const auto all = nlohmann::json::parse(r.out).at("all");
  check(all.at("correct") == all.at("total"), "accuracy " + all.at("accuracy").dump());
  check(secs < 30.0, "took " + std::to_string(secs) + " s");
}

// 4
void ordering_oracle() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> count(2, kMaxObjects);
  const std::vector<std::pair<Axis, OrderingMode>> cases{{Axis::X, OrderingMode::Min},
                                                         {Axis::X, OrderingMode::Max},
                                                         {Axis::Y, OrderingMode::Min},
                                                         {Axis::Y, OrderingMode::Max}};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SceneState s(generate_scene(seed, count(rng)));
    VisionContext v(s.raster());
    const World w = test::world_of(v);
    const Concept all = default_concept(w, RefBehaviour::Single);
    const auto centroids = test::scan_centroids(s.raster());
    for (const auto& [axis, mode] : cases) {
      OrderingParams p;
      p.axis = axis;
      p.mode = mode;
      const Concept c = apply_ordering(p, all, w);
      std::vector<std::pair<double, ObjectId>> ranked;
      for (const auto& [id, pos] : centroids) {
        const double f = axis == Axis::X ? pos.x : pos.y;
        ranked.push_back({mode == OrderingMode::Min ? f : -f, id});
      }
      std::sort(ranked.begin(), ranked.end());
      const std::string where = "seed " + std::to_string(seed) + " " + p.label();
      const ObjectId top = referents_single(c);
      const bool tied_top = ranked.size() > 1 && ranked[1].first - ranked[0].first < 1e-9;
      check(top == ranked[0].second || (tied_top && top == ranked[1].second), where + ": argmax");
      for (std::size_t i = 1; i < ranked.size(); ++i) {
        if (ranked[i].first - ranked[i - 1].first < 1e-9) continue;
        check(c.weights.at(ranked[i].second) < c.weights.at(ranked[i - 1].second),
              where + ": weight not decreasing at rank " + std::to_string(i));
      }
    }
  }
}

// 5
void colour_separation() {
  const Lexicon& lex = test::packaged_lexicon();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> count(2, kMaxObjects);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const SceneState s(generate_scene(10000 + seed, count(rng)));
    VisionContext v(s.raster());
    const World w = test::world_of(v);
    for (const auto cls : {ColourClass::kGreen, ColourClass::kPurple}) {
      const std::string name = cls == ColourClass::kGreen ? "green" : "purple";
      std::set<ObjectId> truth;
      for (const auto& o : s.scene().objects) {
        if (o.colour_class == cls) truth.insert(o.id);
      }
      if (truth.empty()) continue;
      const Concept c =
          compose_colour(lex.colour_model(name), default_concept(w, RefBehaviour::Single), w);
      std::vector<std::pair<double, ObjectId>> ranked;
      for (const auto& [id, weight] : c.weights) ranked.push_back({-weight, id});
      std::sort(ranked.begin(), ranked.end());
      std::set<ObjectId> top;
      for (std::size_t i = 0; i < truth.size(); ++i) top.insert(ranked[i].second);
      check(top == truth, "seed " + std::to_string(10000 + seed) + " " + name);
      if (truth.size() < ranked.size()) {
        check(-ranked[truth.size() - 1].first > -ranked[truth.size()].first,
              "seed " + std::to_string(10000 + seed) + " " + name + ": tie at the boundary");
      }
    }
  }
}

// 6
void avs_limits() {
  std::mt19937_64 rng(6);
  for (int pair = 0; pair < 100; ++pair) {
    const SceneState s(generate_scene(20000 + pair, 8));
    const VisionContext v(s.raster());
    const auto ids = v.base_ids();
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    const ObjectId t = ids[pick(rng)];
    ObjectId l = t;
    while (l == t) l = ids[pick(rng)];
    const std::string where = "pair " + std::to_string(pair);

    const auto centroids = test::scan_centroids(s.raster());
    const Vec2 ct = centroids.at(t);
    const Vec2 cl = centroids.at(l);
    check(angle_gap(heading(v.avs_direction(t, l, 1.0)), std::atan2(ct.y - cl.y, ct.x - cl.x)) <=
              1e-6,
          where + ": lambda=1");

    std::vector<Pixel> tp, lp;
    for (int y = 0; y < s.raster().height; ++y) {
      for (int x = 0; x < s.raster().width; ++x) {
        const ObjectId o = s.raster().owner(x, y);
        if (o == t) tp.push_back({x, y});
        if (o == l) lp.push_back({x, y});
      }
    }
    long best = std::numeric_limits<long>::max();
    for (const Pixel a : lp) {
      for (const Pixel b : tp) {
        const long dx = b.x - a.x, dy = b.y - a.y;
        best = std::min(best, dx * dx + dy * dy);
      }
    }
    const double got = heading(v.avs_direction(t, l, 0.0));
    bool matched = false;
    for (const Pixel a : lp) {
      for (const Pixel b : tp) {
        const long dx = b.x - a.x, dy = b.y - a.y;
        if (dx * dx + dy * dy == best) {
          matched |= angle_gap(got, std::atan2(static_cast<double>(dy), static_cast<double>(dx))) <=
                     1e-6;
        }
      }
    }
    check(matched, where + ": lambda=0");
  }

  std::uniform_int_distribution<int> coord(0, 63);
  for (int pair = 0; pair < 100; ++pair) {
    Pixel a{coord(rng), coord(rng)};
    Pixel b{coord(rng), coord(rng)};
    while (b == a) b = {coord(rng), coord(rng)};
    const Raster r = test::paint(64, 64, {{0, {a}, {}}, {1, {b}, {}}});
    const VisionContext v(r);
    const double ref = heading(v.avs_direction(1, 0, 0.0));
    for (double lambda : {0.1, 0.5, 0.7, 1.0}) {
      check(angle_gap(heading(v.avs_direction(1, 0, lambda)), ref) <= 1e-6,
            "single pixels depend on lambda");
    }
  }
}

// 7
void grouping_fixture() {
  const SceneState s(load_scene_file(test::data_path("scenes/three_clusters.json")));
  VisionContext v(s.raster());
  const auto ids = v.base_ids();
  const auto oracle = test::union_find_groups(test::scan_centroids(s.raster()), v.width(),
                                              v.height(), v.params().group_distance_threshold);
  const std::vector<std::vector<ObjectId>> expected{{0, 1, 2}, {3, 4}, {5, 6, 7, 8}};
  check(oracle == expected, "fixture does not form three clusters");
  std::vector<std::vector<ObjectId>> got;
  for (const auto& g : v.find_groups(ids).groups) got.push_back(g.members);
  std::sort(got.begin(), got.end());
  check(got == oracle, "find_groups differs from union-find");

  const World w = test::world_of(v);
  for (int n : {2, 3, 4, 5}) {
    std::vector<std::vector<ObjectId>> want;
    for (const auto& g : oracle) {
      if (static_cast<int>(g.size()) == n) want.push_back(g);
    }
    std::vector<std::vector<ObjectId>> exact;
    for (const auto& g : v.find_groups(ids, n).groups) exact.push_back(g.members);
    std::sort(exact.begin(), exact.end());
    check(exact == want, "count " + std::to_string(n));

    const auto concepts = compose_grouping(n, default_concept(w, RefBehaviour::Group), w);
    check(concepts.empty() == want.empty(), "compose_grouping count " + std::to_string(n));
    for (const auto& c : concepts) {
      for (const auto& [id, _] : c.weights) {
        if (v.is_composite(id)) {
          check(static_cast<int>(v.members(id).size()) == n,
                "composite of the wrong size for count " + std::to_string(n));
        }
      }
    }
  }
}

// 8
void anaphora_session() {
  const Lexicon& lex = test::packaged_lexicon();
  SceneState state(load_scene_file(test::data_path("scenes/anaphora_behind.json")));
  const Resolution first = resolve("the front one", state, lex, 0);
  check(first.chosen == 0, "turn 1 picked the wrong cone");
  state = state.remove_object(*first.chosen);

  const DetailedResolution d =
      resolve_detailed("the one behind that one", state, lex, lex.grammar(), 1);
  check(d.resolution.chosen == 1, "turn 2 picked the wrong cone");
  check(!d.resolution.candidates.empty(), "no candidates");

  check(state.previous() && state.last_removed() == 0, "history");
  VisionContext prev(state.previous()->raster);
  check(prev.contains(0) && !VisionContext(state.raster()).contains(0),
        "previous raster does not hold the removed cone");
  std::map<ObjectId, double> expected;
  for (const auto& o : state.scene().objects) {
    double score = 0;
    try {
      score = prev.spatial_score(o.id, 0, "behind");
    } catch (const Error&) {
    }
    if (score > 0) expected[o.id] = score;
  }
  const auto& weights = d.resolution.candidates[0].weights;
  check(weights.size() == expected.size(), "weights cover the wrong objects");
  for (const auto& [id, wgt] : expected) {
    check(weights.count(id) && std::fabs(weights.at(id) - wgt) <= 1e-9 * wgt,
          "weight of " + std::to_string(id) + " is not its score behind the removed cone");
  }
}

// 9
void unknown_words() {
  const Lexicon& lex = test::packaged_lexicon();
  const auto records = load_corpus(test::data_path("corpus/regression.jsonl"));
  std::mt19937_64 rng(9);
  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (tokenize(records[k].utterance).size() >= 2) eligible.push_back(k);
  }
  std::shuffle(eligible.begin(), eligible.end(), rng);
  eligible.resize(std::min<std::size_t>(20, eligible.size()));
  check(eligible.size() == 20, "fewer than 20 eligible utterances");
  const std::set<std::size_t> chosen(eligible.begin(), eligible.end());
  const std::vector<std::string> nonsense{"blick", "florp", "wug", "zorble", "quux"};

  std::optional<SceneState> state;
  std::string session;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    if (r.session != session) {
      state.emplace(*r.scene);
      session = r.session;
    }
    if (chosen.count(k)) {
      auto tokens = tokenize(r.utterance);
      std::uniform_int_distribution<std::size_t> at(1, tokens.size() - 1);
      const std::string word = nonsense[rng() % nonsense.size()];
      check(lex.lookup(word).empty(), word + " is in the lexicon");
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at(rng)), word);
      std::string noisy;
      for (const auto& t : tokens) noisy += (noisy.empty() ? "" : " ") + t;
      const auto plain = resolve(r.utterance, *state, lex, k);
      const auto with_noise = resolve(noisy, *state, lex, k);
      check(plain.chosen == with_noise.chosen, "\"" + noisy + "\" changed the referent");
    }
    state = state->remove_object(r.target);
  }
}

// 10
void determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "bishop_acceptance";
  std::filesystem::create_directories(dir);
  const CommandResult a = run_cli("gen --seed 7");
  const CommandResult b = run_cli("gen --seed 7");
  check(a.exit_code == 0 && !a.out.empty(), "gen failed");
  check(a.out == b.out, "gen --seed 7 differs between runs");

  const auto scene = test::data_path("scenes/purple_on_left.json");
  for (const char* u : {"the purple one on the left", "the one", "the green ones"}) {
    const std::string args = "resolve --seed 3 --chart --scene " + q(scene) + " --utterance \"" + u + "\"";
    const CommandResult x = run_cli(args);
    const CommandResult y = run_cli(args);
    check(x.exit_code == 0, std::string("resolve failed for ") + u);
    check(x.out == y.out, std::string("resolve output differs for ") + u);
  }
  const SceneState s(generate_scene(7, kMaxObjects));
  const auto p = resolution_to_json(resolve("the one", s, test::packaged_lexicon(), 11)).dump();
  const auto p2 = resolution_to_json(resolve("the one", s, test::packaged_lexicon(), 11)).dump();
  check(p == p2, "in-process payloads differ");
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"golden example", golden},
      {"random baseline", baseline},
      {"regression corpus", regression_corpus},
      {"ordering oracle", ordering_oracle},
      {"colour separation", colour_separation},
      {"AVS limits", avs_limits},
      {"grouping fixture", grouping_fixture},
      {"anaphora session", anaphora_session},
      {"unknown words", unknown_words},
      {"determinism", determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto t0 = Clock::now();
    std::string error;
    try {
      fn();
    } catch (const Failure& f) {
      error = f.what;
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %2d %-20s %9.1f ms", error.empty() ? "PASS" : "FAIL", n,
                  name.c_str(), ms);
    std::cout << line << (error.empty() ? "" : "  " + error) << '\n';
    failed += !error.empty();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
