// bishop: scene generation, single-utterance resolution, corpus evaluation
// and the random-listener baseline.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "bishop/error.hpp"
#include "bishop/harness.hpp"
#include "bishop/lexicon.hpp"
#include "bishop/resolution.hpp"
#include "bishop/scene.hpp"
#include "bishop/vision.hpp"
#include "png_writer.hpp"

namespace {

std::string default_lexicon() {
  if (const char* env = std::getenv("BISHOP_LEXICON")) return env;
  return BISHOP_DEFAULT_LEXICON;
}

void print_features(const bishop::Raster& raster) {
  const bishop::VisionContext vision(raster);
  std::cout << "id,r,g,b,cx,cy\n";
  for (bishop::ObjectId id : vision.base_ids()) {
    const auto rgb = vision.average_rgb(id);
    const auto c = vision.centroid(id);
    char line[160];
    std::snprintf(line, sizeof line, "%d,%.3f,%.3f,%.3f,%.3f,%.3f\n", id, rgb[0], rgb[1], rgb[2],
                  c.x, c.y);
    std::cout << line;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Referring-expression resolution over synthetic cone scenes"};
  app.require_subcommand(1);
  std::string lexicon_path = default_lexicon();
  app.add_option("--lexicon", lexicon_path, "Lexicon file")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Generate a scene file");
  std::uint64_t gen_seed = 0;
  int gen_objects = bishop::kMaxObjects;
  std::string gen_out;
  std::string gen_png;
  gen->add_option("--seed", gen_seed, "Scene seed")->required();
  gen->add_option("--objects", gen_objects, "Number of cones")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default: stdout)");
  gen->add_option("--png", gen_png, "Also write the rendered raster");

  auto* res = app.add_subcommand("resolve", "Resolve one utterance against a scene");
  std::string res_scene;
  std::string res_utterance;
  std::string res_png;
  std::uint64_t res_seed = 0;
  bool res_chart = false;
  bool res_features = false;
  res->add_option("--scene", res_scene, "Scene file")->required();
  res->add_option("--utterance", res_utterance, "Referring expression")->required();
  res->add_option("--seed", res_seed, "Tie-break seed")->capture_default_str();
  res->add_option("--png", res_png, "Write the raster with the chosen object outlined");
  res->add_flag("--chart", res_chart, "Include the chart dump");
  res->add_flag("--features", res_features, "Print per-object features as CSV instead");

  auto* eval = app.add_subcommand("eval", "Evaluate a corpus");
  std::string eval_corpus;
  double eval_floor = 1.0;
  std::uint64_t eval_seed = 0;
  bool eval_json = false;
  eval->add_option("--corpus", eval_corpus, "Corpus file (JSONL)")->required();
  eval->add_option("--floor", eval_floor, "Minimum accuracy for exit code 0")->capture_default_str();
  eval->add_option("--seed", eval_seed, "Base tie-break seed")->capture_default_str();
  eval->add_flag("--json", eval_json, "Print the report as JSON");

  auto* base = app.add_subcommand("baseline", "Random-listener baseline");
  int base_sessions = 10000;
  int base_trials = 30;
  std::uint64_t base_seed = 0;
  std::optional<int> base_objects;
  bool base_json = false;
  base->add_option("--sessions", base_sessions, "Sessions")->capture_default_str();
  base->add_option("--trials", base_trials, "Trials per session")->capture_default_str();
  base->add_option("--seed", base_seed, "Seed")->capture_default_str();
  base->add_option("--objects", base_objects, "Objects at session start (default: trials)");
  base->add_flag("--json", base_json, "Print JSON");

  auto* fit = app.add_subcommand("fit-colours", "Fit colour models and write a lexicon");
  std::string fit_out;
  std::uint64_t fit_seed = 1000;
  int fit_cones = 100;
  fit->add_option("--out", fit_out, "Lexicon file to write")->required();
  fit->add_option("--seed", fit_seed, "First scene seed")->capture_default_str();
  fit->add_option("--cones", fit_cones, "Labelled cones per class")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const bishop::SceneState state = bishop::generate_scene(gen_seed, gen_objects);
      if (gen_out.empty()) {
        std::cout << bishop::serialize_scene(state.scene());
      } else {
        bishop::save_scene_file(state.scene(), gen_out);
      }
      if (!gen_png.empty()) bishop::tools::write_png(state.raster(), gen_png);
      return 0;
    }

    if (*res) {
      const bishop::SceneState state(bishop::load_scene_file(res_scene));
      if (res_features) {
        print_features(state.raster());
        return 0;
      }
      const bishop::Lexicon lexicon = bishop::load_lexicon_file(lexicon_path);
      const auto detailed = bishop::resolve_detailed(res_utterance, state, lexicon,
                                                     lexicon.grammar(), res_seed);
      nlohmann::json out = bishop::resolution_to_json(detailed.resolution);
      if (res_chart) {
        nlohmann::json lines = nlohmann::json::array();
        std::istringstream dump(detailed.chart.dump(lexicon.grammar()));
        for (std::string line; std::getline(dump, line);) lines.push_back(line);
        out["chart"] = std::move(lines);
      }
      std::cout << out.dump(2) << '\n';
      if (!res_png.empty()) {
        bishop::tools::write_png(state.raster(), res_png, detailed.resolution.chosen);
      }
      return 0;
    }

    if (*eval) {
      const bishop::Lexicon lexicon = bishop::load_lexicon_file(lexicon_path);
      const auto records = bishop::load_corpus(eval_corpus);
      const auto report = bishop::evaluate_corpus(records, lexicon, eval_seed);
      if (eval_json) {
        std::cout << report.to_json().dump(2) << '\n';
      } else {
        std::cout << report.to_text();
      }
      return report.all.accuracy() >= eval_floor ? 0 : 1;
    }

    if (*base) {
      const auto report =
          bishop::run_baseline(base_sessions, base_trials, base_seed, base_objects);
      if (base_json) {
        std::cout << report.to_json().dump(2) << '\n';
      } else {
        char line[256];
        std::snprintf(line, sizeof line,
                      "sessions=%d trials=%d objects=%d mean=%.5f std_error=%.5f", report.sessions,
                      report.trials, report.objects, report.mean, report.std_error);
        std::cout << line;
        if (report.objects == report.trials) {
          std::snprintf(line, sizeof line, " expected=%.5f", bishop::harmonic_baseline(report.trials));
          std::cout << line;
        }
        std::cout << '\n';
      }
      return 0;
    }

    if (*fit) {
      auto models = bishop::fit_starter_colour_models(fit_seed, fit_cones);
      const bishop::Lexicon lexicon(std::move(models), bishop::starter_entries());
      bishop::save_lexicon_file(lexicon, fit_out);
      return 0;
    }
  } catch (const bishop::Error& e) {
    std::cerr << "bishop: " << bishop::to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}
