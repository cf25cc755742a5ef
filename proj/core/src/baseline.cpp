#include <cmath>
#include <random>

#include "bishop/error.hpp"
#include "bishop/harness.hpp"

namespace bishop {

double harmonic_baseline(int trials) {
  double h = 0.0;
  for (int i = 1; i <= trials; ++i) h += 1.0 / i;
  return h / trials;
}

BaselineReport run_baseline(int sessions, int trials, std::uint64_t seed,
                            std::optional<int> objects) {
  const int n_objects = objects.value_or(trials);
  if (sessions < 1 || trials < 1) {
    throw Error(Errc::kInvalidArgument, "sessions and trials must be at least 1");
  }
  if (n_objects < trials) {
    throw Error(Errc::kInvalidArgument, "a session cannot have more trials than objects");
  }
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < sessions; ++s) {
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      std::uniform_int_distribution<int> pick(0, n_objects - t - 1);
      const int target = pick(rng);
      const int guess = pick(rng);
      if (guess == target) ++hits;
    }
    const double rate = static_cast<double>(hits) / trials;
    sum += rate;
    sum_sq += rate * rate;
  }
  BaselineReport r;
  r.sessions = sessions;
  r.trials = trials;
  r.objects = n_objects;
  r.seed = seed;
  r.mean = sum / sessions;
  const double var =
      sessions > 1 ? (sum_sq - sessions * r.mean * r.mean) / (sessions - 1) : 0.0;
  r.std_error = std::sqrt(std::max(var, 0.0) / sessions);
  return r;
}

nlohmann::json BaselineReport::to_json() const {
  return {{"sessions", sessions}, {"trials", trials},     {"objects", objects},
          {"seed", seed},         {"mean", mean},         {"std_error", std_error},
          {"expected", objects == trials ? nlohmann::json(harmonic_baseline(trials))
                                         : nlohmann::json()}};
}

}  // namespace bishop
