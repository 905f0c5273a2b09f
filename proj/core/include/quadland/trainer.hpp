#ifndef QUADLAND_TRAINER_HPP_
#define QUADLAND_TRAINER_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadland/curriculum.hpp"
#include "quadland/environment.hpp"
#include "quadland/policy.hpp"
#include "quadland/ppo.hpp"
#include "quadland/task.hpp"

namespace quadland {

// One row of metrics.csv, written after every update.
struct TrainingMetrics {
  std::int64_t iteration = 0;
  std::int64_t timesteps = 0;
  double mean_return = 0.0;   // over the last `success_window` episodes
  double mean_length = 0.0;
  double success_rate = 0.0;
};

struct TrainerOptions {
  Task task = Task::kLanding2d;
  PpoConfig ppo;
  GammaSchedule gamma;
  // Landing curriculum; absent for tasks without one.
  std::optional<CurriculumSchedule> curriculum;

  std::optional<std::filesystem::path> output_dir;
  int checkpoint_every = 50;  // iterations; 0 writes only the final one

  // Stop once the windowed success rate reaches this value, at least
  // stop_min_timesteps have elapsed and the curriculum is complete.
  // Disabled when <= 0.
  double stop_success_rate = 0.0;
  std::int64_t stop_min_timesteps = 0;
  int success_window = 100;

  std::ostream* progress = nullptr;
  int progress_every = 10;
};

struct TrainResult {
  MlpParams params;
  std::vector<TrainingMetrics> metrics;
  std::optional<CurriculumState> curriculum;
  std::int64_t timesteps = 0;
  std::int64_t iterations = 0;
  std::int64_t episodes = 0;
  std::int64_t aborted_episodes = 0;
  bool stopped_early = false;
};

inline constexpr const char* kMetricsHeader =
    "iteration,timesteps,mean_return,mean_length,success_rate";

std::string format_metrics_row(const TrainingMetrics& row);

// Alternates rollout collection, GAE and PPO updates until the timestep
// budget is spent. Deterministic for a given seed: environments are stepped
// in index order and every random stream is derived from ppo.seed.
// Throws TrainingError on divergence (after dumping the parameters when an
// output directory is set).
TrainResult train(const EnvironmentFactory& make_env,
                  const TrainerOptions& options);

}  // namespace quadland

#endif  // QUADLAND_TRAINER_HPP_
