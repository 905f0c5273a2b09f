#include "quadland/evaluation.hpp"

#include <fmt/core.h>

#include <random>

#include "quadland/seeding.hpp"

namespace quadland {

EpisodeOutcome run_deterministic_episode(Environment& env,
                                         const MlpParams& params, double dt) {
  EpisodeOutcome outcome;
  outcome.trajectory.push_back(TrajectoryRow::capture(env, 0, dt, 0.0, false));
  while (true) {
    const Eigen::VectorXd action = deterministic_action(params, env.observation());
    const StepResult step =
        env.step(std::span<const double>(action.data(), action.size()));
    outcome.episode_return += step.reward;
    outcome.steps = env.step_count();
    outcome.trajectory.push_back(
        TrajectoryRow::capture(env, outcome.steps, dt, step.reward, step.done()));
    if (step.done()) {
      outcome.success = step.success;
      return outcome;
    }
  }
}

double LandingEvalResult::total_rate() const {
  if (positions.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : positions) sum += p.rate();
  return sum / static_cast<double>(positions.size());
}

LandingEvalResult evaluate_landing(const MlpParams& params,
                                   const LandingConfig& config,
                                   const CurriculumSchedule& schedule,
                                   const LandingEvalSpec& spec,
                                   const TrialSink& sink) {
  LandingConfig eval_config = config;
  eval_config.tolerance_override = spec.tolerance;
  LandingEnv env(eval_config, derive_seed(spec.seed, streams::kEvaluation));
  env.set_curriculum(completed_curriculum(schedule));

  std::mt19937_64 rng(derive_seed(spec.seed, streams::kEvaluation + 1));
  std::uniform_real_distribution<double> jitter(-spec.start_jitter,
                                                spec.start_jitter);
  LandingEvalResult result;
  for (std::size_t p = 0; p < spec.positions.size(); ++p) {
    PositionOutcome outcome;
    outcome.start = spec.positions[p];
    for (int trial = 0; trial < spec.trials; ++trial) {
      Point2 start = spec.positions[p];
      if (spec.start_jitter > 0.0) {
        const double dx = jitter(rng);
        const double dz = jitter(rng);
        start += Point2(dx, dz);
      }
      env.reset_to(start);
      const EpisodeOutcome episode =
          run_deterministic_episode(env, params, eval_config.dt);
      outcome.trials += 1;
      outcome.successes += episode.success ? 1 : 0;
      if (sink) sink(static_cast<int>(p), trial, episode);
    }
    result.positions.push_back(outcome);
  }
  return result;
}

std::string format_success_table(const LandingEvalResult& result,
                                 const std::string& setting) {
  std::string header = fmt::format("{:<12}", "setting");
  std::string row = fmt::format("{:<12}", setting);
  for (const auto& p : result.positions) {
    const std::string label = fmt::format("({}, {})", p.start.x(), p.start.y());
    header += fmt::format(" | {:>12}", label);
    row += fmt::format(" | {:>11.1f}%", 100.0 * p.rate());
  }
  header += fmt::format(" | {:>7}", "total");
  row += fmt::format(" | {:>6.1f}%", 100.0 * result.total_rate());
  return header + "\n" + row + "\n";
}

SetpointEvalResult evaluate_setpoint(const MlpParams& params,
                                     const SetpointConfig& config,
                                     const SetpointEvalSpec& spec,
                                     const TrialSink& sink) {
  SetpointEnv env(config, derive_seed(spec.seed, streams::kEvaluation));
  SetpointEvalResult result;
  for (int trial = 0; trial < spec.trials; ++trial) {
    env.reset();
    const EpisodeOutcome episode = run_deterministic_episode(env, params, config.dt);
    result.trials += 1;
    result.successes += episode.success ? 1 : 0;
    result.final_distances.push_back(
        (env.state().position - config.goal_position).norm());
    if (sink) sink(0, trial, episode);
  }
  return result;
}

}  // namespace quadland
