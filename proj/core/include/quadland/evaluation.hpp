#ifndef QUADLAND_EVALUATION_HPP_
#define QUADLAND_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "quadland/curriculum.hpp"
#include "quadland/environment.hpp"
#include "quadland/landing_env.hpp"
#include "quadland/policy.hpp"
#include "quadland/setpoint_env.hpp"
#include "quadland/trajectory.hpp"

namespace quadland {

struct EpisodeOutcome {
  bool success = false;
  int steps = 0;
  double episode_return = 0.0;
  std::vector<TrajectoryRow> trajectory;  // includes the initial state
};

// Runs the clipped mean action from the environment's current state until
// the episode ends.
EpisodeOutcome run_deterministic_episode(Environment& env,
                                         const MlpParams& params, double dt);

inline const std::vector<Point2> kTableStartPositions = {
    {0.0, 2.0}, {-1.5, 1.6}, {1.5, 1.8}};
inline constexpr GoalTolerance kEvalGoalTolerance = {0.10, 0.10, 1.5, 1.5,
                                                     0.025};

struct LandingEvalSpec {
  std::vector<Point2> positions = kTableStartPositions;
  int trials = 10;
  GoalTolerance tolerance = kEvalGoalTolerance;
  // Trials start uniformly within +-start_jitter (m) of the listed position.
  double start_jitter = 0.05;
  std::uint64_t seed = 0;
};

struct PositionOutcome {
  Point2 start{0.0, 0.0};
  int trials = 0;
  int successes = 0;
  double rate() const {
    return trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  }
};

struct LandingEvalResult {
  std::vector<PositionOutcome> positions;
  // Mean of the per-position rates.
  double total_rate() const;
};

// Called once per trial with the recorded trajectory.
using TrialSink = std::function<void(int position_index, int trial,
                                     const EpisodeOutcome& outcome)>;

// Each trial ends on the first entry into the goal box (success) or at
// the time limit. The environment uses the completed curriculum (final
// tilt, platform present) and the fixed evaluation tolerance.
LandingEvalResult evaluate_landing(const MlpParams& params,
                                   const LandingConfig& config,
                                   const CurriculumSchedule& schedule,
                                   const LandingEvalSpec& spec,
                                   const TrialSink& sink = {});

// Plain-text table: header row of start positions, one rate row, total.
std::string format_success_table(const LandingEvalResult& result,
                                 const std::string& setting = "Simulation");

struct SetpointEvalSpec {
  int trials = 20;
  std::uint64_t seed = 0;
};

struct SetpointEvalResult {
  int trials = 0;
  int successes = 0;
  std::vector<double> final_distances;
  double rate() const {
    return trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  }
};

// Random starts inside the reset region; success means holding within
// hold_radius of the goal for the last hold_steps of the episode.
SetpointEvalResult evaluate_setpoint(const MlpParams& params,
                                     const SetpointConfig& config,
                                     const SetpointEvalSpec& spec,
                                     const TrialSink& sink = {});

}  // namespace quadland

#endif  // QUADLAND_EVALUATION_HPP_
