#ifndef QUADLAND_CURRICULUM_HPP_
#define QUADLAND_CURRICULUM_HPP_

#include <array>
#include <cstdint>
#include <numbers>

namespace quadland {

// Constants of the landing curriculum. Lengths in meters, angles in radians.
struct CurriculumSchedule {
  double tolerance_start = 0.25;
  double tolerance_end = 0.10;
  double tolerance_rate = 0.15 / 5000.0;  // per episode

  double init_halfwidth_x = 0.1;
  double init_halfwidth_z = 0.1;
  double init_growth_x = 1.0 / 6000.0;  // per episode
  double init_growth_z = 1.0 / 8000.0;
  double max_halfwidth_x = 3.4;
  double max_halfwidth_z = 1.2;

  double final_tilt = -std::numbers::pi / 7.0;
  double tilt_episodes = 6000.0;  // episodes to reach final_tilt
  std::int64_t tilt_start_timesteps = 400'000;
  std::int64_t platform_timesteps = 800'000;

  void validate() const;
};

struct GammaSchedule {
  double start = 0.97;
  double end = 0.99;
  std::int64_t ramp_start = 300;      // last iteration at `start`
  std::int64_t ramp_iterations = 200;

  void validate() const;
};

// Snapshot handed to the landing environment at every reset.
struct CurriculumState {
  std::int64_t episode_index = 0;
  std::int64_t timestep_total = 0;
  std::int64_t tilt_episode_count = 0;
  double tolerance = 0.25;     // scalar d
  double goal_tilt = 0.0;      // rad
  double init_halfwidth_x = 0.1;
  double init_halfwidth_z = 0.1;
  bool platform_active = false;
  double gamma = 0.97;
};

using GoalTolerance = std::array<double, 5>;

CurriculumState initial_curriculum(const CurriculumSchedule& schedule,
                                   const GammaSchedule& gamma = {});

// Registers one finished episode of `steps_in_episode` transitions.
CurriculumState advance_episode(const CurriculumState& state,
                                std::int64_t steps_in_episode,
                                const CurriculumSchedule& schedule);

// Final-stage state: tolerance floor, full tilt, platform present.
CurriculumState completed_curriculum(const CurriculumSchedule& schedule);

bool curriculum_complete(const CurriculumState& state,
                         const CurriculumSchedule& schedule);

double gamma_schedule(std::int64_t training_iteration,
                      const GammaSchedule& schedule = {});

// Half-widths (x, z, vx, vz, pitch) of the goal box for scalar d.
GoalTolerance goal_tolerance(double d);

}  // namespace quadland

#endif  // QUADLAND_CURRICULUM_HPP_
