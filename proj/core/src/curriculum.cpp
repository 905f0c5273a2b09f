#include "quadland/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quadland {

void CurriculumSchedule::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(tolerance_end > 0.0 && tolerance_start >= tolerance_end,
          "curriculum tolerance must satisfy 0 < end <= start");
  require(tolerance_rate >= 0.0, "tolerance_rate must be non-negative");
  require(init_halfwidth_x >= 0.0 && init_halfwidth_z >= 0.0,
          "initial half-widths must be non-negative");
  require(init_growth_x >= 0.0 && init_growth_z >= 0.0,
          "init box growth must be non-negative");
  require(max_halfwidth_x >= init_halfwidth_x &&
              max_halfwidth_z >= init_halfwidth_z,
          "max half-widths must not be below the initial ones");
  require(final_tilt <= 0.0 && final_tilt > -std::numbers::pi / 2.0,
          "final_tilt must lie in (-90, 0] degrees");
  require(tilt_episodes > 0.0, "tilt_episodes must be positive");
  require(tilt_start_timesteps >= 0 && platform_timesteps >= 0,
          "curriculum timestep gates must be non-negative");
}

void GammaSchedule::validate() const {
  auto in_range = [](double g) { return g > 0.0 && g <= 1.0; };
  if (!in_range(start) || !in_range(end) || end < start) {
    throw std::invalid_argument("gamma schedule must satisfy 0 < start <= end <= 1");
  }
  if (ramp_start < 0 || ramp_iterations < 0) {
    throw std::invalid_argument("gamma ramp iterations must be non-negative");
  }
}

namespace {

// Derived fields are closed-form in the counters so that repeated calls
// never accumulate rounding drift.
void refresh(CurriculumState& s, const CurriculumSchedule& c) {
  const auto episodes = static_cast<double>(s.episode_index);
  s.tolerance = std::max(c.tolerance_start - episodes * c.tolerance_rate,
                         c.tolerance_end);
  s.init_halfwidth_x = std::min(c.init_halfwidth_x + episodes * c.init_growth_x,
                                c.max_halfwidth_x);
  s.init_halfwidth_z = std::min(c.init_halfwidth_z + episodes * c.init_growth_z,
                                c.max_halfwidth_z);
  const double tilt_fraction =
      static_cast<double>(s.tilt_episode_count) / c.tilt_episodes;
  s.goal_tilt = tilt_fraction >= 1.0 ? c.final_tilt : c.final_tilt * tilt_fraction;
}

}  // namespace

CurriculumState initial_curriculum(const CurriculumSchedule& schedule,
                                   const GammaSchedule& gamma) {
  CurriculumState s;
  s.gamma = gamma.start;
  refresh(s, schedule);
  return s;
}

CurriculumState advance_episode(const CurriculumState& state,
                                std::int64_t steps_in_episode,
                                const CurriculumSchedule& schedule) {
  CurriculumState next = state;
  next.episode_index += 1;
  next.timestep_total += steps_in_episode;
  if (next.timestep_total > schedule.tilt_start_timesteps) {
    next.tilt_episode_count += 1;
  }
  if (next.timestep_total > schedule.platform_timesteps) {
    next.platform_active = true;
  }
  refresh(next, schedule);
  return next;
}

CurriculumState completed_curriculum(const CurriculumSchedule& schedule) {
  CurriculumState s;
  s.tolerance = schedule.tolerance_end;
  s.goal_tilt = schedule.final_tilt;
  s.init_halfwidth_x = schedule.max_halfwidth_x;
  s.init_halfwidth_z = schedule.max_halfwidth_z;
  s.platform_active = true;
  s.tilt_episode_count = static_cast<std::int64_t>(std::ceil(schedule.tilt_episodes));
  return s;
}

bool curriculum_complete(const CurriculumState& state,
                         const CurriculumSchedule& schedule) {
  return state.platform_active && state.goal_tilt == schedule.final_tilt &&
         state.tolerance == schedule.tolerance_end;
}

double gamma_schedule(std::int64_t training_iteration,
                      const GammaSchedule& schedule) {
  if (training_iteration <= schedule.ramp_start) return schedule.start;
  const std::int64_t into_ramp = training_iteration - schedule.ramp_start;
  if (into_ramp >= schedule.ramp_iterations) return schedule.end;
  const double fraction = static_cast<double>(into_ramp) /
                          static_cast<double>(schedule.ramp_iterations);
  return schedule.start + (schedule.end - schedule.start) * fraction;
}

GoalTolerance goal_tolerance(double d) {
  const double velocity = std::min(10.0 * d, 1.5);
  return {d, d, velocity, velocity, 0.25 * d};
}

}  // namespace quadland
