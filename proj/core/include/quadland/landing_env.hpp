#ifndef QUADLAND_LANDING_ENV_HPP_
#define QUADLAND_LANDING_ENV_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>

#include "quadland/curriculum.hpp"
#include "quadland/dynamics.hpp"
#include "quadland/environment.hpp"
#include "quadland/geometry.hpp"

namespace quadland {

// Vehicle state restricted to the xz-plane.
struct LandingObservation {
  double x = 0.0;
  double z = 0.0;
  double vx = 0.0;
  double vz = 0.0;
  double pitch = 0.0;

  std::array<double, 5> as_array() const { return {x, z, vx, vz, pitch}; }
  static LandingObservation from_state(const QuadState& s);
};

struct GoalBox {
  std::array<double, 5> center{};
  GoalTolerance tolerance{};
};

struct Platform {
  Polygon polygon;
  bool active = false;
};

// Inclined slab whose top edge of `length` passes through `goal` and is
// perpendicular to the body z-axis at `goal_pitch`; vertical sides reach
// down by `depth` below the goal.
Platform make_platform(const Point2& goal, double goal_pitch, double length,
                       double depth, bool active);

bool in_goal_box(const LandingObservation& s, const GoalBox& goal);

// Throws std::invalid_argument when the platform polygon is degenerate.
bool platform_collision(const LandingObservation& s, const Platform& platform);

bool near_boundary(const LandingObservation& s, const ArenaBounds& arena,
                   double margin);

struct SparseRewardValues {
  double goal = 0.0;
  double obstacle = -7.0;
  double boundary = -2.0;
  double free = -1.0;
};

// Goal takes precedence over obstacle, obstacle over boundary.
double sparse_reward(const LandingObservation& s, const GoalBox& goal,
                     const Platform& platform, const ArenaBounds& arena,
                     double boundary_margin,
                     const SparseRewardValues& values = {});

struct LandingConfig {
  ModelParams model = ModelParams::crazyflie();
  ArenaBounds arena;
  ActionScaling scaling;
  double dt = 0.02;
  int episode_steps = 300;
  Point2 goal_position{0.0, 1.25};
  double boundary_margin = 0.05;
  SparseRewardValues rewards;
  double platform_length = 0.6;
  double platform_depth = 0.5;
  // Fixed goal half-widths; replaces goal_tolerance(d) when set.
  std::optional<GoalTolerance> tolerance_override;

  void validate() const;
};

class LandingEnv final : public Environment {
 public:
  static constexpr int kObservationSize = 5;
  static constexpr int kActionSize = 2;

  LandingEnv(LandingConfig config, std::uint64_t seed);

  int observation_size() const override { return kObservationSize; }
  int action_size() const override { return kActionSize; }

  std::span<const double> reset() override;
  // Starts an episode from rest at an explicit xz position.
  std::span<const double> reset_to(const Point2& position);
  StepResult step(std::span<const double> action) override;
  std::span<const double> observation() const override { return obs_; }

  void set_curriculum(const CurriculumState& curriculum) override;

  int step_count() const override { return steps_; }
  const QuadState& state() const override { return state_; }
  const ControlInput& last_command() const override { return command_; }

  LandingObservation landing_observation() const {
    return LandingObservation::from_state(state_);
  }
  const GoalBox& goal() const { return goal_; }
  const Platform& platform() const { return platform_; }
  const LandingConfig& config() const { return config_; }
  const CurriculumState& curriculum() const { return curriculum_; }

 private:
  void apply_curriculum();
  void start_from(const Point2& position);
  void refresh_observation();

  LandingConfig config_;
  std::mt19937_64 rng_;
  CurriculumState curriculum_;
  GoalBox goal_;
  Platform platform_;
  QuadState state_;
  ControlInput command_;
  std::array<double, kObservationSize> obs_{};
  int steps_ = 0;
};

}  // namespace quadland

#endif  // QUADLAND_LANDING_ENV_HPP_
