#ifndef QUADLAND_SETPOINT_ENV_HPP_
#define QUADLAND_SETPOINT_ENV_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <span>

#include "quadland/dynamics.hpp"
#include "quadland/environment.hpp"
#include "quadland/geometry.hpp"

namespace quadland {

struct SetpointObservation {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double roll = 0.0;
  double pitch = 0.0;

  static SetpointObservation from_state(const QuadState& s);
};

// Distance-shaped tracking reward; `raw_action` is (pwm, roll, pitch) in
// [-1, 1].
double shaped_reward(const SetpointObservation& s,
                     const SetpointObservation& goal,
                     std::span<const double> raw_action);

struct SetpointConfig {
  ModelParams model = ModelParams::crazyflie();
  ArenaBounds arena;
  ActionScaling scaling;
  double dt = 0.02;
  int episode_steps = 300;
  Vec3 goal_position{0.0, 0.0, 1.2};
  double reset_margin = 0.2;
  // Success means staying within hold_radius for the final hold_steps.
  double hold_radius = 0.15;
  int hold_steps = 100;

  void validate() const;
};

class SetpointEnv final : public Environment {
 public:
  static constexpr int kObservationSize = 8;
  static constexpr int kActionSize = 3;

  SetpointEnv(SetpointConfig config, std::uint64_t seed);

  int observation_size() const override { return kObservationSize; }
  int action_size() const override { return kActionSize; }

  std::span<const double> reset() override;
  std::span<const double> reset_to(const Vec3& position);
  StepResult step(std::span<const double> action) override;
  std::span<const double> observation() const override { return obs_; }

  int step_count() const override { return steps_; }
  const QuadState& state() const override { return state_; }
  const ControlInput& last_command() const override { return command_; }

  SetpointObservation goal() const;
  const SetpointConfig& config() const { return config_; }
  // Consecutive most recent steps spent within hold_radius.
  int steps_in_radius() const { return in_radius_; }

 private:
  void start_from(const Vec3& position);
  void refresh_observation();

  SetpointConfig config_;
  std::mt19937_64 rng_;
  QuadState state_;
  ControlInput command_;
  std::array<double, kObservationSize> obs_{};
  int steps_ = 0;
  int in_radius_ = 0;
};

}  // namespace quadland

#endif  // QUADLAND_SETPOINT_ENV_HPP_
