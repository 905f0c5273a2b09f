#include "quadland/setpoint_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quadland {

SetpointObservation SetpointObservation::from_state(const QuadState& s) {
  return {s.position, s.velocity, s.attitude.x(), s.attitude.y()};
}

double shaped_reward(const SetpointObservation& s,
                     const SetpointObservation& goal,
                     std::span<const double> raw_action) {
  const double e_p = (s.position - goal.position).norm();
  const double e_v = (s.velocity - goal.velocity).norm();
  const double e_att = std::hypot(s.roll - goal.roll, s.pitch - goal.pitch);
  const double tilt_action =
      raw_action[1] * raw_action[1] + raw_action[2] * raw_action[2];
  return -e_p - 0.2 * e_v - 0.1 * e_att -
         0.1 * tilt_action / std::max(e_p, 0.001);
}

void SetpointConfig::validate() const {
  model.validate();
  arena.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (episode_steps <= 0) {
    throw std::invalid_argument("episode_steps must be positive");
  }
  if (!(reset_margin >= 0.0) ||
      2.0 * reset_margin >= std::min({arena.x_max - arena.x_min,
                                      arena.y_max - arena.y_min,
                                      arena.z_max - arena.z_min})) {
    throw std::invalid_argument("reset_margin leaves no room inside the arena");
  }
  if (!(hold_radius > 0.0) || hold_steps < 0 || hold_steps > episode_steps) {
    throw std::invalid_argument("hold criterion must fit inside an episode");
  }
}

SetpointEnv::SetpointEnv(SetpointConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
  config_.validate();
  start_from(config_.goal_position);
}

SetpointObservation SetpointEnv::goal() const {
  return {config_.goal_position, Vec3::Zero(), 0.0, 0.0};
}

std::span<const double> SetpointEnv::reset() {
  const ArenaBounds& a = config_.arena;
  const double m = config_.reset_margin;
  std::uniform_real_distribution<double> xs(a.x_min + m, a.x_max - m);
  std::uniform_real_distribution<double> ys(a.y_min + m, a.y_max - m);
  std::uniform_real_distribution<double> zs(a.z_min + m, a.z_max - m);
  const double x = xs(rng_);
  const double y = ys(rng_);
  const double z = zs(rng_);
  start_from({x, y, z});
  return obs_;
}

std::span<const double> SetpointEnv::reset_to(const Vec3& position) {
  start_from(position);
  return obs_;
}

void SetpointEnv::start_from(const Vec3& position) {
  state_ = QuadState{};
  state_.position = position;
  state_.thrust_filter =
      steady_thrust_filter(config_.scaling.hover_pwm, config_.model);
  command_ = ControlInput{config_.scaling.hover_pwm, 0.0, 0.0, 0.0};
  steps_ = 0;
  in_radius_ = 0;
  refresh_observation();
}

void SetpointEnv::refresh_observation() {
  const Vec3 rel = state_.position - config_.goal_position;
  obs_ = {rel.x(),
          rel.y(),
          rel.z(),
          state_.velocity.x(),
          state_.velocity.y(),
          state_.velocity.z(),
          state_.attitude.x(),
          state_.attitude.y()};
}

StepResult SetpointEnv::step(std::span<const double> action) {
  std::array<double, kActionSize> raw{};
  for (int i = 0; i < kActionSize; ++i) raw[i] = std::clamp(action[i], -1.0, 1.0);
  command_ = denormalize_action(raw, ActionMode::kSpatial, config_.scaling);

  StepResult result;
  ++steps_;
  try {
    state_ = rk4_step(state_, command_, config_.model, config_.dt);
  } catch (const IntegrationError&) {
    result.failed = true;
    result.terminated = true;
    return result;
  }

  const ArenaBounds& a = config_.arena;
  const double lo[3] = {a.x_min, a.y_min, a.z_min};
  const double hi[3] = {a.x_max, a.y_max, a.z_max};
  for (int i = 0; i < 3; ++i) {
    if (state_.position[i] < lo[i]) {
      state_.position[i] = lo[i];
      state_.velocity[i] = 0.0;
    } else if (state_.position[i] > hi[i]) {
      state_.position[i] = hi[i];
      state_.velocity[i] = 0.0;
    }
  }
  refresh_observation();

  result.reward =
      shaped_reward(SetpointObservation::from_state(state_), goal(), raw);
  const double distance = (state_.position - config_.goal_position).norm();
  in_radius_ = distance < config_.hold_radius ? in_radius_ + 1 : 0;
  if (steps_ >= config_.episode_steps) {
    result.truncated = true;
    result.success = in_radius_ >= config_.hold_steps;
  }
  return result;
}

}  // namespace quadland
