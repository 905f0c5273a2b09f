#include "quadland/landing_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quadland {

LandingObservation LandingObservation::from_state(const QuadState& s) {
  return {s.position.x(), s.position.z(), s.velocity.x(), s.velocity.z(),
          s.attitude.y()};
}

Platform make_platform(const Point2& goal, double goal_pitch, double length,
                       double depth, bool active) {
  const Point2 along(std::cos(goal_pitch), -std::sin(goal_pitch));
  const Point2 left = goal - 0.5 * length * along;
  const Point2 right = goal + 0.5 * length * along;
  const double bottom = goal.y() - depth;
  return {Polygon({{left.x(), bottom}, {right.x(), bottom}, right, left}),
          active};
}

bool in_goal_box(const LandingObservation& s, const GoalBox& goal) {
  const auto v = s.as_array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(std::abs(v[i] - goal.center[i]) < goal.tolerance[i])) return false;
  }
  return true;
}

bool platform_collision(const LandingObservation& s, const Platform& platform) {
  if (platform.polygon.vertices().size() < 3) {
    throw std::invalid_argument("platform polygon needs at least three vertices");
  }
  return platform.polygon.contains({s.x, s.z});
}

bool near_boundary(const LandingObservation& s, const ArenaBounds& arena,
                   double margin) {
  return s.x - arena.x_min < margin || arena.x_max - s.x < margin ||
         s.z - arena.z_min < margin || arena.z_max - s.z < margin;
}

double sparse_reward(const LandingObservation& s, const GoalBox& goal,
                     const Platform& platform, const ArenaBounds& arena,
                     double boundary_margin, const SparseRewardValues& values) {
  if (in_goal_box(s, goal)) return values.goal;
  if (platform.active && platform_collision(s, platform)) return values.obstacle;
  if (near_boundary(s, arena, boundary_margin)) return values.boundary;
  return values.free;
}

void LandingConfig::validate() const {
  model.validate();
  arena.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (episode_steps <= 0) {
    throw std::invalid_argument("episode_steps must be positive");
  }
  if (goal_position.x() < arena.x_min || goal_position.x() > arena.x_max ||
      goal_position.y() < arena.z_min || goal_position.y() > arena.z_max) {
    throw std::invalid_argument("landing goal must lie inside the arena");
  }
  if (!(boundary_margin >= 0.0)) {
    throw std::invalid_argument("boundary_margin must be non-negative");
  }
  if (!(platform_length > 0.0) || !(platform_depth > 0.0)) {
    throw std::invalid_argument("platform dimensions must be positive");
  }
  if (tolerance_override) {
    for (double t : *tolerance_override) {
      if (!(t > 0.0)) throw std::invalid_argument("goal tolerance must be positive");
    }
  }
}

LandingEnv::LandingEnv(LandingConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
  config_.validate();
  apply_curriculum();
  start_from(config_.goal_position);
}

void LandingEnv::set_curriculum(const CurriculumState& curriculum) {
  curriculum_ = curriculum;
  apply_curriculum();
}

void LandingEnv::apply_curriculum() {
  goal_.center = {config_.goal_position.x(), config_.goal_position.y(), 0.0,
                  0.0, curriculum_.goal_tilt};
  goal_.tolerance = config_.tolerance_override
                        ? *config_.tolerance_override
                        : goal_tolerance(curriculum_.tolerance);
  platform_ = make_platform(config_.goal_position, curriculum_.goal_tilt,
                            config_.platform_length, config_.platform_depth,
                            curriculum_.platform_active);
}

std::span<const double> LandingEnv::reset() {
  const ArenaBounds& a = config_.arena;
  const double margin = config_.boundary_margin;
  const Point2& g = config_.goal_position;
  std::uniform_real_distribution<double> xs(
      std::max(g.x() - curriculum_.init_halfwidth_x, a.x_min + margin),
      std::min(g.x() + curriculum_.init_halfwidth_x, a.x_max - margin));
  std::uniform_real_distribution<double> zs(
      std::max(g.y() - curriculum_.init_halfwidth_z, a.z_min + margin),
      std::min(g.y() + curriculum_.init_halfwidth_z, a.z_max - margin));

  Point2 p(xs(rng_), zs(rng_));
  // Rejection sampling; the box always extends above the platform so this
  // terminates quickly in practice.
  for (int tries = 0; platform_.active && platform_.polygon.contains(p) &&
                      tries < 10000;
       ++tries) {
    p = {xs(rng_), zs(rng_)};
  }
  start_from(p);
  return obs_;
}

std::span<const double> LandingEnv::reset_to(const Point2& position) {
  start_from(position);
  return obs_;
}

void LandingEnv::start_from(const Point2& position) {
  state_ = QuadState{};
  state_.position = {position.x(), 0.0, position.y()};
  state_.thrust_filter =
      steady_thrust_filter(config_.scaling.hover_pwm, config_.model);
  command_ = ControlInput{config_.scaling.hover_pwm, 0.0, 0.0, 0.0};
  steps_ = 0;
  refresh_observation();
}

void LandingEnv::refresh_observation() {
  obs_ = {state_.position.x() - config_.goal_position.x(),
          state_.position.z() - config_.goal_position.y(), state_.velocity.x(),
          state_.velocity.z(), state_.attitude.y()};
}

namespace {

void clamp_axis(double& pos, double& vel, double lo, double hi) {
  if (pos < lo) {
    pos = lo;
    vel = 0.0;
  } else if (pos > hi) {
    pos = hi;
    vel = 0.0;
  }
}

}  // namespace

StepResult LandingEnv::step(std::span<const double> action) {
  std::array<double, kActionSize> raw{};
  for (int i = 0; i < kActionSize; ++i) raw[i] = std::clamp(action[i], -1.0, 1.0);
  command_ = denormalize_action(raw, ActionMode::kPlanar, config_.scaling);

  StepResult result;
  ++steps_;
  try {
    state_ = rk4_step(state_, command_, config_.model, config_.dt);
  } catch (const IntegrationError&) {
    result.failed = true;
    result.terminated = true;
    result.reward = config_.rewards.free;
    return result;
  }

  const ArenaBounds& a = config_.arena;
  clamp_axis(state_.position.x(), state_.velocity.x(), a.x_min, a.x_max);
  clamp_axis(state_.position.z(), state_.velocity.z(), a.z_min, a.z_max);
  refresh_observation();

  const LandingObservation s = landing_observation();
  result.reward = sparse_reward(s, goal_, platform_, a, config_.boundary_margin,
                                config_.rewards);
  if (in_goal_box(s, goal_)) {
    result.terminated = true;
    result.success = true;
  } else if (steps_ >= config_.episode_steps) {
    result.truncated = true;
  }
  return result;
}

}  // namespace quadland
