#ifndef QUADLAND_CONFIG_HPP_
#define QUADLAND_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quadland/curriculum.hpp"
#include "quadland/dynamics.hpp"
#include "quadland/evaluation.hpp"
#include "quadland/geometry.hpp"
#include "quadland/landing_env.hpp"
#include "quadland/ppo.hpp"
#include "quadland/setpoint_env.hpp"
#include "quadland/task.hpp"
#include "quadland/trainer.hpp"

namespace quadland {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// One `key = value` entry of an INI-style document.
struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

// Parses `[section]` headers, `key = value` pairs and `#`/`;` comments.
// Throws ConfigError with the line number on malformed input.
std::vector<ConfigEntry> parse_ini(std::string_view text,
                                   std::string_view source = "<config>");

// Complete experiment description. Values are kept in file units: meters,
// seconds, degrees for angles.
struct ExperimentConfig {
  Task task = Task::kLanding2d;
  std::uint64_t seed = 0;
  std::string output_dir = "runs/landing2d";

  // [model]; an empty mass means "calibrate to hover at control.hover_pwm".
  std::optional<double> mass;
  double gravity = 9.81;
  double attitude_gain = 1.1094;
  double attitude_tau = 0.1838;
  double thrust_pole = 15.467;
  double thrust_c = 1.425e-4;
  double thrust_d = 2.894e-7;
  bool drag_enabled = false;
  double drag_kx = 0.0, drag_ky = 0.0, drag_kz = 0.0;
  double rotor_curve_a = 0.0, rotor_curve_b = 0.0, rotor_curve_c = 0.0;

  ArenaBounds arena;

  // [control]
  double dt = 0.02;
  int episode_steps = 300;
  double hover_pwm = 42000.0;
  double pwm_scale = 16500.0;
  double max_tilt_deg = 30.0;

  // [landing]
  double landing_goal_x = 0.0;
  double landing_goal_z = 1.25;
  double boundary_margin = 0.05;
  double obstacle_reward = -7.0;
  double platform_length = 0.6;
  double platform_depth = 0.5;

  // [setpoint]
  double setpoint_goal_x = 0.0;
  double setpoint_goal_y = 0.0;
  double setpoint_goal_z = 1.2;
  double reset_margin = 0.2;
  double hold_radius = 0.15;
  int hold_steps = 100;

  // [curriculum]
  bool curriculum_enabled = true;
  CurriculumSchedule schedule;      // final_tilt kept in sync with the field below
  double final_tilt_deg = -180.0 / 7.0;
  GammaSchedule gamma;

  // [ppo]
  PpoConfig ppo;
  int checkpoint_every = 50;
  double stop_success_rate = 0.95;
  std::int64_t stop_min_timesteps = 1'200'000;
  int progress_every = 10;

  // [eval]
  std::vector<Point2> eval_positions = kTableStartPositions;
  int eval_trials = 10;
  GoalTolerance eval_tolerance = kEvalGoalTolerance;
  double eval_start_jitter = 0.05;
  std::uint64_t eval_seed = 1234;
  int setpoint_eval_trials = 20;

  static ExperimentConfig defaults(Task task);

  // Builds defaults for the task named in the text (or `task_override`),
  // then applies every entry. Unknown keys and out-of-range values throw
  // ConfigError naming the line and field.
  static ExperimentConfig parse(std::string_view text,
                                std::string_view source = "<config>",
                                std::optional<Task> task_override = {});
  static ExperimentConfig load(const std::filesystem::path& path,
                               std::optional<Task> task_override = {});

  // Sets "section.key" to a textual value; returns the previous value.
  std::string set(std::string_view dotted_key, std::string_view value);
  std::string get(std::string_view dotted_key) const;

  // Cross-field checks; throws ConfigError.
  void validate() const;

  // Every field, one `key = value` line each; parse(to_ini()) reproduces
  // the config exactly.
  std::string to_ini() const;

  ModelParams model_params() const;
  ActionScaling action_scaling() const;
  LandingConfig landing_config() const;
  SetpointConfig setpoint_config() const;
  CurriculumSchedule curriculum_schedule() const;
  TrainerOptions trainer_options() const;
  // Environment i is seeded from (seed, i).
  EnvironmentFactory environment_factory() const;
  LandingEvalSpec landing_eval_spec() const;
  SetpointEvalSpec setpoint_eval_spec() const;
};

// "x z; x z; ..." as used by [eval] positions and --positions.
std::vector<Point2> parse_positions(std::string_view text);

}  // namespace quadland

#endif  // QUADLAND_CONFIG_HPP_
