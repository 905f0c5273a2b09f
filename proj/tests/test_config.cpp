#include <gtest/gtest.h>

#include <numbers>

#include "quadland/config.hpp"
#include "quadland/landing_env.hpp"
#include "quadland/setpoint_env.hpp"

namespace quadland {
namespace {

void expect_config_error(std::string_view text, const std::string& fragment) {
  try {
    ExperimentConfig::parse(text, "exp.ini");
    FAIL() << "expected ConfigError containing '" << fragment << "'";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(ParseIni, SectionsCommentsAndLines) {
  const auto entries = parse_ini(
      "# leading comment\n"
      "[ppo]\n"
      "n_steps = 1024   ; trailing comment\n"
      "\n"
      "[eval]\n"
      "positions = 0 2; -1.5 1.6\n");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].section, "ppo");
  EXPECT_EQ(entries[0].key, "n_steps");
  EXPECT_EQ(entries[0].value, "1024");
  EXPECT_EQ(entries[0].line, 3);
  // ';' without preceding whitespace is part of the value.
  EXPECT_EQ(entries[1].value, "0 2; -1.5 1.6");
  EXPECT_EQ(entries[1].line, 6);
}

TEST(ParseIni, Errors) {
  EXPECT_THROW(parse_ini("[ppo\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_ini("x = 1\n"), ConfigError);
  EXPECT_THROW(parse_ini("[ppo]\njust text\n"), ConfigError);
  EXPECT_THROW(parse_ini("[ppo]\nepochs = 1\nepochs = 2\n"), ConfigError);
}

TEST(ExperimentConfig, TaskDefaults) {
  const ExperimentConfig landing = ExperimentConfig::defaults(Task::kLanding2d);
  EXPECT_EQ(landing.ppo.total_timesteps, 3000000);
  EXPECT_TRUE(landing.curriculum_enabled);
  EXPECT_EQ(landing.gamma.end, 0.99);
  EXPECT_EQ(landing.stop_success_rate, 0.95);
  EXPECT_EQ(landing.stop_min_timesteps, 1200000);
  const ExperimentConfig sp = ExperimentConfig::defaults(Task::kSetpoint3d);
  EXPECT_EQ(sp.ppo.total_timesteps, 1000000);
  EXPECT_EQ(sp.gamma.start, 0.97);
  EXPECT_EQ(sp.gamma.end, 0.97);
  EXPECT_FALSE(sp.trainer_options().curriculum.has_value());
}

TEST(ExperimentConfig, PpoDefaults) {
  const PpoConfig p = ExperimentConfig::defaults(Task::kLanding2d).ppo;
  EXPECT_EQ(p.n_steps, 2048);
  EXPECT_EQ(p.n_envs, 1);
  EXPECT_EQ(p.minibatch_size, 64);
  EXPECT_EQ(p.epochs, 10);
  EXPECT_EQ(p.clip_range, 0.2);
  EXPECT_EQ(p.learning_rate, 3e-4);
  EXPECT_EQ(p.gae_lambda, 0.95);
  EXPECT_EQ(p.value_coef, 0.5);
  EXPECT_EQ(p.entropy_coef, 0.0);
  EXPECT_EQ(p.max_grad_norm, 0.5);
}

TEST(ExperimentConfig, SnapshotRoundTripsExactly) {
  for (Task task : {Task::kLanding2d, Task::kSetpoint3d}) {
    ExperimentConfig c = ExperimentConfig::defaults(task);
    c.seed = 17;
    c.mass = 0.1 / 3.0;
    c.ppo.learning_rate = 1.0 / 7.0 * 1e-3;
    c.eval_positions = {{0.1, 2.0}, {-1.0 / 3.0, 1.5}};
    const std::string ini = c.to_ini();
    const ExperimentConfig back = ExperimentConfig::parse(ini);
    EXPECT_EQ(back.to_ini(), ini);
    EXPECT_EQ(back.mass, c.mass);
    EXPECT_EQ(back.ppo.learning_rate, c.ppo.learning_rate);
    EXPECT_EQ(back.eval_positions[1].x(), -1.0 / 3.0);
  }
}

TEST(ExperimentConfig, SnapshotEchoesArena) {
  const std::string ini = ExperimentConfig::defaults(Task::kLanding2d).to_ini();
  for (const char* line : {"x_min = -3.4", "x_max = 3.4", "y_min = -1.4", "y_max = 1.4",
                           "z_min = 0", "z_max = 2.4"}) {
    EXPECT_NE(ini.find(line), std::string::npos) << line;
  }
}

TEST(ExperimentConfig, UnknownKeyNamesLine) {
  expect_config_error("[ppo]\nepochs = 3\nlearning_rat = 1e-3\n", "exp.ini:3");
  expect_config_error("[ppo]\nlearning_rat = 1e-3\n", "learning_rat");
  expect_config_error("[nonsense]\nx = 1\n", "unknown key");
}

TEST(ExperimentConfig, RangeChecksNameField) {
  expect_config_error("[control]\ndt = -0.02\n", "[control] dt");
  expect_config_error("[model]\nmass = 0\n", "exp.ini:2");
  expect_config_error("[ppo]\nclip_range = 1.5\n", "clip_range");
  expect_config_error("[control]\nmax_tilt_deg = 45\n", "max_tilt_deg");
  expect_config_error("[ppo]\nn_steps = many\n", "not a number");
  expect_config_error("[experiment]\ntask = hover\n", "task");
}

TEST(ExperimentConfig, CrossFieldValidation) {
  expect_config_error("[ppo]\nminibatch_size = 100\n", "minibatch_size");
  expect_config_error("[curriculum]\ntolerance_end = 0.5\n", "curriculum");
  expect_config_error("[arena]\nx_min = 4\n", "arena");
}

TEST(ExperimentConfig, TaskInFileSelectsDefaults) {
  const ExperimentConfig c =
      ExperimentConfig::parse("[experiment]\ntask = setpoint3d\nseed = 3\n");
  EXPECT_EQ(c.task, Task::kSetpoint3d);
  EXPECT_EQ(c.ppo.total_timesteps, 1000000);
  EXPECT_EQ(c.seed, 3u);
  const ExperimentConfig forced = ExperimentConfig::parse(
      "[experiment]\ntask = setpoint3d\n", "x", Task::kLanding2d);
  EXPECT_EQ(forced.task, Task::kLanding2d);
}

TEST(ExperimentConfig, MassAutoCalibratesToHoverPwm) {
  ExperimentConfig c = ExperimentConfig::defaults(Task::kLanding2d);
  EXPECT_NEAR(c.model_params().mass, 0.040684, 5e-7);
  c.set("control.hover_pwm", "45000");
  EXPECT_NEAR(hover_pwm(c.model_params()), 45000.0, 1e-9);
  c.set("model.mass", "0.05");
  EXPECT_EQ(c.model_params().mass, 0.05);
  EXPECT_EQ(c.get("model.mass"), "0.05");
  c.set("model.mass", "auto");
  EXPECT_FALSE(c.mass.has_value());
}

TEST(ExperimentConfig, SetReturnsPrevious) {
  ExperimentConfig c = ExperimentConfig::defaults(Task::kLanding2d);
  EXPECT_EQ(c.set("experiment.seed", "7"), "0");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.get("experiment.seed"), "7");
  EXPECT_THROW(c.set("experiment.sed", "1"), ConfigError);
  EXPECT_THROW(c.set("seed", "1"), ConfigError);
  EXPECT_THROW(c.set("ppo.epochs", "-1"), ConfigError);
}

TEST(ExperimentConfig, AnglesInDegrees) {
  ExperimentConfig c = ExperimentConfig::defaults(Task::kLanding2d);
  EXPECT_DOUBLE_EQ(c.curriculum_schedule().final_tilt, -std::numbers::pi / 7.0);
  EXPECT_DOUBLE_EQ(c.action_scaling().max_tilt, std::numbers::pi / 6.0);
  c.set("curriculum.final_tilt_deg", "-20");
  EXPECT_DOUBLE_EQ(c.curriculum_schedule().final_tilt, -20.0 * std::numbers::pi / 180.0);
}

TEST(ExperimentConfig, ConversionsCarryValues) {
  ExperimentConfig c = ExperimentConfig::defaults(Task::kLanding2d);
  c.set("landing.goal_x", "0.5");
  c.set("landing.boundary_margin", "0.1");
  c.set("ppo.n_steps", "512");
  c.set("experiment.seed", "9");
  const LandingConfig lc = c.landing_config();
  EXPECT_EQ(lc.goal_position.x(), 0.5);
  EXPECT_EQ(lc.boundary_margin, 0.1);
  const TrainerOptions o = c.trainer_options();
  EXPECT_EQ(o.ppo.n_steps, 512);
  EXPECT_EQ(o.ppo.seed, 9u);
  ASSERT_TRUE(o.curriculum.has_value());
  EXPECT_EQ(o.output_dir->string(), "runs/landing2d");
  const LandingEvalSpec e = c.landing_eval_spec();
  EXPECT_EQ(e.positions.size(), 3u);
  EXPECT_EQ(e.tolerance, (GoalTolerance{0.10, 0.10, 1.5, 1.5, 0.025}));
}

TEST(ExperimentConfig, EnvironmentFactoryMatchesTask) {
  ExperimentConfig c = ExperimentConfig::defaults(Task::kSetpoint3d);
  auto a = c.environment_factory()(0);
  auto b = c.environment_factory()(0);
  auto other = c.environment_factory()(1);
  EXPECT_EQ(a->observation_size(), 8);
  a->reset();
  b->reset();
  other->reset();
  EXPECT_EQ(a->state().position, b->state().position);
  EXPECT_NE(a->state().position, other->state().position);
  c = ExperimentConfig::defaults(Task::kLanding2d);
  EXPECT_EQ(c.environment_factory()(0)->observation_size(), 5);
}

TEST(ParsePositions, Formats) {
  const auto p = parse_positions("0 2; -1.5 1.6 ;1.5,1.8");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[1], Point2(-1.5, 1.6));
  EXPECT_EQ(p[2], Point2(1.5, 1.8));
  EXPECT_THROW(parse_positions(""), ConfigError);
  EXPECT_THROW(parse_positions("1 2 3"), ConfigError);
  EXPECT_THROW(parse_positions("1 x"), ConfigError);
}

}  // namespace
}  // namespace quadland
