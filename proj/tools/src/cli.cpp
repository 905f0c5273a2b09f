#include "quadland/cli.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "quadland/checkpoint.hpp"
#include "quadland/config.hpp"
#include "quadland/evaluation.hpp"
#include "quadland/render.hpp"
#include "quadland/trainer.hpp"
#include "quadland/trajectory.hpp"

namespace quadland::cli {

namespace fs = std::filesystem;

namespace {

// Failure that is not the user's configuration: I/O, divergence, bad data.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::string task;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> sets;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--config", o.config_path, "Experiment file (INI)")
      ->check(CLI::ExistingFile);
  cmd.add_option("--task", o.task, "landing2d or setpoint3d")
      ->check(CLI::IsMember({"landing2d", "setpoint3d"}));
  cmd.add_option("--set", o.sets, "Override a field: section.key=value")
      ->allow_extra_args(false);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw RuntimeFailure("cannot write " + path.string());
}

void log_override(std::ostream& out, std::string_view key,
                  const std::string& before, const std::string& after) {
  if (before == after) return;
  fmt::print(out, "override {} = {} (config: {})\n", key, after, before);
}

void apply(ExperimentConfig& cfg, std::ostream& out, std::string_view key,
           const std::string& value) {
  const std::string before = cfg.set(key, value);
  log_override(out, key, before, cfg.get(key));
}

// Defaults for the task, then the file, then --task, then the other flags.
ExperimentConfig load_config(const CommonOptions& o, std::ostream& out,
                             std::optional<Task> fallback_task = {}) {
  std::optional<Task> task_flag;
  if (!o.task.empty()) task_flag = parse_task(o.task);

  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    const std::string text = read_file(o.config_path);
    std::optional<Task> file_task;
    for (const ConfigEntry& e : parse_ini(text, o.config_path)) {
      if (e.section == "experiment" && e.key == "task") file_task = parse_task(e.value);
    }
    cfg = ExperimentConfig::parse(text, o.config_path, task_flag);
    if (task_flag && file_task && *file_task != *task_flag) {
      log_override(out, "experiment.task", std::string(task_name(*file_task)),
                   std::string(task_name(*task_flag)));
    }
  } else {
    cfg = ExperimentConfig::defaults(task_flag.value_or(
        fallback_task.value_or(Task::kLanding2d)));
  }

  for (const std::string& assignment : o.sets) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("--set '{}' must be section.key=value", assignment));
    }
    const std::string key = assignment.substr(0, eq);
    if (key == "experiment.task") {
      throw ConfigError("use --task to change the task");
    }
    apply(cfg, out, key, assignment.substr(eq + 1));
  }
  return cfg;
}

int cmd_train(const CommonOptions& o, std::ostream& out) {
  ExperimentConfig cfg = load_config(o, out);
  if (o.seed) apply(cfg, out, "experiment.seed", std::to_string(*o.seed));
  if (!o.out.empty()) apply(cfg, out, "experiment.output_dir", o.out);
  cfg.validate();

  const fs::path dir = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create " + dir.string() + ": " + ec.message());
  if (!o.config_path.empty()) {
    write_file(dir / "config.ini", read_file(o.config_path));
  }
  write_file(dir / "effective_config.ini", cfg.to_ini());

  fmt::print(out, "training {} seed {} for up to {} timesteps -> {}\n",
             task_name(cfg.task), cfg.seed, cfg.ppo.total_timesteps, dir.string());
  TrainerOptions options = cfg.trainer_options();
  options.progress = &out;
  const TrainResult result = train(cfg.environment_factory(), options);

  const TrainingMetrics last =
      result.metrics.empty() ? TrainingMetrics{} : result.metrics.back();
  fmt::print(out,
             "done: {} timesteps, {} iterations, {} episodes, success rate {:.3f}{}\n",
             result.timesteps, result.iterations, result.episodes,
             last.success_rate, result.stopped_early ? " (stopped early)" : "");
  if (result.aborted_episodes > 0) {
    fmt::print(out, "{} episodes aborted on non-finite states\n",
               result.aborted_episodes);
  }
  fmt::print(out, "final checkpoint: {}\n", (dir / "final.json").string());
  return kExitOk;
}

struct EvalOptions {
  CommonOptions common;
  std::string checkpoint;
  std::optional<int> trials;
  std::string positions;
};

int cmd_eval(const EvalOptions& e, std::ostream& out) {
  PolicyCheckpoint cp;
  try {
    cp = load_checkpoint(e.checkpoint);
  } catch (const CheckpointError& err) {
    throw RuntimeFailure(err.what());
  }

  CommonOptions o = e.common;
  const fs::path cp_dir = fs::path(e.checkpoint).parent_path();
  if (o.config_path.empty() && fs::exists(cp_dir / "effective_config.ini")) {
    o.config_path = (cp_dir / "effective_config.ini").string();
    fmt::print(out, "using {}\n", o.config_path);
  }
  ExperimentConfig cfg = load_config(o, out, cp.task);
  if (o.seed) apply(cfg, out, "eval.seed", std::to_string(*o.seed));
  if (e.trials) {
    apply(cfg, out,
          cfg.task == Task::kLanding2d ? "eval.trials" : "eval.setpoint_trials",
          std::to_string(*e.trials));
  }
  if (!e.positions.empty()) apply(cfg, out, "eval.positions", e.positions);
  cfg.validate();
  try {
    require_task(cp, cfg.task);
  } catch (const CheckpointError& err) {
    throw RuntimeFailure(err.what());
  }

  const fs::path dir = o.out.empty() ? cp_dir / "eval" : fs::path(o.out);
  const fs::path traj_dir = dir / "trajectories";
  std::error_code ec;
  fs::create_directories(traj_dir, ec);
  if (ec) throw RuntimeFailure("cannot create " + traj_dir.string());

  std::ostringstream trials_csv;
  trials_csv << "position,trial,start_x,start_z,success,steps,final_pitch,file\n";
  const Task task = cfg.task;
  auto sink = [&](int position, int trial, const EpisodeOutcome& outcome) {
    const std::string name = fmt::format("p{}_trial{:03d}.csv", position, trial);
    std::ofstream f(traj_dir / name);
    write_trajectory_csv(f, outcome.trajectory, task);
    if (!f) throw RuntimeFailure("cannot write " + (traj_dir / name).string());
    const TrajectoryRow& first = outcome.trajectory.front();
    const TrajectoryRow& last = outcome.trajectory.back();
    trials_csv << fmt::format("{},{},{},{},{},{},{},{}\n", position, trial,
                              first.position.x(), first.position.z(),
                              outcome.success ? 1 : 0, outcome.steps, last.pitch,
                              name);
  };

  std::string summary;
  if (task == Task::kLanding2d) {
    const LandingEvalResult r = evaluate_landing(
        cp.params, cfg.landing_config(), cfg.curriculum_schedule(),
        cfg.landing_eval_spec(), sink);
    summary = format_success_table(r);
  } else {
    const SetpointEvalResult r =
        evaluate_setpoint(cp.params, cfg.setpoint_config(), cfg.setpoint_eval_spec(),
                          sink);
    summary = fmt::format("set-point hold success: {}/{} ({:.1f}%)\n", r.successes,
                          r.trials, 100.0 * r.rate());
  }
  write_file(dir / "summary.txt", summary);
  write_file(dir / "trials.csv", trials_csv.str());
  out << summary;
  fmt::print(out, "trajectories: {}\n", traj_dir.string());
  return kExitOk;
}

struct RenderOptions {
  CommonOptions common;
  std::string trajectory;
  bool no_platform = false;
  int stride = 5;
};

int cmd_render(const RenderOptions& r, std::ostream& out) {
  const ExperimentConfig cfg = load_config(r.common, out);
  cfg.validate();

  std::ifstream in(r.trajectory);
  if (!in) throw RuntimeFailure("cannot read " + r.trajectory);
  RenderScene scene;
  try {
    scene.trajectory = read_trajectory_csv(in);
  } catch (const TrajectoryFormatError& err) {
    throw RuntimeFailure(fmt::format("{}: {}", r.trajectory, err.what()));
  }
  scene.arena = cfg.arena;
  scene.glyph_stride = r.stride;
  if (cfg.task == Task::kLanding2d) {
    const double tilt = cfg.curriculum_schedule().final_tilt;
    scene.goal = {cfg.landing_goal_x, cfg.landing_goal_z};
    scene.goal_pitch = tilt;
    scene.goal_halfwidth = {cfg.eval_tolerance[0], cfg.eval_tolerance[1]};
    if (!r.no_platform) {
      scene.platform = make_platform(scene.goal, tilt, cfg.platform_length,
                                     cfg.platform_depth, true)
                           .polygon;
    }
  } else {
    scene.goal = {cfg.setpoint_goal_x, cfg.setpoint_goal_z};
    scene.goal_halfwidth = {cfg.hold_radius, cfg.hold_radius};
  }

  fs::path target = r.common.out.empty() ? fs::path(r.trajectory).replace_extension(".svg")
                                         : fs::path(r.common.out);
  write_file(target, render_svg(scene));
  fmt::print(out, "wrote {} ({} poses)\n", target.string(), scene.trajectory.size());
  return kExitOk;
}

int cmd_inspect(const CommonOptions& o, std::ostream& out) {
  ExperimentConfig cfg = load_config(o, out);
  if (o.seed) apply(cfg, out, "experiment.seed", std::to_string(*o.seed));
  if (!o.out.empty()) apply(cfg, out, "experiment.output_dir", o.out);
  cfg.validate();
  out << cfg.to_ini();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Quadrotor inclined-landing training and evaluation"};
  app.name("quadland");
  app.require_subcommand(1);

  CommonOptions train_opts;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a policy with PPO");
  add_common(*train_cmd, train_opts);
  train_cmd->add_option("--seed", train_opts.seed, "Experiment seed");
  train_cmd->add_option("--out", train_opts.out, "Output directory");

  EvalOptions eval_opts;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate a checkpoint with the mean action");
  add_common(*eval_cmd, eval_opts.common);
  eval_cmd->add_option("--checkpoint", eval_opts.checkpoint, "Policy checkpoint")
      ->required();
  eval_cmd->add_option("--seed", eval_opts.common.seed, "Evaluation seed");
  eval_cmd->add_option("--trials", eval_opts.trials, "Trials per start position")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--positions", eval_opts.positions,
                       "Start positions, \"x z; x z; ...\"");
  eval_cmd->add_option("--out", eval_opts.common.out,
                       "Output directory (default: <checkpoint dir>/eval)");

  RenderOptions render_opts;
  CLI::App* render_cmd =
      app.add_subcommand("render", "Draw a trajectory CSV as an SVG overlay");
  add_common(*render_cmd, render_opts.common);
  render_cmd->add_option("trajectory", render_opts.trajectory, "Trajectory CSV")
      ->required();
  render_cmd->add_option("--out", render_opts.common.out,
                         "SVG file (default: trajectory with .svg)");
  render_cmd->add_flag("--no-platform", render_opts.no_platform,
                       "Omit the platform polygon");
  render_cmd->add_option("--stride", render_opts.stride, "Draw every n-th pose")
      ->check(CLI::PositiveNumber);

  CommonOptions inspect_opts;
  CLI::App* inspect_cmd = app.add_subcommand(
      "inspect-config", "Print the effective configuration");
  add_common(*inspect_cmd, inspect_opts);
  inspect_cmd->add_option("--seed", inspect_opts.seed, "Experiment seed");
  inspect_cmd->add_option("--out", inspect_opts.out, "Output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(train_opts, out);
    if (eval_cmd->parsed()) return cmd_eval(eval_opts, out);
    if (render_cmd->parsed()) return cmd_render(render_opts, out);
    return cmd_inspect(inspect_opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace quadland::cli
