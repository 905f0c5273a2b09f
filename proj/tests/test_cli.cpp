#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "quadland/cli.hpp"
#include "test_support.hpp"

namespace quadland {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Invocation inv;
  inv.code = cli::run(args, out, err);
  inv.out = out.str();
  inv.err = err.str();
  return inv;
}

const char* kTinyBudget =
    "[experiment]\n"
    "task = landing2d\n"
    "seed = 3\n"
    "[ppo]\n"
    "n_steps = 128\n"
    "minibatch_size = 64\n"
    "epochs = 1\n"
    "hidden_units = 8\n"
    "total_timesteps = 256\n"
    "checkpoint_every = 0\n";

TEST(Cli, NoSubcommandIsUsageError) {
  EXPECT_EQ(run_cli({}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"fly"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"eval"}).code, cli::kExitConfigError);  // --checkpoint required
}

TEST(Cli, HelpExitsZero) {
  const Invocation inv = run_cli({"--help"});
  EXPECT_EQ(inv.code, cli::kExitOk);
  EXPECT_NE(inv.out.find("train"), std::string::npos);
}

TEST(Cli, InspectPrintsEffectiveConfig) {
  const Invocation inv = run_cli({"inspect-config", "--task", "setpoint3d", "--seed", "4"});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  EXPECT_NE(inv.out.find("task = setpoint3d"), std::string::npos);
  EXPECT_NE(inv.out.find("seed = 4"), std::string::npos);
  EXPECT_NE(inv.out.find("override experiment.seed = 4 (config: 0)"), std::string::npos);
}

TEST(Cli, OverrideWinsAndIsLogged) {
  fixtures::TempDir dir;
  fixtures::write_text(dir.path() / "exp.ini", "[ppo]\nlearning_rate = 0.001\n");
  const Invocation inv = run_cli({"inspect-config", "--config",
                                  (dir.path() / "exp.ini").string(), "--set",
                                  "ppo.learning_rate=0.0005"});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  EXPECT_NE(inv.out.find("override ppo.learning_rate = 0.0005 (config: 0.001)"),
            std::string::npos)
      << inv.out;
  EXPECT_NE(inv.out.find("learning_rate = 0.0005\n"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  fixtures::TempDir dir;
  const fs::path ini = dir.path() / "exp.ini";
  fixtures::write_text(ini, "[ppo]\nepochs = 3\nlearning_rat = 1\n");
  Invocation inv = run_cli({"inspect-config", "--config", ini.string()});
  EXPECT_EQ(inv.code, cli::kExitConfigError);
  EXPECT_NE(inv.err.find(":3"), std::string::npos) << inv.err;

  EXPECT_EQ(run_cli({"inspect-config", "--set", "control.dt=-1"}).code,
            cli::kExitConfigError);
  EXPECT_EQ(run_cli({"inspect-config", "--set", "nonsense"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"inspect-config", "--set", "experiment.task=setpoint3d"}).code,
            cli::kExitConfigError);
  EXPECT_EQ(run_cli({"inspect-config", "--task", "hover"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"inspect-config", "--config", (dir.path() / "missing.ini").string()})
                .code,
            cli::kExitConfigError);
}

TEST(Cli, TrainEvalRenderEndToEnd) {
  fixtures::TempDir dir;
  const fs::path ini = dir.path() / "exp.ini";
  fixtures::write_text(ini, kTinyBudget);
  const fs::path run_dir = dir.path() / "run";

  Invocation inv = run_cli({"train", "--config", ini.string(), "--out", run_dir.string()});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  EXPECT_NE(inv.out.find("done: 256 timesteps"), std::string::npos) << inv.out;
  EXPECT_EQ(fixtures::read_text(run_dir / "config.ini"), kTinyBudget);
  for (const char* f : {"effective_config.ini", "metrics.csv", "final.json"}) {
    EXPECT_TRUE(fs::exists(run_dir / f)) << f;
  }
  const std::string effective = fixtures::read_text(run_dir / "effective_config.ini");
  EXPECT_NE(effective.find("x_min = -3.4"), std::string::npos);
  EXPECT_NE(effective.find("total_timesteps = 256"), std::string::npos);

  inv = run_cli({"eval", "--checkpoint", (run_dir / "final.json").string(), "--trials", "2",
                 "--positions", "0 2; 1.5 1.8"});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  const fs::path eval_dir = run_dir / "eval";
  EXPECT_TRUE(fs::exists(eval_dir / "summary.txt"));
  std::istringstream trials(fixtures::read_text(eval_dir / "trials.csv"));
  std::string line;
  int rows = 0;
  std::getline(trials, line);
  while (std::getline(trials, line)) ++rows;
  EXPECT_EQ(rows, 4);
  const fs::path traj = eval_dir / "trajectories" / "p1_trial001.csv";
  ASSERT_TRUE(fs::exists(traj));

  inv = run_cli({"eval", "--checkpoint", (run_dir / "final.json").string(), "--trials", "2",
                 "--positions", "0 2; 1.5 1.8", "--out", (dir.path() / "again").string()});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  EXPECT_EQ(fixtures::read_text(dir.path() / "again" / "trials.csv"),
            fixtures::read_text(eval_dir / "trials.csv"));
  EXPECT_EQ(fixtures::read_text(dir.path() / "again" / "trajectories" / "p1_trial001.csv"),
            fixtures::read_text(traj));

  inv = run_cli({"render", traj.string()});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  const std::string svg = fixtures::read_text(eval_dir / "trajectories" / "p1_trial001.svg");
  EXPECT_NE(svg.find("class=\"platform\""), std::string::npos);
  inv = run_cli({"render", traj.string(), "--no-platform", "--out",
                 (dir.path() / "bare.svg").string()});
  ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  EXPECT_EQ(fixtures::read_text(dir.path() / "bare.svg").find("class=\"platform\""),
            std::string::npos);

  // A landing checkpoint cannot be evaluated as a set-point policy.
  inv = run_cli({"eval", "--checkpoint", (run_dir / "final.json").string(), "--task",
                 "setpoint3d", "--out", (dir.path() / "wrong").string()});
  EXPECT_EQ(inv.code, cli::kExitRuntimeError) << inv.out;
}

TEST(Cli, TrainIsDeterministic) {
  fixtures::TempDir dir;
  const fs::path ini = dir.path() / "exp.ini";
  fixtures::write_text(ini, kTinyBudget);
  for (const char* name : {"a", "b"}) {
    const Invocation inv =
        run_cli({"train", "--config", ini.string(), "--out", (dir.path() / name).string()});
    ASSERT_EQ(inv.code, cli::kExitOk) << inv.err;
  }
  EXPECT_EQ(fixtures::read_text(dir.path() / "a" / "metrics.csv"),
            fixtures::read_text(dir.path() / "b" / "metrics.csv"));
  EXPECT_EQ(fixtures::read_text(dir.path() / "a" / "final.json"),
            fixtures::read_text(dir.path() / "b" / "final.json"));
}

TEST(Cli, RuntimeErrorsExitThree) {
  fixtures::TempDir dir;
  const fs::path csv = dir.path() / "bad.csv";
  fixtures::write_text(csv,
                       "step,t,x,z,vx,vz,pitch,pwm_cmd,pitch_cmd,reward,done\n"
                       "0,0,0,1,0,0,0,42000,0,0,0\n"
                       "1,0.02,0,1,0,oops,0,42000,0,0,0\n");
  Invocation inv = run_cli({"render", csv.string()});
  EXPECT_EQ(inv.code, cli::kExitRuntimeError);
  EXPECT_NE(inv.err.find("row 3"), std::string::npos) << inv.err;

  inv = run_cli({"eval", "--checkpoint", (dir.path() / "none.json").string()});
  EXPECT_EQ(inv.code, cli::kExitRuntimeError);
  fixtures::write_text(dir.path() / "junk.json", "{");
  inv = run_cli({"eval", "--checkpoint", (dir.path() / "junk.json").string()});
  EXPECT_EQ(inv.code, cli::kExitRuntimeError);
}

}  // namespace
}  // namespace quadland
