#include <benchmark/benchmark.h>

#include <random>

#include "quadland/curriculum.hpp"
#include "quadland/dynamics.hpp"
#include "quadland/landing_env.hpp"
#include "quadland/policy.hpp"
#include "quadland/ppo.hpp"
#include "quadland/setpoint_env.hpp"

namespace {

using namespace quadland;

void BM_Rk4Step(benchmark::State& state) {
  const ModelParams p = ModelParams::crazyflie();
  QuadState s;
  s.position = Vec3(0.0, 0.0, 1.0);
  s.thrust_filter = steady_thrust_filter(42000.0, p);
  const ControlInput cmd{42000.0, 0.05, -0.05, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk4_step(s, cmd, p, 0.02));
  }
}
BENCHMARK(BM_Rk4Step);

void BM_LandingEnvStep(benchmark::State& state) {
  LandingEnv env(LandingConfig{}, 1);
  env.set_curriculum(completed_curriculum(CurriculumSchedule{}));
  env.reset();
  const std::array<double, 2> action{0.05, -0.1};
  for (auto _ : state) {
    if (env.step(action).done()) env.reset();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LandingEnvStep);

void BM_SetpointEnvStep(benchmark::State& state) {
  SetpointEnv env(SetpointConfig{}, 1);
  env.reset();
  const std::array<double, 3> action{0.05, 0.1, -0.1};
  for (auto _ : state) {
    if (env.step(action).done()) env.reset();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SetpointEnvStep);

void BM_PolicyForward(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const MlpParams p = init_params(rng, 8, 3, static_cast<int>(state.range(0)));
  const std::array<double, 8> obs{0.1, -0.2, 0.3, 0.0, 0.1, -0.1, 0.02, 0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_actor(p, obs));
  }
}
BENCHMARK(BM_PolicyForward)->Arg(64)->Arg(256);

void BM_PpoLossAndGradient(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const MlpParams p = init_params(rng, 5, 2);
  const int n = static_cast<int>(state.range(0));
  std::normal_distribution<double> normal(0.0, 1.0);
  PpoMinibatch b;
  b.observations = Eigen::MatrixXd::NullaryExpr(5, n, [&] { return normal(rng); });
  b.actions = Eigen::MatrixXd::NullaryExpr(2, n, [&] { return 0.1 * normal(rng); });
  b.old_log_probs = Eigen::VectorXd::Constant(n, -1.8);
  b.advantages = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
  b.returns = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
  MlpParams grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ppo_loss(p, b, PpoConfig{}, &grad).total);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PpoLossAndGradient)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
