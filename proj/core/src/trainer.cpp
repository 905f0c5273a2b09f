#include "quadland/trainer.hpp"

#include <fmt/core.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <random>

#include "quadland/checkpoint.hpp"
#include "quadland/rollout.hpp"
#include "quadland/seeding.hpp"

namespace quadland {

std::string format_metrics_row(const TrainingMetrics& row) {
  return fmt::format("{},{},{},{},{}", row.iteration, row.timesteps,
                     row.mean_return, row.mean_length, row.success_rate);
}

namespace {

struct EpisodeRecord {
  double episode_return = 0.0;
  std::int64_t length = 0;
  bool success = false;
};

class EpisodeWindow {
 public:
  explicit EpisodeWindow(int capacity) : capacity_(capacity) {}

  void push(const EpisodeRecord& r) {
    records_.push_back(r);
    if (static_cast<int>(records_.size()) > capacity_) records_.pop_front();
  }
  bool full() const { return static_cast<int>(records_.size()) >= capacity_; }

  TrainingMetrics summarize() const {
    TrainingMetrics m;
    if (records_.empty()) {
      m.mean_return = m.mean_length = m.success_rate =
          std::numeric_limits<double>::quiet_NaN();
      return m;
    }
    double ret = 0.0, len = 0.0, succ = 0.0;
    for (const auto& r : records_) {
      ret += r.episode_return;
      len += static_cast<double>(r.length);
      succ += r.success ? 1.0 : 0.0;
    }
    const double n = static_cast<double>(records_.size());
    m.mean_return = ret / n;
    m.mean_length = len / n;
    m.success_rate = succ / n;
    return m;
  }

 private:
  int capacity_;
  std::deque<EpisodeRecord> records_;
};

void write_checkpoint(const TrainerOptions& options, const MlpParams& params,
                      std::int64_t iteration, std::int64_t timesteps,
                      const std::string& name) {
  if (!options.output_dir) return;
  save_checkpoint(*options.output_dir / name,
                  {options.task, params, iteration, timesteps});
}

}  // namespace

TrainResult train(const EnvironmentFactory& make_env,
                  const TrainerOptions& options) {
  const PpoConfig& cfg = options.ppo;
  cfg.validate();
  options.gamma.validate();
  if (options.curriculum) options.curriculum->validate();

  std::vector<std::unique_ptr<Environment>> envs;
  for (int i = 0; i < cfg.n_envs; ++i) envs.push_back(make_env(i));
  const int obs_dim = envs.front()->observation_size();
  const int act_dim = envs.front()->action_size();

  std::mt19937_64 init_rng(derive_seed(cfg.seed, streams::kInit));
  std::mt19937_64 action_rng(derive_seed(cfg.seed, streams::kActions));
  std::mt19937_64 shuffle_rng(derive_seed(cfg.seed, streams::kShuffle));

  TrainResult result;
  result.params = init_params(init_rng, obs_dim, act_dim, cfg.hidden_units);
  MlpParams& params = result.params;
  Adam optimizer(params.size(), cfg.learning_rate);
  RolloutBuffer buffer(cfg.n_steps, cfg.n_envs, obs_dim, act_dim);

  std::optional<CurriculumState> curriculum;
  if (options.curriculum) {
    curriculum = initial_curriculum(*options.curriculum, options.gamma);
  }

  std::ofstream metrics_csv;
  if (options.output_dir) {
    std::filesystem::create_directories(*options.output_dir);
    metrics_csv.open(*options.output_dir / "metrics.csv");
    if (!metrics_csv) {
      throw TrainingError("cannot write metrics.csv in " +
                          options.output_dir->string());
    }
    metrics_csv << kMetricsHeader << '\n';
  }

  std::vector<std::vector<double>> obs(cfg.n_envs);
  std::vector<EpisodeRecord> running(cfg.n_envs);
  for (int e = 0; e < cfg.n_envs; ++e) {
    if (curriculum) envs[e]->set_curriculum(*curriculum);
    const auto o = envs[e]->reset();
    obs[e].assign(o.begin(), o.end());
  }

  EpisodeWindow window(options.success_window);
  const auto started = std::chrono::steady_clock::now();
  std::int64_t timesteps = 0;
  std::int64_t iteration = 0;

  while (timesteps < cfg.total_timesteps) {
    ++iteration;
    const double gamma = gamma_schedule(iteration, options.gamma);
    if (curriculum) curriculum->gamma = gamma;

    buffer.clear();
    for (int t = 0; t < cfg.n_steps; ++t) {
      for (int e = 0; e < cfg.n_envs; ++e) {
        Environment& env = *envs[e];
        const ActionSample a = sample_action(params, obs[e], action_rng);
        const double value = forward_critic(params, obs[e]);
        const StepResult step = env.step(
            std::span<const double>(a.action.data(), a.action.size()));

        double reward = step.reward;
        EpisodeRecord& ep = running[e];
        ep.episode_return += step.reward;
        ep.length += 1;

        if (step.done()) {
          // Time limits are not terminal: fold the tail value into the
          // reward so that GAE can treat every episode end uniformly.
          if (step.truncated && !step.terminated) {
            reward += gamma * forward_critic(params, env.observation());
          }
          if (step.failed) {
            ++result.aborted_episodes;
            if (options.progress) {
              fmt::print(*options.progress,
                         "warning: episode aborted (non-finite state) at "
                         "timestep {}; discarded\n",
                         timesteps);
            }
          } else {
            ep.success = step.success;
            window.push(ep);
          }
          ++result.episodes;
          if (curriculum) {
            curriculum = advance_episode(*curriculum, ep.length,
                                         *options.curriculum);
            curriculum->gamma = gamma;
            env.set_curriculum(*curriculum);
          }
          buffer.add(obs[e], a.sample, a.log_prob, reward, value, true);
          ep = EpisodeRecord{};
          const auto o = env.reset();
          obs[e].assign(o.begin(), o.end());
        } else {
          buffer.add(obs[e], a.sample, a.log_prob, reward, value, false);
          const auto o = env.observation();
          obs[e].assign(o.begin(), o.end());
        }
      }
      timesteps += cfg.n_envs;
    }

    std::vector<double> bootstrap(cfg.n_envs);
    for (int e = 0; e < cfg.n_envs; ++e) {
      bootstrap[e] = forward_critic(params, obs[e]);
    }
    compute_gae(buffer, gamma, cfg.gae_lambda, bootstrap);

    PpoUpdateStats stats;
    try {
      stats = ppo_update(params, buffer, cfg, optimizer, shuffle_rng);
    } catch (const TrainingError&) {
      write_checkpoint(options, params, iteration, timesteps,
                       "diverged_checkpoint.json");
      throw;
    }

    TrainingMetrics row = window.summarize();
    row.iteration = iteration;
    row.timesteps = timesteps;
    result.metrics.push_back(row);
    if (metrics_csv.is_open()) {
      metrics_csv << format_metrics_row(row) << '\n';
      metrics_csv.flush();
    }

    if (options.progress && options.progress_every > 0 &&
        iteration % options.progress_every == 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        started)
              .count();
      std::string line = fmt::format(
          "iter {:5d}  steps {:8d}  return {:9.2f}  len {:6.1f}  success "
          "{:5.2f}  gamma {:.4f}  std {:.3f}  kl {:.4f}",
          iteration, timesteps, row.mean_return, row.mean_length,
          row.success_rate, gamma, std::exp(params.log_std().mean()),
          stats.approx_kl);
      if (curriculum) {
        line += fmt::format("  | ep {} d {:.3f} tilt {:.3f} box ({:.2f},{:.2f}) {}",
                            curriculum->episode_index, curriculum->tolerance,
                            curriculum->goal_tilt, curriculum->init_halfwidth_x,
                            curriculum->init_halfwidth_z,
                            curriculum->platform_active ? "platform" : "-");
      }
      fmt::print(*options.progress, "{}  [{:.0f}s]\n", line, elapsed);
      options.progress->flush();
    }

    if (options.checkpoint_every > 0 && iteration % options.checkpoint_every == 0) {
      write_checkpoint(options, params, iteration, timesteps,
                       fmt::format("checkpoint_{:06d}.json", iteration));
    }

    const bool curriculum_done =
        !curriculum || curriculum_complete(*curriculum, *options.curriculum);
    if (options.stop_success_rate > 0.0 && curriculum_done && window.full() &&
        timesteps >= options.stop_min_timesteps &&
        row.success_rate >= options.stop_success_rate) {
      result.stopped_early = true;
      break;
    }
  }

  write_checkpoint(options, params, iteration, timesteps, "final.json");
  result.curriculum = curriculum;
  result.timesteps = timesteps;
  result.iterations = iteration;
  return result;
}

}  // namespace quadland
