#ifndef QUADLAND_PPO_HPP_
#define QUADLAND_PPO_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "quadland/policy.hpp"
#include "quadland/rollout.hpp"

namespace quadland {

struct PpoConfig {
  int n_steps = 2048;
  int n_envs = 1;
  int minibatch_size = 64;
  int epochs = 10;
  double clip_range = 0.2;
  double learning_rate = 3e-4;
  double gae_lambda = 0.95;
  double value_coef = 0.5;
  double entropy_coef = 0.0;
  double max_grad_norm = 0.5;
  std::int64_t total_timesteps = 1'000'000;
  int hidden_units = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

struct PpoMinibatch {
  Eigen::MatrixXd observations;  // obs_dim x B
  Eigen::MatrixXd actions;       // act_dim x B, pre-clip samples
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd advantages;    // already normalized
  Eigen::VectorXd returns;
};

struct PpoLossTerms {
  double total = 0.0;
  double policy = 0.0;   // -mean(min(rho A, clip(rho) A))
  double value = 0.0;    // mean((R - V)^2)
  double entropy = 0.0;  // mean Gaussian entropy
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
};

// total = policy + value_coef * value - entropy_coef * entropy.
// Writes d(total)/d(params) into `grad` when non-null (overwritten).
PpoLossTerms ppo_loss(const MlpParams& params, const PpoMinibatch& batch,
                      const PpoConfig& config, MlpParams* grad);

// Zero mean, unit (sample) standard deviation. Vectors shorter than two
// are left untouched.
void normalize_advantages(Eigen::VectorXd& advantages);

// Scales `grad` so its L2 norm is at most max_norm; returns the norm before
// scaling.
double clip_grad_norm(Eigen::VectorXd& grad, double max_norm);

class Adam {
 public:
  Adam() = default;
  Adam(Eigen::Index size, double learning_rate, double beta1 = 0.9,
       double beta2 = 0.999, double epsilon = 1e-5);

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
  std::int64_t steps() const { return t_; }

 private:
  double lr_ = 0.0, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-5;
  std::int64_t t_ = 0;
  Eigen::VectorXd m_, v_;
};

struct PpoUpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double grad_norm = 0.0;
  int minibatches = 0;
};

// Clipped-surrogate epochs over shuffled minibatches of a buffer whose
// advantages are computed. Throws TrainingError on a non-finite loss.
PpoUpdateStats ppo_update(MlpParams& params, const RolloutBuffer& buffer,
                          const PpoConfig& config, Adam& optimizer,
                          std::mt19937_64& rng);

}  // namespace quadland

#endif  // QUADLAND_PPO_HPP_
