#include "quadland/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace quadland {

void PpoConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(n_steps > 0 && n_envs > 0, "n_steps and n_envs must be positive");
  require(minibatch_size > 0, "minibatch_size must be positive");
  require((static_cast<std::int64_t>(n_steps) * n_envs) % minibatch_size == 0,
          "minibatch_size must divide n_steps * n_envs");
  require(epochs > 0, "epochs must be positive");
  require(clip_range > 0.0 && clip_range < 1.0, "clip_range must lie in (0, 1)");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(gae_lambda >= 0.0 && gae_lambda <= 1.0, "gae_lambda must lie in [0, 1]");
  require(value_coef >= 0.0 && entropy_coef >= 0.0,
          "loss coefficients must be non-negative");
  require(max_grad_norm > 0.0, "max_grad_norm must be positive");
  require(total_timesteps > 0, "total_timesteps must be positive");
  require(hidden_units > 0, "hidden_units must be positive");
}

PpoLossTerms ppo_loss(const MlpParams& params, const PpoMinibatch& batch,
                      const PpoConfig& config, MlpParams* grad) {
  const Eigen::Index n = batch.observations.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double eps = config.clip_range;
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);

  const MlpTape actor = forward_batch(params, Head::kActor, batch.observations);
  const MlpTape critic = forward_batch(params, Head::kCritic, batch.observations);
  const Eigen::VectorXd log_std = params.log_std();
  const Eigen::ArrayXd inv_var = (-2.0 * log_std.array()).exp();

  const Eigen::MatrixXd diff = batch.actions - actor.output;
  // z^2 per (action, sample)
  const Eigen::ArrayXXd z2 = diff.array().square().colwise() * inv_var;
  const Eigen::ArrayXd log_prob =
      -0.5 * z2.colwise().sum().transpose() - log_std.sum() -
      half_log_two_pi * static_cast<double>(log_std.size());
  const Eigen::ArrayXd log_ratio = log_prob - batch.old_log_probs.array();
  const Eigen::ArrayXd ratio = log_ratio.exp();
  const Eigen::ArrayXd adv = batch.advantages.array();

  PpoLossTerms terms;
  Eigen::ArrayXd d_log_prob(n);
  double surrogate = 0.0;
  double clipped = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = ratio(i);
    const double r_clip = std::clamp(r, 1.0 - eps, 1.0 + eps);
    const double s1 = r * adv(i);
    const double s2 = r_clip * adv(i);
    surrogate += std::min(s1, s2);
    const bool unclipped_path = s1 <= s2 || (r > 1.0 - eps && r < 1.0 + eps);
    d_log_prob(i) = unclipped_path ? -adv(i) * r * inv_n : 0.0;
    if (std::abs(r - 1.0) > eps) clipped += 1.0;
  }
  terms.policy = -surrogate * inv_n;
  terms.clip_fraction = clipped * inv_n;
  terms.approx_kl = ((ratio - 1.0) - log_ratio).mean();

  const Eigen::ArrayXd value_error =
      critic.output.row(0).transpose().array() - batch.returns.array();
  terms.value = value_error.square().mean();
  terms.entropy = log_std.sum() +
                  (0.5 + half_log_two_pi) * static_cast<double>(log_std.size());
  terms.total = terms.policy + config.value_coef * terms.value -
                config.entropy_coef * terms.entropy;

  if (grad != nullptr) {
    if (!grad->same_shape(params)) *grad = MlpParams(params.obs_dim(),
                                                      params.act_dim(),
                                                      params.hidden());
    grad->values().setZero();

    // d logp / d mean = diff / var; d logp / d log_std = z^2 - 1.
    Eigen::MatrixXd d_mean =
        (diff.array().colwise() * inv_var).rowwise() * d_log_prob.transpose();
    backward_batch(params, Head::kActor, actor, d_mean, *grad);
    grad->log_std() = ((z2 - 1.0).rowwise() * d_log_prob.transpose())
                          .rowwise()
                          .sum()
                          .matrix();
    grad->log_std().array() -= config.entropy_coef;

    const Eigen::MatrixXd d_value =
        (2.0 * config.value_coef * inv_n * value_error).matrix().transpose();
    backward_batch(params, Head::kCritic, critic, d_value, *grad);
  }
  return terms;
}

void normalize_advantages(Eigen::VectorXd& advantages) {
  const Eigen::Index n = advantages.size();
  if (n < 2) return;
  const double mean = advantages.mean();
  const double var =
      (advantages.array() - mean).square().sum() / static_cast<double>(n - 1);
  advantages = (advantages.array() - mean) / (std::sqrt(var) + 1e-8);
}

double clip_grad_norm(Eigen::VectorXd& grad, double max_norm) {
  const double norm = grad.norm();
  const double scale = max_norm / (norm + 1e-6);
  if (scale < 1.0) grad *= scale;
  return norm;
}

Adam::Adam(Eigen::Index size, double learning_rate, double beta1, double beta2,
           double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_(Eigen::VectorXd::Zero(size)),
      v_(Eigen::VectorXd::Zero(size)) {}

void Adam::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
  const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const double step_size = lr_ / bias1;
  params.array() -=
      step_size * m_.array() / ((v_.array() / bias2).sqrt() + eps_);
}

PpoUpdateStats ppo_update(MlpParams& params, const RolloutBuffer& buffer,
                          const PpoConfig& config, Adam& optimizer,
                          std::mt19937_64& rng) {
  if (!buffer.advantages_ready()) {
    throw std::logic_error("ppo_update requires computed advantages");
  }
  const Eigen::Index n = buffer.size();
  const Eigen::Index batch = config.minibatch_size;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));

  PpoMinibatch mb;
  mb.observations.resize(buffer.observations().rows(), batch);
  mb.actions.resize(buffer.actions().rows(), batch);
  mb.old_log_probs.resize(batch);
  mb.advantages.resize(batch);
  mb.returns.resize(batch);

  MlpParams grad(params.obs_dim(), params.act_dim(), params.hidden());
  PpoUpdateStats stats;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index start = 0; start + batch <= n; start += batch) {
      for (Eigen::Index k = 0; k < batch; ++k) {
        const Eigen::Index i = order[static_cast<std::size_t>(start + k)];
        mb.observations.col(k) = buffer.observations().col(i);
        mb.actions.col(k) = buffer.actions().col(i);
        mb.old_log_probs(k) = buffer.log_probs()(i);
        mb.advantages(k) = buffer.advantages()(i);
        mb.returns(k) = buffer.returns()(i);
      }
      normalize_advantages(mb.advantages);

      const PpoLossTerms terms = ppo_loss(params, mb, config, &grad);
      if (!std::isfinite(terms.total) || !grad.values().allFinite()) {
        throw TrainingError(
            "non-finite PPO loss (policy=" + std::to_string(terms.policy) +
            ", value=" + std::to_string(terms.value) +
            ", entropy=" + std::to_string(terms.entropy) + ")");
      }
      stats.grad_norm = clip_grad_norm(grad.values(), config.max_grad_norm);
      optimizer.step(params.values(), grad.values());

      stats.policy_loss += terms.policy;
      stats.value_loss += terms.value;
      stats.entropy += terms.entropy;
      stats.clip_fraction += terms.clip_fraction;
      stats.approx_kl += terms.approx_kl;
      ++stats.minibatches;
    }
  }
  if (stats.minibatches > 0) {
    const double inv = 1.0 / stats.minibatches;
    stats.policy_loss *= inv;
    stats.value_loss *= inv;
    stats.entropy *= inv;
    stats.clip_fraction *= inv;
    stats.approx_kl *= inv;
  }
  return stats;
}

}  // namespace quadland
