#include "quadland/rollout.hpp"

#include <stdexcept>

namespace quadland {

RolloutBuffer::RolloutBuffer(int n_steps, int n_envs, int obs_dim, int act_dim)
    : n_steps_(n_steps), n_envs_(n_envs) {
  if (n_steps <= 0 || n_envs <= 0 || obs_dim <= 0 || act_dim <= 0) {
    throw std::invalid_argument("rollout buffer dimensions must be positive");
  }
  const Eigen::Index n = capacity();
  observations_.resize(obs_dim, n);
  actions_.resize(act_dim, n);
  for (Eigen::VectorXd* v : {&log_probs_, &rewards_, &values_, &dones_,
                             &advantages_, &returns_}) {
    v->setZero(n);
  }
}

void RolloutBuffer::add(std::span<const double> obs,
                        const Eigen::VectorXd& sample, double log_prob,
                        double reward, double value, bool done) {
  if (full()) throw std::logic_error("rollout buffer is full");
  const Eigen::Index i = size_++;
  observations_.col(i) = Eigen::Map<const Eigen::VectorXd>(
      obs.data(), static_cast<Eigen::Index>(obs.size()));
  actions_.col(i) = sample;
  log_probs_(i) = log_prob;
  rewards_(i) = reward;
  values_(i) = value;
  dones_(i) = done ? 1.0 : 0.0;
  advantages_ready_ = false;
}

void RolloutBuffer::clear() {
  size_ = 0;
  advantages_ready_ = false;
}

void compute_gae(RolloutBuffer& buffer, double gamma, double lambda,
                 std::span<const double> bootstrap_values) {
  if (!buffer.full()) {
    throw std::logic_error("compute_gae requires a full rollout buffer");
  }
  const int n_envs = buffer.n_envs();
  if (static_cast<int>(bootstrap_values.size()) != n_envs) {
    throw std::invalid_argument("need one bootstrap value per environment");
  }
  for (int e = 0; e < n_envs; ++e) {
    double next_value = bootstrap_values[e];
    double next_advantage = 0.0;
    for (int t = buffer.n_steps() - 1; t >= 0; --t) {
      const Eigen::Index i = static_cast<Eigen::Index>(t) * n_envs + e;
      const double not_done = 1.0 - buffer.dones_(i);
      const double delta = buffer.rewards_(i) + gamma * next_value * not_done -
                           buffer.values_(i);
      next_advantage = delta + gamma * lambda * not_done * next_advantage;
      buffer.advantages_(i) = next_advantage;
      buffer.returns_(i) = next_advantage + buffer.values_(i);
      next_value = buffer.values_(i);
    }
  }
  buffer.advantages_ready_ = true;
}

}  // namespace quadland
