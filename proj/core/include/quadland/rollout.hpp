#ifndef QUADLAND_ROLLOUT_HPP_
#define QUADLAND_ROLLOUT_HPP_

#include <Eigen/Core>

#include <span>

namespace quadland {

// Fixed-capacity on-policy transition store. Transitions are appended
// step-major: index = step * n_envs + env.
class RolloutBuffer {
 public:
  RolloutBuffer() = default;
  RolloutBuffer(int n_steps, int n_envs, int obs_dim, int act_dim);

  int n_steps() const { return n_steps_; }
  int n_envs() const { return n_envs_; }
  Eigen::Index capacity() const { return static_cast<Eigen::Index>(n_steps_) * n_envs_; }
  Eigen::Index size() const { return size_; }
  bool full() const { return size_ == capacity(); }
  bool advantages_ready() const { return advantages_ready_; }

  // `sample` is the pre-clip Gaussian draw; `done` marks the last
  // transition of an episode.
  void add(std::span<const double> obs, const Eigen::VectorXd& sample,
           double log_prob, double reward, double value, bool done);
  void clear();

  const Eigen::MatrixXd& observations() const { return observations_; }
  const Eigen::MatrixXd& actions() const { return actions_; }
  const Eigen::VectorXd& log_probs() const { return log_probs_; }
  const Eigen::VectorXd& rewards() const { return rewards_; }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& dones() const { return dones_; }
  const Eigen::VectorXd& advantages() const { return advantages_; }
  const Eigen::VectorXd& returns() const { return returns_; }

 private:
  friend void compute_gae(RolloutBuffer&, double, double,
                          std::span<const double>);

  int n_steps_ = 0;
  int n_envs_ = 0;
  Eigen::Index size_ = 0;
  bool advantages_ready_ = false;
  Eigen::MatrixXd observations_;  // obs_dim x capacity
  Eigen::MatrixXd actions_;       // act_dim x capacity
  Eigen::VectorXd log_probs_, rewards_, values_, dones_, advantages_, returns_;
};

// Generalized advantage estimation over a full buffer.
//   delta_t = r_t + gamma V_{t+1} (1 - done_t) - V_t
//   A_t     = delta_t + gamma lambda (1 - done_t) A_{t+1}
//   R_t     = A_t + V_t
// `bootstrap_values` holds V of the observation following the last step,
// one per environment. Throws std::logic_error if the buffer is not full.
void compute_gae(RolloutBuffer& buffer, double gamma, double lambda,
                 std::span<const double> bootstrap_values);

}  // namespace quadland

#endif  // QUADLAND_ROLLOUT_HPP_
