#ifndef QUADLAND_POLICY_HPP_
#define QUADLAND_POLICY_HPP_

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <random>
#include <span>

namespace quadland {

enum class Head { kActor, kCritic };

inline constexpr int kNumLayers = 3;

// Actor (obs -> hidden -> hidden -> act) and critic (obs -> hidden -> hidden
// -> 1) networks plus a state-independent log standard deviation, stored in
// one contiguous vector. The same layout doubles as the gradient container.
class MlpParams {
 public:
  using MatrixMap = Eigen::Map<Eigen::MatrixXd>;
  using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;
  using VectorMap = Eigen::Map<Eigen::VectorXd>;
  using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

  MlpParams() = default;
  // All parameters zero.
  MlpParams(int obs_dim, int act_dim, int hidden = 64);

  int obs_dim() const { return obs_dim_; }
  int act_dim() const { return act_dim_; }
  int hidden() const { return hidden_; }
  Eigen::Index size() const { return values_.size(); }

  Eigen::VectorXd& values() { return values_; }
  const Eigen::VectorXd& values() const { return values_; }

  // Weight of `layer` is (fan_out x fan_in).
  MatrixMap weight(Head head, int layer);
  ConstMatrixMap weight(Head head, int layer) const;
  VectorMap bias(Head head, int layer);
  ConstVectorMap bias(Head head, int layer) const;
  VectorMap log_std();
  ConstVectorMap log_std() const;

  bool same_shape(const MlpParams& other) const {
    return obs_dim_ == other.obs_dim_ && act_dim_ == other.act_dim_ &&
           hidden_ == other.hidden_;
  }

 private:
  struct Slot {
    Eigen::Index offset = 0;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
  };
  static int index(Head head, int layer) {
    return (head == Head::kActor ? 0 : kNumLayers) + layer;
  }

  int obs_dim_ = 0;
  int act_dim_ = 0;
  int hidden_ = 0;
  std::array<Slot, 2 * kNumLayers> weights_{};
  std::array<Slot, 2 * kNumLayers> biases_{};
  Slot log_std_{};
  Eigen::VectorXd values_;
};

// Activations of one batched forward pass; columns are samples.
struct MlpTape {
  Eigen::MatrixXd input;
  Eigen::MatrixXd hidden1;
  Eigen::MatrixXd hidden2;
  Eigen::MatrixXd output;
};

MlpTape forward_batch(const MlpParams& params, Head head,
                      const Eigen::MatrixXd& inputs);

// Accumulates d(loss)/d(params) of `head` into `grad` given d(loss)/d(output).
void backward_batch(const MlpParams& params, Head head, const MlpTape& tape,
                    const Eigen::MatrixXd& d_output, MlpParams& grad);

// Throw std::invalid_argument when obs.size() != params.obs_dim().
Eigen::VectorXd forward_actor(const MlpParams& params,
                              std::span<const double> obs);
double forward_critic(const MlpParams& params, std::span<const double> obs);

struct ActionSample {
  Eigen::VectorXd mean;
  Eigen::VectorXd sample;  // Gaussian draw before clipping
  Eigen::VectorXd action;  // sample clipped to [-1, 1]
  double log_prob = 0.0;   // density of `sample`
};

ActionSample sample_action(const MlpParams& params, std::span<const double> obs,
                           std::mt19937_64& rng);

// Mean action clipped to [-1, 1].
Eigen::VectorXd deterministic_action(const MlpParams& params,
                                     std::span<const double> obs);

// Diagonal Gaussian log density, summed over action dimensions.
double gaussian_log_prob(const Eigen::VectorXd& mean,
                         const Eigen::VectorXd& log_std,
                         const Eigen::VectorXd& x);

// Orthogonal weights (gain sqrt(2) hidden, 0.01 actor output, 1 critic
// output), zero biases, zero log_std.
MlpParams init_params(std::mt19937_64& rng, int obs_dim, int act_dim,
                      int hidden = 64);

// Orthogonal (rows x cols) matrix scaled by gain.
Eigen::MatrixXd orthogonal_matrix(std::mt19937_64& rng, Eigen::Index rows,
                                  Eigen::Index cols, double gain);

}  // namespace quadland

#endif  // QUADLAND_POLICY_HPP_
