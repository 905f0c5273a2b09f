#include "quadland/policy.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quadland {

MlpParams::MlpParams(int obs_dim, int act_dim, int hidden)
    : obs_dim_(obs_dim), act_dim_(act_dim), hidden_(hidden) {
  if (obs_dim <= 0 || act_dim <= 0 || hidden <= 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  Eigen::Index offset = 0;
  auto place = [&](Eigen::Index rows, Eigen::Index cols) {
    Slot s{offset, rows, cols};
    offset += rows * cols;
    return s;
  };
  for (Head head : {Head::kActor, Head::kCritic}) {
    const int out = head == Head::kActor ? act_dim : 1;
    const std::array<Eigen::Index, 4> sizes = {obs_dim, hidden, hidden, out};
    for (int layer = 0; layer < kNumLayers; ++layer) {
      weights_[index(head, layer)] = place(sizes[layer + 1], sizes[layer]);
      biases_[index(head, layer)] = place(sizes[layer + 1], 1);
    }
  }
  log_std_ = place(act_dim, 1);
  values_ = Eigen::VectorXd::Zero(offset);
}

MlpParams::MatrixMap MlpParams::weight(Head head, int layer) {
  const Slot& s = weights_[index(head, layer)];
  return MatrixMap(values_.data() + s.offset, s.rows, s.cols);
}

MlpParams::ConstMatrixMap MlpParams::weight(Head head, int layer) const {
  const Slot& s = weights_[index(head, layer)];
  return ConstMatrixMap(values_.data() + s.offset, s.rows, s.cols);
}

MlpParams::VectorMap MlpParams::bias(Head head, int layer) {
  const Slot& s = biases_[index(head, layer)];
  return VectorMap(values_.data() + s.offset, s.rows);
}

MlpParams::ConstVectorMap MlpParams::bias(Head head, int layer) const {
  const Slot& s = biases_[index(head, layer)];
  return ConstVectorMap(values_.data() + s.offset, s.rows);
}

MlpParams::VectorMap MlpParams::log_std() {
  return VectorMap(values_.data() + log_std_.offset, log_std_.rows);
}

MlpParams::ConstVectorMap MlpParams::log_std() const {
  return ConstVectorMap(values_.data() + log_std_.offset, log_std_.rows);
}

MlpTape forward_batch(const MlpParams& params, Head head,
                      const Eigen::MatrixXd& inputs) {
  if (inputs.rows() != params.obs_dim()) {
    throw std::invalid_argument("observation has " +
                                std::to_string(inputs.rows()) +
                                " components, network expects " +
                                std::to_string(params.obs_dim()));
  }
  MlpTape tape;
  tape.input = inputs;
  tape.hidden1 = ((params.weight(head, 0) * inputs).colwise() +
                  params.bias(head, 0))
                     .array()
                     .tanh()
                     .matrix();
  tape.hidden2 = ((params.weight(head, 1) * tape.hidden1).colwise() +
                  params.bias(head, 1))
                     .array()
                     .tanh()
                     .matrix();
  tape.output =
      (params.weight(head, 2) * tape.hidden2).colwise() + params.bias(head, 2);
  return tape;
}

void backward_batch(const MlpParams& params, Head head, const MlpTape& tape,
                    const Eigen::MatrixXd& d_output, MlpParams& grad) {
  grad.weight(head, 2).noalias() += d_output * tape.hidden2.transpose();
  grad.bias(head, 2) += d_output.rowwise().sum();

  Eigen::MatrixXd d_pre2 = params.weight(head, 2).transpose() * d_output;
  d_pre2.array() *= 1.0 - tape.hidden2.array().square();
  grad.weight(head, 1).noalias() += d_pre2 * tape.hidden1.transpose();
  grad.bias(head, 1) += d_pre2.rowwise().sum();

  Eigen::MatrixXd d_pre1 = params.weight(head, 1).transpose() * d_pre2;
  d_pre1.array() *= 1.0 - tape.hidden1.array().square();
  grad.weight(head, 0).noalias() += d_pre1 * tape.input.transpose();
  grad.bias(head, 0) += d_pre1.rowwise().sum();
}

namespace {

Eigen::VectorXd forward_single(const MlpParams& params, Head head,
                               std::span<const double> obs) {
  if (static_cast<int>(obs.size()) != params.obs_dim()) {
    throw std::invalid_argument("observation has " + std::to_string(obs.size()) +
                                " components, network expects " +
                                std::to_string(params.obs_dim()));
  }
  const Eigen::Map<const Eigen::VectorXd> x(obs.data(),
                                            static_cast<Eigen::Index>(obs.size()));
  const Eigen::VectorXd h1 =
      (params.weight(head, 0) * x + params.bias(head, 0)).array().tanh().matrix();
  const Eigen::VectorXd h2 =
      (params.weight(head, 1) * h1 + params.bias(head, 1)).array().tanh().matrix();
  return params.weight(head, 2) * h2 + params.bias(head, 2);
}

}  // namespace

Eigen::VectorXd forward_actor(const MlpParams& params,
                              std::span<const double> obs) {
  return forward_single(params, Head::kActor, obs);
}

double forward_critic(const MlpParams& params, std::span<const double> obs) {
  return forward_single(params, Head::kCritic, obs)(0);
}

double gaussian_log_prob(const Eigen::VectorXd& mean,
                         const Eigen::VectorXd& log_std,
                         const Eigen::VectorXd& x) {
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  double total = 0.0;
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double z = (x(i) - mean(i)) / std::exp(log_std(i));
    total += -0.5 * z * z - log_std(i) - half_log_two_pi;
  }
  return total;
}

ActionSample sample_action(const MlpParams& params, std::span<const double> obs,
                           std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ActionSample out;
  out.mean = forward_actor(params, obs);
  const Eigen::VectorXd log_std = params.log_std();
  out.sample.resize(out.mean.size());
  for (Eigen::Index i = 0; i < out.mean.size(); ++i) {
    out.sample(i) = out.mean(i) + std::exp(log_std(i)) * normal(rng);
  }
  out.action = out.sample.cwiseMax(-1.0).cwiseMin(1.0);
  out.log_prob = gaussian_log_prob(out.mean, log_std, out.sample);
  return out;
}

Eigen::VectorXd deterministic_action(const MlpParams& params,
                                     std::span<const double> obs) {
  return forward_actor(params, obs).cwiseMax(-1.0).cwiseMin(1.0);
}

Eigen::MatrixXd orthogonal_matrix(std::mt19937_64& rng, Eigen::Index rows,
                                  Eigen::Index cols, double gain) {
  const bool transpose = rows < cols;
  const Eigen::Index m = transpose ? cols : rows;
  const Eigen::Index n = transpose ? rows : cols;
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, n);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  q *= gain;
  return transpose ? Eigen::MatrixXd(q.transpose()) : q;
}

MlpParams init_params(std::mt19937_64& rng, int obs_dim, int act_dim,
                      int hidden) {
  MlpParams params(obs_dim, act_dim, hidden);
  const double hidden_gain = std::sqrt(2.0);
  for (Head head : {Head::kActor, Head::kCritic}) {
    const double output_gain = head == Head::kActor ? 0.01 : 1.0;
    for (int layer = 0; layer < kNumLayers; ++layer) {
      auto w = params.weight(head, layer);
      w = orthogonal_matrix(rng, w.rows(), w.cols(),
                            layer + 1 < kNumLayers ? hidden_gain : output_gain);
    }
  }
  return params;
}

}  // namespace quadland
