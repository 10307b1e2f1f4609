#include "ltlnrm/nrm/forward.hpp"

#include <cmath>

#include "ltlnrm/core/error.hpp"

namespace ltlnrm::nrm {

ForwardPass propagate(const NrmModel& model, const Matrix& symbol_probs) {
  const std::size_t steps = symbol_probs.rows();
  const std::size_t Q = model.num_states();
  const std::size_t P = model.num_symbols();
  if (steps == 0) throw DimensionMismatchError("empty observation sequence");
  if (symbol_probs.cols() != P) throw DimensionMismatchError("symbol distribution width does not match the machine");

  ForwardPass pass{symbol_probs, Matrix(steps, Q), Matrix(steps, kRewardCount)};
  const auto mu = model.initial();
  std::copy(mu.begin(), mu.end(), pass.state_probs.row(0).begin());
  for (std::size_t t = 1; t < steps; ++t) {
    const auto prev = pass.state_probs.row(t - 1);
    const auto p = symbol_probs.row(t);
    auto cur = pass.state_probs.row(t);
    for (std::size_t j = 0; j < P; ++j) {
      if (p[j] == 0.0) continue;
      for (std::size_t i = 0; i < Q; ++i) {
        const double w = p[j] * prev[i];
        if (w == 0.0) continue;
        const auto row = model.transition_row(j, i);
        for (std::size_t k = 0; k < Q; ++k) cur[k] += w * row[k];
      }
    }
  }
  for (std::size_t t = 0; t < steps; ++t) {
    const auto q = pass.state_probs.row(t);
    auto r = pass.reward_probs.row(t);
    for (std::size_t i = 0; i < Q; ++i) {
      const auto row = model.reward_row(i);
      for (std::size_t k = 0; k < kRewardCount; ++k) r[k] += q[i] * row[k];
    }
  }
  return pass;
}

ForwardPass forward(const NrmModel& model, const Grounder& grounder, const Matrix& observations) {
  if (grounder.num_symbols() != model.num_symbols()) {
    throw DimensionMismatchError("grounder alphabet size does not match the machine");
  }
  if (observations.cols() != grounder.feature_dim()) {
    throw DimensionMismatchError("observation feature size does not match the grounder");
  }
  Matrix symbols(observations.rows(), grounder.num_symbols());
  for (std::size_t t = 0; t < observations.rows(); ++t) grounder.predict(observations.row(t), symbols.row(t));
  return propagate(model, symbols);
}

double loss(const Matrix& reward_probs, std::span<const int> targets) {
  if (reward_probs.rows() != targets.size() || targets.empty()) {
    throw DimensionMismatchError("prediction and target lengths differ");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    total -= std::log(std::max(reward_probs(t, reward_column(targets[t])), kProbabilityFloor));
  }
  return total / static_cast<double>(targets.size());
}

void GrounderGradient::add(const GrounderGradient& other, double scale) {
  if (weights.rows() != other.weights.rows() || bias.size() != other.bias.size()) {
    throw DimensionMismatchError("gradient shapes differ");
  }
  auto dst = weights.data();
  const auto src = other.weights.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
  for (std::size_t j = 0; j < bias.size(); ++j) bias[j] += scale * other.bias[j];
  loss += scale * other.loss;
}

GrounderGradient backward(const NrmModel& model, const Grounder& grounder, const Matrix& observations,
                          std::span<const int> targets, const ForwardPass& pass) {
  const std::size_t steps = pass.steps();
  const std::size_t Q = model.num_states();
  const std::size_t P = model.num_symbols();
  if (observations.rows() != steps || targets.size() != steps) {
    throw DimensionMismatchError("episode lengths are inconsistent");
  }
  GrounderGradient grad(grounder.feature_dim(), P);
  grad.loss = loss(pass.reward_probs, targets);
  const double inv_n = 1.0 / static_cast<double>(steps);

  std::vector<double> g_q(Q, 0.0);       // dL/dq(t), carried backwards
  std::vector<double> g_prev(Q, 0.0);    // dL/dq(t-1) contribution through q(t)
  std::vector<double> g_p(P, 0.0);
  std::vector<double> g_z(P, 0.0);

  for (std::size_t t = steps; t-- > 0;) {
    // Reward head: r(t) = q(t) R.
    const std::size_t y = reward_column(targets[t]);
    const double r_y = pass.reward_probs(t, y);
    if (r_y > kProbabilityFloor) {
      const double g_r = -inv_n / r_y;
      for (std::size_t i = 0; i < Q; ++i) g_q[i] += model.reward_row(i)[y] * g_r;
    }
    if (t == 0) break;

    // Transition: q(t) = sum_j p(t)[j] q(t-1) T[j].
    const auto q_prev = pass.state_probs.row(t - 1);
    const auto p = pass.symbol_probs.row(t);
    std::fill(g_prev.begin(), g_prev.end(), 0.0);
    for (std::size_t j = 0; j < P; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < Q; ++i) {
        const auto row = model.transition_row(j, i);
        double s = 0.0;
        for (std::size_t k = 0; k < Q; ++k) s += row[k] * g_q[k];
        dot += q_prev[i] * s;
        g_prev[i] += p[j] * s;
      }
      g_p[j] = dot;
    }

    // Softmax grounder: p = softmax(z), z = W^T s + b.
    double pg = 0.0;
    for (std::size_t j = 0; j < P; ++j) pg += p[j] * g_p[j];
    for (std::size_t j = 0; j < P; ++j) g_z[j] = p[j] * (g_p[j] - pg);
    const auto s = observations.row(t);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 0.0) continue;
      auto row = grad.weights.row(i);
      for (std::size_t j = 0; j < P; ++j) row[j] += s[i] * g_z[j];
    }
    for (std::size_t j = 0; j < P; ++j) grad.bias[j] += g_z[j];

    g_q.swap(g_prev);
  }
  return grad;
}

GrounderGradient loss_and_gradient(const NrmModel& model, const Grounder& grounder, const Matrix& observations,
                                   std::span<const int> targets) {
  return backward(model, grounder, observations, targets, forward(model, grounder, observations));
}

}  // namespace ltlnrm::nrm
