#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltlnrm/core/matrix.hpp"
#include "ltlnrm/nrm/grounder.hpp"
#include "ltlnrm/nrm/params.hpp"

namespace ltlnrm::nrm {

/// Intermediates of one forward pass, one row per time step.
struct ForwardPass {
  Matrix symbol_probs;  // steps x |P|; row 0 is computed but not consumed
  Matrix state_probs;   // steps x |Q|
  Matrix reward_probs;  // steps x 3, columns (0, +1, -1)

  std::size_t steps() const noexcept { return state_probs.rows(); }
};

/// Runs the probabilistic machine on given symbol distributions:
/// q(0) = mu, q(t) = sum_j p(t)[j] * q(t-1) T[j], r(t) = q(t) R.
ForwardPass propagate(const NrmModel& model, const Matrix& symbol_probs);

/// Grounds every observation row and propagates. Throws
/// DimensionMismatchError when the grounder does not fit the observations
/// or the model.
ForwardPass forward(const NrmModel& model, const Grounder& grounder, const Matrix& observations);

inline constexpr double kProbabilityFloor = 1e-12;

/// Mean over steps of -log(max(r(t)[target(t)], 1e-12)); targets are
/// rewards in {-1, 0, +1}. Throws DimensionMismatchError on length mismatch.
double loss(const Matrix& reward_probs, std::span<const int> targets);

struct GrounderGradient {
  Matrix weights;
  std::vector<double> bias;
  double loss = 0.0;

  GrounderGradient() = default;
  GrounderGradient(std::size_t feature_dim, std::size_t num_symbols)
      : weights(feature_dim, num_symbols), bias(num_symbols, 0.0) {}

  /// this += scale * other (loss included).
  void add(const GrounderGradient& other, double scale = 1.0);
};

/// Reverse-mode gradient of loss(forward(...)) with respect to the grounder
/// weights and bias. The machine parameters are constants.
GrounderGradient backward(const NrmModel& model, const Grounder& grounder, const Matrix& observations,
                          std::span<const int> targets, const ForwardPass& pass);

GrounderGradient loss_and_gradient(const NrmModel& model, const Grounder& grounder, const Matrix& observations,
                                   std::span<const int> targets);

}  // namespace ltlnrm::nrm
