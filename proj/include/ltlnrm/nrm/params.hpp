#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltlnrm/automata/moore_machine.hpp"

namespace ltlnrm::nrm {

/// Reward support of the probabilistic machine. Columns are ordered
/// (0, +1, -1) in every reward distribution and serialized form.
inline constexpr std::size_t kRewardCount = 3;

std::size_t reward_column(int reward);
int reward_of_column(std::size_t column);

/// Learnable logits of a neural reward machine.
struct NrmParams {
  std::size_t num_states = 0;
  std::size_t num_symbols = 0;
  double tau = 1.0;
  std::vector<double> theta_mu;  // [q]
  std::vector<double> theta_T;   // [p][q][q'] flattened as (p * Q + q) * Q + q'
  std::vector<double> theta_R;   // [q][r] flattened as q * 3 + r

  friend bool operator==(const NrmParams&, const NrmParams&) = default;
};

/// Encodes a deterministic machine: logits are `magnitude` where the
/// machine's initial state, transitions and outputs point and 0 elsewhere.
/// Throws std::invalid_argument unless magnitude >= 0 and tau > 0.
NrmParams init_from_machine(const automata::MooreMachine& m, double tau = 1.0, double magnitude = 10.0);

/// Numerically stable softmax(logits / tau).
void softmax(std::span<const double> logits, double tau, std::span<double> out);

/// Stochastic matrices derived from NrmParams: mu = softmax(theta_mu / tau),
/// T[p][q] and R[q] are row-wise softmaxes.
class NrmModel {
 public:
  explicit NrmModel(const NrmParams& params);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_symbols() const noexcept { return num_symbols_; }

  std::span<const double> initial() const noexcept { return mu_; }
  std::span<const double> transition_row(std::size_t p, std::size_t q) const noexcept {
    return {T_.data() + (p * num_states_ + q) * num_states_, num_states_};
  }
  std::span<const double> reward_row(std::size_t q) const noexcept { return {R_.data() + q * kRewardCount, kRewardCount}; }

 private:
  std::size_t num_states_;
  std::size_t num_symbols_;
  std::vector<double> mu_;
  std::vector<double> T_;
  std::vector<double> R_;
};

}  // namespace ltlnrm::nrm
