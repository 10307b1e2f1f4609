#include "ltlnrm/nrm/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltlnrm/core/error.hpp"

namespace ltlnrm::nrm {

std::size_t reward_column(int reward) {
  switch (reward) {
    case 0: return 0;
    case 1: return 1;
    case -1: return 2;
    default: throw std::invalid_argument("reward must be -1, 0 or +1");
  }
}

int reward_of_column(std::size_t column) {
  static constexpr int kValues[kRewardCount] = {0, 1, -1};
  if (column >= kRewardCount) throw std::out_of_range("reward column out of range");
  return kValues[column];
}

NrmParams init_from_machine(const automata::MooreMachine& m, double tau, double magnitude) {
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (!(magnitude >= 0.0)) throw std::invalid_argument("initialization magnitude must be non-negative");
  const std::size_t Q = m.num_states();
  const std::size_t P = m.num_symbols();
  NrmParams params;
  params.num_states = Q;
  params.num_symbols = P;
  params.tau = tau;
  params.theta_mu.assign(Q, 0.0);
  params.theta_T.assign(P * Q * Q, 0.0);
  params.theta_R.assign(Q * kRewardCount, 0.0);
  params.theta_mu[m.initial()] = magnitude;
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t q = 0; q < Q; ++q) {
      const auto target = m.next(static_cast<automata::StateId>(q), static_cast<automata::SymbolId>(p));
      params.theta_T[(p * Q + q) * Q + target] = magnitude;
    }
  }
  for (std::size_t q = 0; q < Q; ++q) {
    params.theta_R[q * kRewardCount + reward_column(m.output(static_cast<automata::StateId>(q)))] = magnitude;
  }
  return params;
}

void softmax(std::span<const double> logits, double tau, std::span<double> out) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp((logits[i] - peak) / tau);
    total += out[i];
  }
  for (auto& v : out) v /= total;
}

NrmModel::NrmModel(const NrmParams& params)
    : num_states_(params.num_states),
      num_symbols_(params.num_symbols),
      mu_(params.num_states),
      T_(params.theta_T.size()),
      R_(params.theta_R.size()) {
  const std::size_t Q = num_states_;
  if (Q == 0 || params.theta_mu.size() != Q || params.theta_T.size() != num_symbols_ * Q * Q ||
      params.theta_R.size() != Q * kRewardCount) {
    throw DimensionMismatchError("NRM parameter shapes are inconsistent");
  }
  if (!(params.tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  softmax(params.theta_mu, params.tau, mu_);
  for (std::size_t row = 0; row < num_symbols_ * Q; ++row) {
    softmax(std::span<const double>(params.theta_T).subspan(row * Q, Q), params.tau,
            std::span<double>(T_).subspan(row * Q, Q));
  }
  for (std::size_t q = 0; q < Q; ++q) {
    softmax(std::span<const double>(params.theta_R).subspan(q * kRewardCount, kRewardCount), params.tau,
            std::span<double>(R_).subspan(q * kRewardCount, kRewardCount));
  }
}

}  // namespace ltlnrm::nrm
