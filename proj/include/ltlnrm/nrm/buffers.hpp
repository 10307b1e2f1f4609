#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <vector>

#include "ltlnrm/automata/compile.hpp"
#include "ltlnrm/core/matrix.hpp"

namespace ltlnrm::nrm {

using automata::TaskPtr;
using ltl::SymbolId;

/// One reward-labeled episode. Row t of `observations` is s(t); the symbol
/// of s(0) is recorded but never consumed by the machine.
struct Episode {
  std::uint64_t id = 0;
  Matrix observations;                     // steps x feature_dim
  std::vector<int> rewards;                // oracle rewards r(0)..r(t)
  std::vector<SymbolId> oracle_symbols;    // diagnostics only
  std::vector<SymbolId> grounder_symbols;  // argmax of the grounder at collection time
  TaskPtr task;

  std::size_t steps() const noexcept { return rewards.size(); }
};

using EpisodePtr = std::shared_ptr<const Episode>;

/// An episode carries signal iff a true reward is non-zero, or the
/// grounder-driven progression terminated while the true reward stayed 0.
bool is_informative(std::span<const int> rewards, bool grounder_progression_terminal);

/// Replays the recorded grounder symbols through the task machine.
bool is_informative(const Episode& episode);

/// Grounder-training hyperparameters.
struct GrounderProfile {
  double learning_rate = 0.001;
  std::size_t train_capacity = 2048;
  std::size_t validation_capacity = 512;
  std::size_t batch_size = 16;
  std::size_t accumulation = 4;
  std::size_t update_steps = 64;  // mini-batches per round
  std::size_t patience = 250;     // rounds without validation improvement
  std::size_t validation_every = 5;  // every n-th accepted episode goes to validation
  double tau = 1.0;
  double init_magnitude = 10.0;

  static GrounderProfile gridworld();
  static GrounderProfile flatworld();
};

/// FIFO train and validation buffers holding only informative episodes.
class ReplayBuffers {
 public:
  explicit ReplayBuffers(const GrounderProfile& profile = {});

  /// Stores the episode if informative and reports whether it was kept.
  bool offer(Episode episode);
  /// Stores without filtering.
  void add(EpisodePtr episode);

  const std::deque<EpisodePtr>& train() const noexcept { return train_; }
  const std::deque<EpisodePtr>& validation() const noexcept { return validation_; }
  std::uint64_t accepted() const noexcept { return accepted_; }

 private:
  std::size_t train_capacity_;
  std::size_t validation_capacity_;
  std::size_t validation_every_;
  std::deque<EpisodePtr> train_;
  std::deque<EpisodePtr> validation_;
  std::uint64_t accepted_ = 0;
};

}  // namespace ltlnrm::nrm
