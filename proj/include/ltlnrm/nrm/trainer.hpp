#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ltlnrm/core/rng.hpp"
#include "ltlnrm/nrm/buffers.hpp"
#include "ltlnrm/nrm/forward.hpp"
#include "ltlnrm/nrm/grounder.hpp"

namespace ltlnrm::nrm {

struct TrainRound {
  std::size_t round = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double grounder_accuracy = 0.0;  // on validation steps, against oracle symbols
};

/// Adam over the grounder parameters.
class Adam {
 public:
  Adam(std::size_t feature_dim, std::size_t num_symbols, double learning_rate, double beta1 = 0.9,
       double beta2 = 0.999, double epsilon = 1e-8);
  void step(Grounder& g, const GrounderGradient& grad);

 private:
  double lr_, beta1_, beta2_, eps_;
  std::uint64_t t_ = 0;
  std::vector<double> m_, v_;
};

/// Trains a shared grounder through frozen per-task machines. Each round
/// draws `update_steps` mini-batches from the train buffer and applies one
/// optimizer step per `accumulation` mini-batches.
class GrounderTrainer {
 public:
  GrounderTrainer(Grounder initial, const GrounderProfile& profile, std::uint64_t seed);

  /// Throws std::invalid_argument when the train buffer is empty.
  TrainRound run_round(const ReplayBuffers& buffers);

  bool should_stop() const noexcept { return rounds_since_best_ >= profile_.patience; }
  const Grounder& grounder() const noexcept { return grounder_; }
  const Grounder& best() const noexcept { return best_; }
  double best_val_loss() const noexcept { return best_val_loss_; }
  std::size_t rounds() const noexcept { return rounds_; }

  /// Episode ids that contributed gradients / validation losses so far.
  const std::set<std::uint64_t>& trained_ids() const noexcept { return trained_ids_; }
  const std::set<std::uint64_t>& validated_ids() const noexcept { return validated_ids_; }

  /// Mean per-episode loss of `g` on `episodes`.
  double mean_loss(const Grounder& g, const std::deque<EpisodePtr>& episodes);

 private:
  const NrmModel& model_for(const TaskPtr& task);

  GrounderProfile profile_;
  Grounder grounder_;
  Grounder best_;
  Adam adam_;
  Rng rng_;
  std::size_t rounds_ = 0;
  std::size_t rounds_since_best_ = 0;
  double best_val_loss_;
  std::map<const automata::Task*, std::pair<TaskPtr, NrmModel>> models_;
  std::set<std::uint64_t> trained_ids_;
  std::set<std::uint64_t> validated_ids_;
};

/// Fraction of steps whose grounder argmax equals the oracle symbol.
double grounder_accuracy(const Grounder& g, const std::deque<EpisodePtr>& episodes);

struct TrainResult {
  Grounder grounder;  // best by validation loss
  std::vector<TrainRound> log;
  bool early_stopped = false;
};

/// Runs rounds until early stopping or `max_rounds`.
TrainResult train_grounder(const ReplayBuffers& buffers, Grounder initial, const GrounderProfile& profile,
                           std::size_t max_rounds, std::uint64_t seed);

/// CSV with header `round,train_loss,val_loss,grounder_accuracy`.
std::string training_log_csv(const std::vector<TrainRound>& rounds);

}  // namespace ltlnrm::nrm
