#include "ltlnrm/nrm/buffers.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlnrm::nrm {

bool is_informative(std::span<const int> rewards, bool grounder_progression_terminal) {
  const bool rewarded = std::any_of(rewards.begin(), rewards.end(), [](int r) { return r != 0; });
  return rewarded || grounder_progression_terminal;
}

bool is_informative(const Episode& episode) {
  if (!episode.task) throw std::invalid_argument("episode has no task");
  bool terminal = false;
  if (!episode.grounder_symbols.empty()) {
    const auto& m = episode.task->machine;
    const auto consumed = std::span<const SymbolId>(episode.grounder_symbols).subspan(1);
    terminal = automata::run(m, consumed).terminated_at.has_value();
  }
  return is_informative(episode.rewards, terminal);
}

GrounderProfile GrounderProfile::gridworld() { return GrounderProfile{}; }

GrounderProfile GrounderProfile::flatworld() {
  GrounderProfile p;
  p.train_capacity = 8192;
  p.validation_capacity = 2048;
  p.accumulation = 8;
  p.update_steps = 128;
  p.patience = 4000;
  return p;
}

ReplayBuffers::ReplayBuffers(const GrounderProfile& profile)
    : train_capacity_(profile.train_capacity),
      validation_capacity_(profile.validation_capacity),
      validation_every_(profile.validation_every) {
  if (train_capacity_ == 0) throw std::invalid_argument("train buffer capacity must be positive");
}

bool ReplayBuffers::offer(Episode episode) {
  if (!is_informative(episode)) return false;
  add(std::make_shared<const Episode>(std::move(episode)));
  return true;
}

void ReplayBuffers::add(EpisodePtr episode) {
  ++accepted_;
  const bool to_validation = validation_capacity_ > 0 && validation_every_ > 0 && accepted_ % validation_every_ == 0;
  auto& buffer = to_validation ? validation_ : train_;
  const std::size_t capacity = to_validation ? validation_capacity_ : train_capacity_;
  buffer.push_back(std::move(episode));
  while (buffer.size() > capacity) buffer.pop_front();
}

}  // namespace ltlnrm::nrm
