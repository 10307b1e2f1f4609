#pragma once

#include <memory>
#include <optional>

#include "ltlnrm/automata/compile.hpp"
#include "ltlnrm/env/environment.hpp"
#include "ltlnrm/nrm/grounder.hpp"

namespace ltlnrm::env {

using automata::StateId;
using automata::TaskPtr;

enum class LabelingMode { Oracle, Learned };

inline constexpr std::size_t kDefaultTimeout = 75;

struct StepInfo {
  SymbolId oracle_symbol = 0;
  std::optional<SymbolId> grounder_symbol;  // learned mode only
  StateId true_state = 0;
  StateId exposed_state = 0;
  bool timed_out = false;
};

struct StepResult {
  int reward = 0;
  bool done = false;
  StepInfo info;
};

/// Base environment plus a task. Rewards always follow the oracle labels
/// through the task machine; the automaton state shown to the agent
/// follows the oracle or the grounder argmax depending on the mode. The
/// label of the initial observation is not consumed.
class ProductEnv {
 public:
  /// `grounder` must outlive the environment; required in learned mode.
  ProductEnv(std::unique_ptr<Environment> base, LabelingMode mode, const nrm::Grounder* grounder = nullptr,
             std::size_t timeout = kDefaultTimeout);

  void set_task(TaskPtr task);
  /// Resets the base environment and returns r(0) = lambda(q0).
  int reset(std::uint64_t seed);
  /// Throws std::logic_error after the episode has ended.
  StepResult step(std::size_t action);

  Environment& base() noexcept { return *base_; }
  const Environment& base() const noexcept { return *base_; }
  const TaskPtr& task() const noexcept { return task_; }
  LabelingMode mode() const noexcept { return mode_; }
  std::size_t timeout() const noexcept { return timeout_; }
  std::size_t steps() const noexcept { return steps_; }
  bool done() const noexcept { return done_; }
  StateId true_state() const noexcept { return true_state_; }
  StateId exposed_state() const noexcept { return exposed_state_; }

 private:
  SymbolId grounder_symbol() const;

  std::unique_ptr<Environment> base_;
  LabelingMode mode_;
  const nrm::Grounder* grounder_;
  std::size_t timeout_;
  TaskPtr task_;
  StateId true_state_ = 0;
  StateId exposed_state_ = 0;
  std::size_t steps_ = 0;
  bool done_ = true;
  mutable std::vector<double> scratch_;
};

}  // namespace ltlnrm::env
