#include "ltlnrm/env/product_env.hpp"

#include <stdexcept>

namespace ltlnrm::env {

ProductEnv::ProductEnv(std::unique_ptr<Environment> base, LabelingMode mode, const nrm::Grounder* grounder,
                       std::size_t timeout)
    : base_(std::move(base)), mode_(mode), grounder_(grounder), timeout_(timeout) {
  if (!base_) throw std::invalid_argument("product environment needs a base environment");
  if (mode_ == LabelingMode::Learned && grounder_ == nullptr) {
    throw std::invalid_argument("learned labeling mode needs a grounder");
  }
  if (timeout_ == 0) throw std::invalid_argument("timeout must be positive");
}

void ProductEnv::set_task(TaskPtr task) {
  if (!task) throw std::invalid_argument("null task");
  if (!(task->machine.alphabet() == base_->alphabet())) {
    throw std::invalid_argument("task alphabet differs from the environment alphabet");
  }
  task_ = std::move(task);
  done_ = true;
}

int ProductEnv::reset(std::uint64_t seed) {
  if (!task_) throw std::logic_error("reset without a task");
  base_->reset(seed);
  const auto& m = task_->machine;
  true_state_ = exposed_state_ = m.initial();
  steps_ = 0;
  const int r0 = m.output(true_state_);
  done_ = r0 != 0;
  return r0;
}

SymbolId ProductEnv::grounder_symbol() const {
  scratch_.resize(base_->observation_dim());
  base_->observation(scratch_);
  return grounder_->argmax(scratch_);
}

StepResult ProductEnv::step(std::size_t action) {
  if (done_) throw std::logic_error("step after the episode ended");
  base_->step(action);
  ++steps_;
  const auto& m = task_->machine;
  StepResult r;
  r.info.oracle_symbol = base_->oracle_label();
  true_state_ = m.next(true_state_, r.info.oracle_symbol);
  if (mode_ == LabelingMode::Learned) {
    r.info.grounder_symbol = grounder_symbol();
    exposed_state_ = m.next(exposed_state_, *r.info.grounder_symbol);
  } else {
    exposed_state_ = true_state_;
  }
  r.reward = m.output(true_state_);
  r.info.timed_out = r.reward == 0 && steps_ >= timeout_;
  r.done = r.reward != 0 || r.info.timed_out;
  r.info.true_state = true_state_;
  r.info.exposed_state = exposed_state_;
  done_ = r.done;
  return r;
}

}  // namespace ltlnrm::env
