#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "ltlnrm/automata/moore_machine.hpp"
#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::automata {

/// Complete DFA over symbol indices with an explicit final set; the
/// intermediate form between progression expansion and the Moore machine.
struct Dfa {
  std::size_t num_symbols = 0;
  StateId initial = 0;
  std::vector<StateId> transitions;  // row-major, states x symbols
  std::vector<bool> finals;

  std::size_t num_states() const noexcept { return finals.size(); }
  StateId next(StateId q, SymbolId p) const noexcept { return transitions[q * num_symbols + p]; }
};

/// Non-final states from which no final state is reachable (the complement
/// of the live states), by backward reachability from the finals. Sorted.
std::vector<StateId> dead_states(const Dfa& dfa);

/// Progression closure of a formula: state i is `formulas[i]`, state 0 is
/// the input formula, `true` is the only final state and `false` (when
/// reachable) is an explicit sink.
struct Expansion {
  Dfa dfa;
  std::vector<ltl::Formula> formulas;
};

struct CompileOptions {
  std::size_t state_cap = 10'000;  // limit on expansion states, before minimization
  bool minimize = true;
};

/// Throws StateCapExceededError when the closure exceeds `state_cap`.
Expansion expand(const ltl::Formula& f, const Alphabet& alphabet, std::size_t state_cap = 10'000);

/// Assigns outputs (+1 finals, -1 dead states, 0 otherwise) and makes the
/// finals and dead states absorbing. State numbering is preserved.
MooreMachine to_moore(const Dfa& dfa, const Alphabet& alphabet);

/// Co-safe formula to minimal reward machine. Throws NotCoSafeError,
/// std::invalid_argument for atoms outside the alphabet, and
/// StateCapExceededError.
MooreMachine compile(const ltl::Formula& f, const Alphabet& alphabet, const CompileOptions& options = {});

/// A task formula together with its compiled machine.
struct Task {
  ltl::Formula formula;
  MooreMachine machine;
};

using TaskPtr = std::shared_ptr<const Task>;

TaskPtr compile_task(const ltl::Formula& f, const Alphabet& alphabet, const CompileOptions& options = {});

}  // namespace ltlnrm::automata
