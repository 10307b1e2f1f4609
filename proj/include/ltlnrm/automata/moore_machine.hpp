#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltlnrm/ltl/alphabet.hpp"

namespace ltlnrm::automata {

using ltl::Alphabet;
using ltl::SymbolId;
using StateId = std::uint32_t;

/// Three-valued reward: +1 good prefix, -1 bad prefix, 0 undetermined.
using Output = std::int8_t;

/// Deterministic Moore machine with outputs in {+1, 0, -1}.
///
/// States with output +1 are the finals F and -1 the deads D. Machines
/// produced by `compile` additionally keep F and D absorbing and every
/// other state live; `check_invariants` reports violations of those
/// properties for hand-built machines.
class MooreMachine {
 public:
  /// `transitions` is row-major: entry `q * alphabet.size() + p`.
  /// Throws std::invalid_argument on inconsistent sizes or ids.
  MooreMachine(Alphabet alphabet, StateId initial, std::vector<StateId> transitions,
               std::vector<Output> outputs);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return outputs_.size(); }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }
  StateId initial() const noexcept { return initial_; }

  StateId next(StateId q, SymbolId p) const noexcept { return transitions_[q * num_symbols() + p]; }
  Output output(StateId q) const noexcept { return outputs_[q]; }
  bool is_final(StateId q) const noexcept { return outputs_[q] > 0; }
  bool is_dead(StateId q) const noexcept { return outputs_[q] < 0; }

  std::vector<StateId> finals() const;
  std::vector<StateId> deads() const;

  std::span<const StateId> transitions() const noexcept { return transitions_; }
  std::span<const Output> outputs() const noexcept { return outputs_; }

  /// Deterministic hash of alphabet, initial state, transitions and outputs.
  /// Equal for identical machines; `minimize` renumbers states canonically,
  /// so isomorphic minimal machines hash equally.
  std::uint64_t structural_hash() const noexcept;

  friend bool operator==(const MooreMachine&, const MooreMachine&) = default;

 private:
  Alphabet alphabet_;
  StateId initial_;
  std::vector<StateId> transitions_;
  std::vector<Output> outputs_;
};

/// Returns a description of the first violated well-formedness property
/// (absorbing finals/deads, live non-terminal states), or nullopt.
std::optional<std::string> check_invariants(const MooreMachine& m);

struct TraceRun {
  std::vector<StateId> states;    // q0, q1, ... visited via the extended transition
  std::vector<Output> outputs;    // lambda of each visited state
  std::optional<std::size_t> terminated_at;  // index of the first non-zero output
};

/// Applies the transition function stepwise and stops after the first
/// non-zero output. `outputs.size() == consumed symbols + 1`.
TraceRun run(const MooreMachine& m, std::span<const SymbolId> trace);

/// Last output of `run`: +1 iff the trace is a good prefix, -1 iff bad.
Output reward(const MooreMachine& m, std::span<const SymbolId> trace);

/// State reached after the whole trace, ignoring early termination.
StateId delta_star(const MooreMachine& m, StateId from, std::span<const SymbolId> trace);

/// Graphviz rendering: one node per state labeled with its output, one
/// edge per (state, symbol) pair. Optional per-state captions.
std::string to_dot(const MooreMachine& m, std::span<const std::string> captions = {});

}  // namespace ltlnrm::automata
