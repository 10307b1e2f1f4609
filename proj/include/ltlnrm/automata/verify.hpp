#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ltlnrm/automata/moore_machine.hpp"
#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::automata {

struct Disagreement {
  std::vector<SymbolId> trace;
  int expected = 0;
  int actual = 0;

  std::string describe(const Alphabet& alphabet) const;
};

/// Checks that the machine's output after every trace equals the verdict
/// of iterated progression, for traces of every length, by exploring the
/// reachable pairs (progressed formula, machine state). Exploration stops
/// at the first non-zero verdict on a branch, mirroring `run`.
std::optional<Disagreement> verify_against_progression(const ltl::Formula& f, const MooreMachine& m);

/// Same check by exhaustive enumeration of every trace of length
/// <= max_length, comparing at every step.
std::optional<Disagreement> verify_traces(const ltl::Formula& f, const MooreMachine& m, std::size_t max_length);

/// Compares the output sequences of two machines over the same alphabet on
/// every trace of length <= max_length.
std::optional<Disagreement> compare_machines(const MooreMachine& a, const MooreMachine& b, std::size_t max_length);

}  // namespace ltlnrm::automata
