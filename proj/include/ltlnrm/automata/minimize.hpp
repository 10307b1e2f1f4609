#pragma once

#include <cstdint>
#include <vector>

#include "ltlnrm/automata/moore_machine.hpp"

namespace ltlnrm::automata {

/// Minimal equivalent machine: unreachable states are dropped, then
/// Hopcroft partition refinement starting from the partition by output.
/// States of the result are numbered in breadth-first order from the
/// initial state (symbols visited in id order), so two machines with the
/// same output behaviour minimize to identical objects.
MooreMachine minimize(const MooreMachine& m);

/// Same machine with `start` as its initial state, restricted to the
/// states reachable from it and renumbered canonically.
MooreMachine restrict_to(const MooreMachine& m, StateId start);

/// For each state q of a minimal machine, the structural hash of
/// `restrict_to(m, q)`. States of different machines with the same
/// future output behaviour get the same id; the id of the initial state
/// equals `m.structural_hash()` when `m` is minimal.
std::vector<std::uint64_t> residual_ids(const MooreMachine& m);

}  // namespace ltlnrm::automata
