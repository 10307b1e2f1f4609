#include "ltlnrm/automata/moore_machine.hpp"

#include <sstream>
#include <stdexcept>

#include "ltlnrm/core/rng.hpp"

namespace ltlnrm::automata {

MooreMachine::MooreMachine(Alphabet alphabet, StateId initial, std::vector<StateId> transitions,
                           std::vector<Output> outputs)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      transitions_(std::move(transitions)),
      outputs_(std::move(outputs)) {
  const std::size_t n = outputs_.size();
  if (n == 0) throw std::invalid_argument("machine needs at least one state");
  if (transitions_.size() != n * alphabet_.size()) {
    throw std::invalid_argument("transition table size does not match states x symbols");
  }
  if (initial_ >= n) throw std::invalid_argument("initial state out of range");
  for (StateId t : transitions_) {
    if (t >= n) throw std::invalid_argument("transition target out of range");
  }
  for (Output o : outputs_) {
    if (o < -1 || o > 1) throw std::invalid_argument("output must be -1, 0 or +1");
  }
}

std::vector<StateId> MooreMachine::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < num_states(); ++q) {
    if (is_final(q)) out.push_back(q);
  }
  return out;
}

std::vector<StateId> MooreMachine::deads() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < num_states(); ++q) {
    if (is_dead(q)) out.push_back(q);
  }
  return out;
}

std::uint64_t MooreMachine::structural_hash() const noexcept {
  std::uint64_t h = fnv1a(alphabet_.to_list());
  auto mix = [&h](std::uint64_t v) { h = splitmix64(h ^ v); };
  mix(num_states());
  mix(initial_);
  for (StateId t : transitions_) mix(t);
  for (Output o : outputs_) mix(static_cast<std::uint64_t>(o + 2));
  return h;
}

std::optional<std::string> check_invariants(const MooreMachine& m) {
  const std::size_t n = m.num_states();
  const std::size_t k = m.num_symbols();
  for (StateId q = 0; q < n; ++q) {
    if (m.output(q) == 0) continue;
    for (SymbolId p = 0; p < k; ++p) {
      if (m.next(q, p) != q) {
        return "terminal state " + std::to_string(q) + " is not absorbing";
      }
    }
  }
  // Backward reachability from finals.
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q) {
    for (SymbolId p = 0; p < k; ++p) preds[m.next(q, p)].push_back(q);
  }
  std::vector<bool> live(n, false);
  std::vector<StateId> stack = m.finals();
  for (StateId f : stack) live[f] = true;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (StateId r : preds[q]) {
      if (!live[r]) {
        live[r] = true;
        stack.push_back(r);
      }
    }
  }
  for (StateId q = 0; q < n; ++q) {
    if (m.output(q) == 0 && !live[q]) return "state " + std::to_string(q) + " has output 0 but cannot reach a final state";
    if (m.output(q) < 0 && live[q] && !m.is_final(q)) return "dead state " + std::to_string(q) + " reaches a final state";
  }
  return std::nullopt;
}

TraceRun run(const MooreMachine& m, std::span<const SymbolId> trace) {
  TraceRun r;
  StateId q = m.initial();
  r.states.push_back(q);
  r.outputs.push_back(m.output(q));
  if (m.output(q) != 0) {
    r.terminated_at = 0;
    return r;
  }
  for (SymbolId p : trace) {
    q = m.next(q, p);
    r.states.push_back(q);
    r.outputs.push_back(m.output(q));
    if (m.output(q) != 0) {
      r.terminated_at = r.outputs.size() - 1;
      break;
    }
  }
  return r;
}

Output reward(const MooreMachine& m, std::span<const SymbolId> trace) { return run(m, trace).outputs.back(); }

StateId delta_star(const MooreMachine& m, StateId from, std::span<const SymbolId> trace) {
  for (SymbolId p : trace) from = m.next(from, p);
  return from;
}

std::string to_dot(const MooreMachine& m, std::span<const std::string> captions) {
  std::ostringstream out;
  out << "digraph moore {\n  rankdir=LR;\n";
  for (StateId q = 0; q < m.num_states(); ++q) {
    const int o = m.output(q);
    out << "  q" << q << " [label=\"q" << q << " / " << (o > 0 ? "+1" : o < 0 ? "-1" : "0");
    if (q < captions.size() && !captions[q].empty()) out << "\\n" << captions[q];
    out << "\"" << (o > 0 ? ", shape=doublecircle" : o < 0 ? ", shape=box" : ", shape=circle");
    if (q == m.initial()) out << ", style=bold";
    out << "];\n";
  }
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (SymbolId p = 0; p < m.num_symbols(); ++p) {
      out << "  q" << q << " -> q" << m.next(q, p) << " [label=\"" << m.alphabet().name(p) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ltlnrm::automata
