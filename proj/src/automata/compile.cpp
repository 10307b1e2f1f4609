#include "ltlnrm/automata/compile.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "ltlnrm/automata/minimize.hpp"
#include "ltlnrm/core/error.hpp"
#include "ltlnrm/ltl/progression.hpp"

namespace ltlnrm::automata {

std::vector<StateId> dead_states(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q) {
    for (SymbolId p = 0; p < dfa.num_symbols; ++p) preds[dfa.next(q, p)].push_back(q);
  }
  std::vector<bool> live(n, false);
  std::vector<StateId> stack;
  for (StateId q = 0; q < n; ++q) {
    if (dfa.finals[q]) {
      live[q] = true;
      stack.push_back(q);
    }
  }
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
  std::vector<StateId> dead;
  for (StateId q = 0; q < n; ++q) {
    if (!live[q]) dead.push_back(q);
  }
  return dead;
}

Expansion expand(const ltl::Formula& f, const Alphabet& alphabet, std::size_t state_cap) {
  const std::size_t k = alphabet.size();
  Expansion ex;
  ex.dfa.num_symbols = k;
  ex.dfa.initial = 0;

  std::unordered_map<ltl::Formula, StateId> index;
  std::deque<StateId> frontier;
  auto intern = [&](ltl::Formula g) -> StateId {
    auto [it, inserted] = index.try_emplace(g, static_cast<StateId>(ex.formulas.size()));
    if (inserted) {
      if (ex.formulas.size() >= state_cap) throw StateCapExceededError(state_cap, ltl::print(f));
      ex.formulas.push_back(std::move(g));
      frontier.push_back(it->second);
    }
    return it->second;
  };

  intern(f);
  while (!frontier.empty()) {
    const StateId q = frontier.front();
    frontier.pop_front();
    if (ex.dfa.transitions.size() < (q + 1) * k) ex.dfa.transitions.resize((q + 1) * k);
    const ltl::Formula current = ex.formulas[q];
    for (SymbolId p = 0; p < k; ++p) {
      const StateId target = intern(ltl::progress(current, p, alphabet));
      ex.dfa.transitions[q * k + p] = target;
    }
  }
  ex.dfa.transitions.resize(ex.formulas.size() * k);
  ex.dfa.finals.resize(ex.formulas.size());
  for (std::size_t i = 0; i < ex.formulas.size(); ++i) ex.dfa.finals[i] = ex.formulas[i].is_true();
  return ex;
}

namespace {

// Atoms carry both id and name; both must agree with the target alphabet.
void check_atoms(const ltl::Formula& f, const Alphabet& alphabet) {
  if (f.op() == ltl::Op::Atom) {
    const auto& s = f.symbol();
    if (!alphabet.contains(s.id) || alphabet.name(s.id) != s.name) {
      throw std::invalid_argument("formula atom '" + s.name + "' is not in the alphabet");
    }
  }
  for (const auto& c : f.children()) check_atoms(c, alphabet);
}

}  // namespace

MooreMachine to_moore(const Dfa& dfa, const Alphabet& alphabet) {
  if (dfa.num_symbols != alphabet.size()) throw std::invalid_argument("DFA and alphabet sizes differ");
  const std::size_t n = dfa.num_states();
  const std::size_t k = dfa.num_symbols;
  std::vector<Output> outputs(n, 0);
  for (StateId q = 0; q < n; ++q) {
    if (dfa.finals[q]) outputs[q] = 1;
  }
  for (StateId q : dead_states(dfa)) outputs[q] = -1;

  std::vector<StateId> transitions = dfa.transitions;
  for (StateId q = 0; q < n; ++q) {
    if (outputs[q] == 0) continue;
    for (SymbolId p = 0; p < k; ++p) transitions[q * k + p] = q;
  }
  return MooreMachine(alphabet, dfa.initial, std::move(transitions), std::move(outputs));
}

MooreMachine compile(const ltl::Formula& f, const Alphabet& alphabet, const CompileOptions& options) {
  if (!ltl::is_syntactically_cosafe(f)) {
    throw NotCoSafeError("formula is not syntactically co-safe: " + ltl::print(f));
  }
  check_atoms(f, alphabet);
  const ltl::Formula canonical = ltl::canonicalize(f);
  const Expansion ex = expand(canonical, alphabet, options.state_cap);
  MooreMachine m = to_moore(ex.dfa, alphabet);
  return options.minimize ? minimize(m) : m;
}

TaskPtr compile_task(const ltl::Formula& f, const Alphabet& alphabet, const CompileOptions& options) {
  return std::make_shared<const Task>(Task{f, compile(f, alphabet, options)});
}

}  // namespace ltlnrm::automata
