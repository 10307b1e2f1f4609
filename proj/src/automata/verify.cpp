#include "ltlnrm/automata/verify.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ltlnrm/ltl/progression.hpp"

namespace ltlnrm::automata {
namespace {

class ProgressionCache {
 public:
  explicit ProgressionCache(const Alphabet& alphabet) : alphabet_(alphabet) {}

  const ltl::Formula& step(const ltl::Formula& f, SymbolId p) {
    auto& row = table_[f];
    if (row.empty()) row.resize(alphabet_.size());
    if (!row[p]) row[p] = ltl::progress(f, p, alphabet_);
    return *row[p];
  }

 private:
  const Alphabet& alphabet_;
  std::unordered_map<ltl::Formula, std::vector<std::optional<ltl::Formula>>> table_;
};

}  // namespace

std::string Disagreement::describe(const Alphabet& alphabet) const {
  std::string out = "trace [";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(trace[i]);
  }
  out += "]: expected " + std::to_string(expected) + ", machine gave " + std::to_string(actual);
  return out;
}

std::optional<Disagreement> verify_against_progression(const ltl::Formula& f, const MooreMachine& m) {
  const Alphabet& alphabet = m.alphabet();
  ProgressionCache cache(alphabet);
  struct Pair {
    ltl::Formula formula;
    StateId state;
    std::vector<SymbolId> trace;
  };
  std::unordered_map<ltl::Formula, std::unordered_set<StateId>> seen;
  std::deque<Pair> queue;
  const ltl::Formula start = ltl::canonicalize(f);
  queue.push_back({start, m.initial(), {}});
  seen[start].insert(m.initial());
  while (!queue.empty()) {
    Pair cur = std::move(queue.front());
    queue.pop_front();
    const int expected = ltl::progression_verdict(cur.formula);
    const int actual = m.output(cur.state);
    if (expected != actual) return Disagreement{cur.trace, expected, actual};
    if (expected != 0) continue;
    for (SymbolId p = 0; p < alphabet.size(); ++p) {
      const ltl::Formula& nf = cache.step(cur.formula, p);
      const StateId nq = m.next(cur.state, p);
      if (seen[nf].insert(nq).second) {
        auto trace = cur.trace;
        trace.push_back(p);
        queue.push_back({nf, nq, std::move(trace)});
      }
    }
  }
  return std::nullopt;
}

std::optional<Disagreement> verify_traces(const ltl::Formula& f, const MooreMachine& m, std::size_t max_length) {
  const Alphabet& alphabet = m.alphabet();
  ProgressionCache cache(alphabet);
  std::vector<SymbolId> trace;
  std::optional<Disagreement> failure;

  auto visit = [&](auto&& self, const ltl::Formula& phi, StateId q) -> void {
    const int expected = ltl::progression_verdict(phi);
    const int actual = m.output(q);
    if (expected != actual) {
      failure = Disagreement{trace, expected, actual};
      return;
    }
    if (expected != 0 || trace.size() == max_length) return;
    for (SymbolId p = 0; p < alphabet.size() && !failure; ++p) {
      trace.push_back(p);
      self(self, cache.step(phi, p), m.next(q, p));
      trace.pop_back();
    }
  };
  visit(visit, ltl::canonicalize(f), m.initial());
  return failure;
}

std::optional<Disagreement> compare_machines(const MooreMachine& a, const MooreMachine& b, std::size_t max_length) {
  if (!(a.alphabet() == b.alphabet())) throw std::invalid_argument("machines have different alphabets");
  std::vector<SymbolId> trace;
  std::optional<Disagreement> failure;
  auto visit = [&](auto&& self, StateId qa, StateId qb) -> void {
    if (a.output(qa) != b.output(qb)) {
      failure = Disagreement{trace, a.output(qa), b.output(qb)};
      return;
    }
    if (a.output(qa) != 0 || trace.size() == max_length) return;
    for (SymbolId p = 0; p < a.num_symbols() && !failure; ++p) {
      trace.push_back(p);
      self(self, a.next(qa, p), b.next(qb, p));
      trace.pop_back();
    }
  };
  visit(visit, a.initial(), b.initial());
  return failure;
}

}  // namespace ltlnrm::automata
