#include "ltlnrm/ltl/progression.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ltlnrm::ltl {
namespace {

Formula prog(const Formula& f, SymbolId sigma) {
  const auto kids = f.children();
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      return f.symbol().id == sigma ? Formula::top() : Formula::bottom();
    case Op::Not:
      return make_not(prog(kids[0], sigma));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> ops;
      ops.reserve(kids.size());
      for (const auto& c : kids) ops.push_back(prog(c, sigma));
      return f.op() == Op::And ? make_and(std::move(ops)) : make_or(std::move(ops));
    }
    case Op::Next:
      return kids[0];
    case Op::Until:
      return make_or({prog(kids[1], sigma), make_and({prog(kids[0], sigma), f})});
    case Op::Eventually:
    case Op::Globally:
      return prog(canonicalize(f), sigma);
  }
  return f;
}

}  // namespace

Formula progress(const Formula& f, SymbolId sigma, const Alphabet& alphabet) {
  if (!alphabet.contains(sigma)) {
    throw std::out_of_range("symbol id " + std::to_string(sigma) + " outside alphabet");
  }
  return prog(f, sigma);
}

Formula progress_trace(const Formula& f, std::span<const SymbolId> trace, const Alphabet& alphabet) {
  Formula cur = f;
  for (SymbolId s : trace) {
    if (cur.is_true() || cur.is_false()) break;
    cur = progress(cur, s, alphabet);
  }
  return cur;
}

int progression_verdict(const Formula& f) noexcept {
  if (f.is_true()) return 1;
  if (f.is_false()) return -1;
  return 0;
}

}  // namespace ltlnrm::ltl
