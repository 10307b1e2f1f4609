#include "semantics.hpp"

#include <algorithm>

namespace ltlnrm::oracle {

namespace {

using ltl::Formula;
using ltl::Op;

bool holds(const Formula& f, std::span<const ltl::SymbolId> u, std::size_t i, bool strong);

// x U y from position i.
bool until_holds(const Formula& x, const Formula& y, std::span<const ltl::SymbolId> u, std::size_t i, bool strong) {
  for (std::size_t j = i; j < u.size(); ++j) {
    if (holds(y, u, j, strong)) return true;
    if (!holds(x, u, j, strong)) return false;
  }
  return strong ? false : holds(y, u, u.size(), false);
}

bool holds(const Formula& f, std::span<const ltl::SymbolId> u, std::size_t i, bool strong) {
  const bool beyond = i >= u.size();
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return beyond ? !strong : u[i] == f.symbol().id;
    case Op::Not: return !holds(f.operand(), u, i, !strong);
    case Op::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return holds(c, u, i, strong); });
    case Op::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return holds(c, u, i, strong); });
    case Op::Next: return beyond ? !strong : holds(f.operand(), u, i + 1, strong);
    case Op::Until: return until_holds(f.lhs(), f.rhs(), u, i, strong);
    case Op::Eventually: return until_holds(Formula::top(), f.operand(), u, i, strong);
    case Op::Globally: return !until_holds(Formula::top(), ltl::make_not(f.operand()), u, i, !strong);
  }
  return false;
}

}  // namespace

int semantic_verdict(const ltl::Formula& f, std::span<const ltl::SymbolId> prefix) {
  if (holds(f, prefix, 0, true)) return 1;
  if (!holds(f, prefix, 0, false)) return -1;
  return 0;
}

}  // namespace ltlnrm::oracle
