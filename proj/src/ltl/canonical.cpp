#include <algorithm>

#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::ltl {
namespace {

// Operand set of `f` viewed as a `kind` node: its children when it is one,
// otherwise the singleton {f}.
std::span<const Formula> operand_set(const Formula& f, Op kind) {
  if (f.op() == kind) return f.children();
  return {&f, 1};
}

// Shared body of make_and / make_or. `kind` is the connective, `unit` its
// identity element and `zero` its absorbing element.
Formula make_junction(std::vector<Formula> operands, Op kind) {
  const Op unit = kind == Op::And ? Op::True : Op::False;
  const Op zero = kind == Op::And ? Op::False : Op::True;
  const Op dual = kind == Op::And ? Op::Or : Op::And;

  std::vector<Formula> flat;
  flat.reserve(operands.size());
  for (auto& f : operands) {
    if (f.op() == zero) return f;
    if (f.op() == unit) continue;
    if (f.op() == kind) {
      for (const auto& c : f.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(f));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());

  // Absorption: x & (x | y) -> x, generalised to operand-set inclusion.
  std::vector<bool> absorbed(flat.size(), false);
  for (std::size_t j = 0; j < flat.size(); ++j) {
    if (flat[j].op() != dual) continue;
    const auto big = flat[j].children();
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (i == j || absorbed[i]) continue;
      const auto small = operand_set(flat[i], dual);
      if (small.size() < big.size() && std::includes(big.begin(), big.end(), small.begin(), small.end())) {
        absorbed[j] = true;
        break;
      }
    }
  }
  std::vector<Formula> kept;
  kept.reserve(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!absorbed[i]) kept.push_back(std::move(flat[i]));
  }

  if (kept.empty()) return unit == Op::True ? Formula::top() : Formula::bottom();
  if (kept.size() == 1) return std::move(kept.front());
  return kind == Op::And ? Formula::conjunction(std::move(kept)) : Formula::disjunction(std::move(kept));
}

}  // namespace

Formula make_not(Formula operand) {
  switch (operand.op()) {
    case Op::True:
      return Formula::bottom();
    case Op::False:
      return Formula::top();
    case Op::Not:
      return operand.operand();
    default:
      return Formula::negation(std::move(operand));
  }
}

Formula make_and(std::vector<Formula> operands) { return make_junction(std::move(operands), Op::And); }
Formula make_or(std::vector<Formula> operands) { return make_junction(std::move(operands), Op::Or); }

Formula make_next(Formula operand) {
  if (operand.is_true() || operand.is_false()) return operand;
  return Formula::next(std::move(operand));
}

Formula make_until(Formula lhs, Formula rhs) {
  if (rhs.is_true() || rhs.is_false()) return rhs;
  if (lhs.is_false()) return rhs;
  if (lhs == rhs) return lhs;
  return Formula::until(std::move(lhs), std::move(rhs));
}

Formula make_eventually(Formula operand) { return make_until(Formula::top(), std::move(operand)); }

Formula make_globally(Formula operand) {
  return make_not(make_eventually(make_not(std::move(operand))));
}

Formula canonicalize(const Formula& f) {
  const auto kids = f.children();
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::Not:
      return make_not(canonicalize(kids[0]));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> ops;
      ops.reserve(kids.size());
      for (const auto& c : kids) ops.push_back(canonicalize(c));
      return f.op() == Op::And ? make_and(std::move(ops)) : make_or(std::move(ops));
    }
    case Op::Next:
      return make_next(canonicalize(kids[0]));
    case Op::Until:
      return make_until(canonicalize(kids[0]), canonicalize(kids[1]));
    case Op::Eventually:
      return make_eventually(canonicalize(kids[0]));
    case Op::Globally:
      return make_globally(canonicalize(kids[0]));
  }
  return f;
}

bool is_canonical(const Formula& f) { return canonicalize(f) == f; }

namespace {

bool cosafe_with_polarity(const Formula& f, bool positive) {
  const auto kids = f.children();
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return cosafe_with_polarity(kids[0], !positive);
    case Op::And:
    case Op::Or:
      return std::all_of(kids.begin(), kids.end(),
                         [&](const Formula& c) { return cosafe_with_polarity(c, positive); });
    case Op::Next:
      return cosafe_with_polarity(kids[0], positive);
    case Op::Until:
      // A negated Until is a Release in negation normal form.
      return positive && cosafe_with_polarity(kids[0], true) && cosafe_with_polarity(kids[1], true);
    case Op::Eventually:
      return positive && cosafe_with_polarity(kids[0], true);
    case Op::Globally:
      // !G x == F !x
      return !positive && cosafe_with_polarity(kids[0], false);
  }
  return false;
}

}  // namespace

bool is_syntactically_cosafe(const Formula& f) { return cosafe_with_polarity(f, true); }

}  // namespace ltlnrm::ltl
