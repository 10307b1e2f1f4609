#include "ltlnrm/ltl/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "ltlnrm/core/rng.hpp"

namespace ltlnrm::ltl {

struct Formula::Node {
  Op op;
  Symbol symbol;
  std::vector<Formula> children;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v) noexcept {
  return static_cast<std::size_t>(splitmix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2))));
}

std::size_t arity_of(Op op) {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
      return 1;
    case Op::Until:
      return 2;
    case Op::And:
    case Op::Or:
      return static_cast<std::size_t>(-1);
  }
  return 0;
}

}  // namespace

Formula Formula::make(Op op, Symbol symbol, std::vector<Formula> children) {
  const std::size_t arity = arity_of(op);
  if (arity != static_cast<std::size_t>(-1) && children.size() != arity) {
    throw std::invalid_argument("wrong number of operands for formula node");
  }
  std::size_t h = combine(static_cast<std::size_t>(op) + 1, op == Op::Atom ? symbol.id + 1 : 0);
  std::size_t size = 1;
  for (const auto& c : children) {
    h = combine(h, c.hash());
    size += c.size();
  }
  return Formula(std::make_shared<const Node>(Node{op, std::move(symbol), std::move(children), h, size}));
}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula t = make(Op::True, {}, {});
  return t;
}

Formula Formula::bottom() {
  static const Formula f = make(Op::False, {}, {});
  return f;
}

Formula Formula::atom(Symbol symbol) { return make(Op::Atom, std::move(symbol), {}); }
Formula Formula::negation(Formula operand) { return make(Op::Not, {}, {std::move(operand)}); }

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw std::invalid_argument("conjunction needs at least two operands");
  return make(Op::And, {}, std::move(operands));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw std::invalid_argument("disjunction needs at least two operands");
  return make(Op::Or, {}, std::move(operands));
}

Formula Formula::next(Formula operand) { return make(Op::Next, {}, {std::move(operand)}); }
Formula Formula::until(Formula lhs, Formula rhs) { return make(Op::Until, {}, {std::move(lhs), std::move(rhs)}); }
Formula Formula::eventually(Formula operand) { return make(Op::Eventually, {}, {std::move(operand)}); }
Formula Formula::globally(Formula operand) { return make(Op::Globally, {}, {std::move(operand)}); }

Op Formula::op() const noexcept { return node_->op; }
const Symbol& Formula::symbol() const noexcept { return node_->symbol; }
std::span<const Formula> Formula::children() const noexcept { return node_->children; }
std::size_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (a.op() == Op::Atom) {
    if (auto c = a.symbol().id <=> b.symbol().id; c != 0) return c;
    return a.symbol().name.compare(b.symbol().name) <=> 0;
  }
  const auto ac = a.children();
  const auto bc = b.children();
  if (auto c = ac.size() <=> bc.size(); c != 0) return c;
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (auto c = ac[i] <=> bc[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::set<SymbolId> atoms_of(const Formula& f) {
  std::set<SymbolId> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = std::move(stack.back());
    stack.pop_back();
    if (g.op() == Op::Atom) out.insert(g.symbol().id);
    for (const auto& c : g.children()) stack.push_back(c);
  }
  return out;
}

}  // namespace ltlnrm::ltl
