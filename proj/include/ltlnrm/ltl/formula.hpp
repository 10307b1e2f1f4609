#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ltlnrm/ltl/alphabet.hpp"

namespace ltlnrm::ltl {

enum class Op : std::uint8_t { True, False, Atom, Not, And, Or, Next, Until, Eventually, Globally };

/// Immutable LTL syntax tree with shared structure.
///
/// The static constructors below build trees verbatim. Canonical trees are
/// produced by `canonicalize` or the `make_*` smart constructors, which
/// never emit `Eventually`/`Globally` nodes (they desugar to Until).
class Formula {
 public:
  /// Default-constructed formulae are `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula atom(Symbol symbol);
  static Formula negation(Formula operand);
  static Formula conjunction(std::vector<Formula> operands);
  static Formula disjunction(std::vector<Formula> operands);
  static Formula next(Formula operand);
  static Formula until(Formula lhs, Formula rhs);
  static Formula eventually(Formula operand);
  static Formula globally(Formula operand);

  Op op() const noexcept;
  bool is_true() const noexcept { return op() == Op::True; }
  bool is_false() const noexcept { return op() == Op::False; }
  /// Atom payload; only meaningful when op() == Op::Atom.
  const Symbol& symbol() const noexcept;
  std::span<const Formula> children() const noexcept;
  const Formula& operand() const { return children().front(); }
  const Formula& lhs() const { return children()[0]; }
  const Formula& rhs() const { return children()[1]; }

  std::size_t hash() const noexcept;
  /// Number of nodes in the tree.
  std::size_t size() const noexcept;
  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, Symbol symbol, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Smart constructors. Operands must already be canonical; the result is
// canonical: constants folded, double negation removed, And/Or flattened,
// sorted, deduplicated and absorbed.
Formula make_not(Formula operand);
Formula make_and(std::vector<Formula> operands);
Formula make_or(std::vector<Formula> operands);
Formula make_next(Formula operand);
Formula make_until(Formula lhs, Formula rhs);
Formula make_eventually(Formula operand);
Formula make_globally(Formula operand);

/// Idempotent syntactic normal form.
Formula canonicalize(const Formula& f);
bool is_canonical(const Formula& f);

/// True iff, in negation normal form, negation only applies to atoms and
/// the only temporal operators are Next, Until and Eventually.
bool is_syntactically_cosafe(const Formula& f);

/// Ids of every atom occurring in `f`.
std::set<SymbolId> atoms_of(const Formula& f);

/// Fully parenthesized text in the formula grammar; `parse(print(f)) == f`
/// for canonical `f`.
std::string print(const Formula& f);

}  // namespace ltlnrm::ltl

template <>
struct std::hash<ltlnrm::ltl::Formula> {
  std::size_t operator()(const ltlnrm::ltl::Formula& f) const noexcept { return f.hash(); }
};
