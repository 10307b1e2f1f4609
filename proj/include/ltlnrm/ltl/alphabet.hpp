#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ltlnrm::ltl {

using SymbolId = std::uint32_t;

struct Symbol {
  SymbolId id = 0;
  std::string name;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Ordered, fixed set of mutually exclusive symbols. Every alphabet holds
/// the reserved `_empty` symbol, observed when no proposition is true; it is
/// appended after the propositions unless the caller placed it explicitly.
class Alphabet {
 public:
  static constexpr std::string_view kEmptyName = "_empty";

  Alphabet();
  explicit Alphabet(const std::vector<std::string>& names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(SymbolId id) const;
  Symbol symbol(SymbolId id) const { return Symbol{id, name(id)}; }
  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws std::out_of_range for names outside the alphabet.
  SymbolId id_of(std::string_view name) const;
  SymbolId empty_id() const noexcept { return empty_id_; }
  bool contains(SymbolId id) const noexcept { return id < names_.size(); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  /// All symbol ids except `_empty`, in id order.
  std::vector<SymbolId> propositions() const;

  /// Comma-separated names, the inverse of `from_list`.
  std::string to_list() const;
  static Alphabet from_list(std::string_view list);

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  SymbolId empty_id_ = 0;
};

/// True for names matching `[a-z][a-z0-9_]*` that are not keywords.
bool is_valid_identifier(std::string_view name) noexcept;

}  // namespace ltlnrm::ltl
