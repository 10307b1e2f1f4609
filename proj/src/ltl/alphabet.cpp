#include "ltlnrm/ltl/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlnrm::ltl {

bool is_valid_identifier(std::string_view name) noexcept {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  if (name == "true" || name == "false") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Alphabet::Alphabet() : names_{std::string(kEmptyName)}, empty_id_(0) {}

Alphabet::Alphabet(const std::vector<std::string>& names) {
  bool has_empty = false;
  for (const auto& n : names) {
    if (n == kEmptyName) {
      if (has_empty) throw std::invalid_argument("duplicate symbol '_empty'");
      has_empty = true;
      empty_id_ = static_cast<SymbolId>(names_.size());
    } else if (!is_valid_identifier(n)) {
      throw std::invalid_argument("invalid symbol name '" + n + "'");
    } else if (std::find(names_.begin(), names_.end(), n) != names_.end()) {
      throw std::invalid_argument("duplicate symbol '" + n + "'");
    }
    names_.push_back(n);
  }
  if (!has_empty) {
    empty_id_ = static_cast<SymbolId>(names_.size());
    names_.emplace_back(kEmptyName);
  }
}

const std::string& Alphabet::name(SymbolId id) const {
  if (id >= names_.size()) throw std::out_of_range("symbol id " + std::to_string(id) + " outside alphabet");
  return names_[id];
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<SymbolId>(i);
  }
  return std::nullopt;
}

SymbolId Alphabet::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw std::out_of_range("symbol '" + std::string(name) + "' not in alphabet");
}

std::vector<SymbolId> Alphabet::propositions() const {
  std::vector<SymbolId> out;
  for (SymbolId i = 0; i < names_.size(); ++i) {
    if (i != empty_id_) out.push_back(i);
  }
  return out;
}

std::string Alphabet::to_list() const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += ',';
    out += names_[i];
  }
  return out;
}

Alphabet Alphabet::from_list(std::string_view list) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    std::string item(list.substr(start, comma - start));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) names.push_back(item);
    start = comma + 1;
  }
  return Alphabet(names);
}

}  // namespace ltlnrm::ltl
