#pragma once

#include <string_view>

#include "ltlnrm/ltl/alphabet.hpp"
#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::ltl {

// Grammar, loosest binding first:
//
//   formula := conj ('|' conj)*
//   conj    := until ('&' until)*
//   until   := unary ('U' until)?            right associative
//   unary   := ('!' | 'X' | 'F' | 'G') unary | primary
//   primary := 'true' | 'false' | ident | '(' formula ')'
//   ident   := [a-z][a-z0-9_]*
//
// Identifiers must name symbols of `alphabet`.

/// Parses and canonicalizes. Throws ParseError / UnknownIdentifierError.
Formula parse(std::string_view text, const Alphabet& alphabet);

/// Parses without canonicalizing; the tree mirrors the source text.
Formula parse_verbatim(std::string_view text, const Alphabet& alphabet);

}  // namespace ltlnrm::ltl
