#pragma once

#include <span>

#include "ltlnrm/ltl/alphabet.hpp"
#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::ltl {

/// Progresses `f` through one observation under the single-symbol
/// (mutually exclusive) assumption:
///
///   prog(p)       = true iff p == sigma, else false
///   prog(!x)      = !prog(x)
///   prog(x & y)   = prog(x) & prog(y)        (dually for |)
///   prog(X x)     = x
///   prog(x U y)   = prog(y) | (prog(x) & (x U y))
///
/// The result is canonical. `f` should be canonical; Eventually/Globally
/// nodes are desugared on the fly. Throws std::out_of_range when `sigma`
/// is not a symbol of `alphabet`.
Formula progress(const Formula& f, SymbolId sigma, const Alphabet& alphabet);

/// Iterated progression; stops early once the formula is true or false.
Formula progress_trace(const Formula& f, std::span<const SymbolId> trace, const Alphabet& alphabet);

/// Three-valued verdict of a progressed formula: +1 for true, -1 for
/// false, 0 otherwise.
int progression_verdict(const Formula& f) noexcept;

}  // namespace ltlnrm::ltl
