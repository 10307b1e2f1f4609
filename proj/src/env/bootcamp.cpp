#include "ltlnrm/env/bootcamp.hpp"

#include <stdexcept>

namespace ltlnrm::env {

void Bootcamp::step(std::size_t action) {
  if (action >= alphabet_.size()) throw std::out_of_range("invalid bootcamp action");
  label_ = static_cast<SymbolId>(action);
}

}  // namespace ltlnrm::env
