#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ltlnrm/ltl/alphabet.hpp"

namespace ltlnrm::env {

using ltl::Alphabet;
using ltl::SymbolId;

/// A seedable simulator with a discrete action set. The oracle label is
/// for reward computation, tests and diagnostics; learners see only
/// `observation()` (and `observation_key()` for tabular lookup).
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual const Alphabet& alphabet() const = 0;
  virtual std::size_t num_actions() const = 0;
  virtual std::size_t observation_dim() const = 0;

  virtual void reset(std::uint64_t seed) = 0;
  /// Throws std::out_of_range for an invalid action.
  virtual void step(std::size_t action) = 0;

  virtual void observation(std::span<double> out) const = 0;
  std::vector<double> observation() const {
    std::vector<double> out(observation_dim());
    observation(out);
    return out;
  }
  virtual SymbolId oracle_label() const = 0;
  /// Finite key of the current observation for tabular learners.
  virtual std::uint64_t observation_key() const = 0;

  virtual std::unique_ptr<Environment> clone() const = 0;
};

}  // namespace ltlnrm::env
