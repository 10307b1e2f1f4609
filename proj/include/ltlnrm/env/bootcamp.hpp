#pragma once

#include "ltlnrm/env/environment.hpp"

namespace ltlnrm::env {

/// Symbolic world: each action is a symbol of the alphabet and is observed
/// directly. Observations are empty; the label starts as `_empty`.
class Bootcamp final : public Environment {
 public:
  explicit Bootcamp(Alphabet alphabet) : alphabet_(std::move(alphabet)), label_(alphabet_.empty_id()) {}

  std::string name() const override { return "bootcamp"; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::size_t num_actions() const override { return alphabet_.size(); }
  std::size_t observation_dim() const override { return 0; }

  void reset(std::uint64_t) override { label_ = alphabet_.empty_id(); }
  void step(std::size_t action) override;
  void observation(std::span<double>) const override {}
  using Environment::observation;
  SymbolId oracle_label() const override { return label_; }
  std::uint64_t observation_key() const override { return 0; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<Bootcamp>(*this); }

 private:
  Alphabet alphabet_;
  SymbolId label_;
};

}  // namespace ltlnrm::env
