#pragma once

#include <array>

#include "ltlnrm/env/environment.hpp"

namespace ltlnrm::env {

using Vec2 = std::array<double, 2>;

struct Zone {
  Vec2 center{};
  double radius = 0.0;
  SymbolId symbol = 0;
  friend bool operator==(const Zone&, const Zone&) = default;
};

struct FlatConfig {
  std::vector<std::string> propositions{"red", "green", "blue", "yellow", "magenta"};
  double min_radius = 0.1;
  double max_radius = 0.2;
  double max_speed = 0.1;
  int max_attempts = 1000;
  /// Cells per side of the lattice used for tabular observation keys.
  int key_lattice = 10;
};

struct FlatWorldState {
  std::vector<Zone> zones;  // one per proposition, ordered by symbol
  Vec2 position{};
  friend bool operator==(const FlatWorldState&, const FlatWorldState&) = default;
};

/// Zones with radii in [min_radius, max_radius] fully inside the unit
/// square and pairwise disjoint (distance > r_i + r_j), by rejection
/// sampling; after `max_attempts` failures the layout stream is reseeded.
/// The agent starts outside every zone.
FlatWorldState flat_reset(const FlatConfig& config, std::uint64_t seed);
/// Clamps the velocity to `max_speed`, moves, and clips to the unit square.
FlatWorldState flat_step(const FlatWorldState& state, Vec2 velocity, double max_speed);
/// Symbol of the zone containing the agent, or `num_propositions`.
SymbolId flat_label(const FlatWorldState& state, std::size_t num_propositions);

/// FlatWorld with eight discrete headings at full speed. Observation:
/// position, then per zone (dx, dy, radius, symbol one-hot).
class FlatWorld final : public Environment {
 public:
  explicit FlatWorld(FlatConfig config = {});

  std::string name() const override { return "flatworld"; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::size_t num_actions() const override { return 8; }
  std::size_t observation_dim() const override;

  void reset(std::uint64_t seed) override;
  void step(std::size_t action) override;
  void step_velocity(Vec2 velocity);
  void observation(std::span<double> out) const override;
  using Environment::observation;
  SymbolId oracle_label() const override;
  /// Agent position on the key lattice.
  std::uint64_t observation_key() const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<FlatWorld>(*this); }

  const FlatWorldState& state() const noexcept { return state_; }

 private:
  FlatConfig config_;
  Alphabet alphabet_;
  FlatWorldState state_;
};

}  // namespace ltlnrm::env
