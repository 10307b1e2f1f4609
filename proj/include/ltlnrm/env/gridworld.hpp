#pragma once

#include <optional>

#include "ltlnrm/env/environment.hpp"

namespace ltlnrm::env {

enum class GridAction : std::uint8_t { North = 0, South = 1, East = 2, West = 3 };

struct GridConfig {
  int size = 7;
  std::vector<std::string> propositions{"pick", "lava", "door", "apple", "egg"};
  int cells_per_proposition = 2;
  /// When set, every episode uses the layout drawn from this seed and only
  /// the agent start varies.
  std::optional<std::uint64_t> fixed_layout_seed;

  static GridConfig minecraft();
  /// 5x5 grid with three propositions, for desk-scale experiments.
  static GridConfig desk();
};

/// Toroidal grid. `cells[r * size + c]` is a proposition index or -1.
struct GridWorldState {
  int size = 0;
  std::vector<std::int8_t> cells;
  int row = 0;
  int col = 0;

  std::int8_t at(int r, int c) const { return cells[static_cast<std::size_t>(r * size + c)]; }
  friend bool operator==(const GridWorldState&, const GridWorldState&) = default;
};

/// Uniform placement of `cells_per_proposition` cells per proposition on
/// distinct cells; the agent starts on a uniformly drawn empty cell.
GridWorldState grid_reset(const GridConfig& config, std::uint64_t seed);
GridWorldState grid_step(const GridWorldState& state, GridAction action);
/// Proposition index of the agent's cell, or `num_propositions` (the
/// `_empty` id) on an empty cell.
SymbolId grid_label(const GridWorldState& state, std::size_t num_propositions);
/// Egocentric one-hot planes, plane-major: plane k < num_propositions marks
/// cells holding proposition k, the last plane marks empty cells. The
/// agent's cell is shifted to the center (size / 2, size / 2).
void grid_observation(const GridWorldState& state, std::size_t num_propositions, std::span<double> out);

class GridWorld final : public Environment {
 public:
  explicit GridWorld(GridConfig config = GridConfig::minecraft());
  /// Starts from an explicit state; reset() resamples as usual.
  static GridWorld from_state(GridConfig config, GridWorldState state);

  std::string name() const override { return "gridworld"; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::size_t num_actions() const override { return 4; }
  std::size_t observation_dim() const override;

  void reset(std::uint64_t seed) override;
  void step(std::size_t action) override;
  void observation(std::span<double> out) const override;
  using Environment::observation;
  SymbolId oracle_label() const override;
  /// Hash of the egocentric cell contents.
  std::uint64_t observation_key() const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<GridWorld>(*this); }

  const GridWorldState& state() const noexcept { return state_; }
  const GridConfig& config() const noexcept { return config_; }

 private:
  GridConfig config_;
  Alphabet alphabet_;
  GridWorldState state_;
};

}  // namespace ltlnrm::env
