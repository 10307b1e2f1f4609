#include "ltlnrm/env/gridworld.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ltlnrm/core/error.hpp"
#include "ltlnrm/core/rng.hpp"

namespace ltlnrm::env {

GridConfig GridConfig::minecraft() { return GridConfig{}; }

GridConfig GridConfig::desk() {
  GridConfig c;
  c.size = 5;
  c.propositions = {"a", "b", "c"};
  return c;
}

namespace {

void validate(const GridConfig& config) {
  if (config.size < 1) throw std::invalid_argument("grid size must be positive");
  const auto occupied = config.propositions.size() * static_cast<std::size_t>(config.cells_per_proposition);
  if (config.cells_per_proposition < 1 || occupied >= static_cast<std::size_t>(config.size * config.size)) {
    throw std::invalid_argument("grid too small for the requested propositions");
  }
  if (config.propositions.size() > 127) throw std::invalid_argument("too many propositions");
}

std::vector<std::int8_t> sample_layout(const GridConfig& config, Rng& rng) {
  const auto n = static_cast<std::size_t>(config.size * config.size);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k entries are a uniform k-subset in uniform order.
  const std::size_t k = config.propositions.size() * static_cast<std::size_t>(config.cells_per_proposition);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n - i) - 1));
    std::swap(order[i], order[j]);
  }
  std::vector<std::int8_t> cells(n, -1);
  for (std::size_t i = 0; i < k; ++i) {
    cells[order[i]] = static_cast<std::int8_t>(i / static_cast<std::size_t>(config.cells_per_proposition));
  }
  return cells;
}

int wrap(int v, int size) { return ((v % size) + size) % size; }

}  // namespace

GridWorldState grid_reset(const GridConfig& config, std::uint64_t seed) {
  validate(config);
  GridWorldState s;
  s.size = config.size;
  auto start_rng = make_rng(seed, "grid-start");
  if (config.fixed_layout_seed) {
    auto layout_rng = make_rng(*config.fixed_layout_seed, "grid-layout");
    s.cells = sample_layout(config, layout_rng);
  } else {
    auto layout_rng = make_rng(seed, "grid-layout");
    s.cells = sample_layout(config, layout_rng);
  }
  std::vector<int> empty;
  for (int i = 0; i < config.size * config.size; ++i) {
    if (s.cells[static_cast<std::size_t>(i)] < 0) empty.push_back(i);
  }
  const int cell = empty[static_cast<std::size_t>(uniform_int(start_rng, 0, static_cast<int>(empty.size()) - 1))];
  s.row = cell / config.size;
  s.col = cell % config.size;
  return s;
}

GridWorldState grid_step(const GridWorldState& state, GridAction action) {
  GridWorldState next = state;
  switch (action) {
    case GridAction::North: next.row = wrap(state.row - 1, state.size); break;
    case GridAction::South: next.row = wrap(state.row + 1, state.size); break;
    case GridAction::East: next.col = wrap(state.col + 1, state.size); break;
    case GridAction::West: next.col = wrap(state.col - 1, state.size); break;
    default: throw std::out_of_range("invalid grid action");
  }
  return next;
}

SymbolId grid_label(const GridWorldState& state, std::size_t num_propositions) {
  const auto v = state.at(state.row, state.col);
  return v < 0 ? static_cast<SymbolId>(num_propositions) : static_cast<SymbolId>(v);
}

void grid_observation(const GridWorldState& state, std::size_t num_propositions, std::span<double> out) {
  const int n = state.size;
  const auto plane = static_cast<std::size_t>(n * n);
  if (out.size() != (num_propositions + 1) * plane) throw DimensionMismatchError("observation buffer size");
  std::fill(out.begin(), out.end(), 0.0);
  const int half = n / 2;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const auto v = state.at(wrap(state.row + r - half, n), wrap(state.col + c - half, n));
      const std::size_t k = v < 0 ? num_propositions : static_cast<std::size_t>(v);
      out[k * plane + static_cast<std::size_t>(r * n + c)] = 1.0;
    }
  }
}

GridWorld::GridWorld(GridConfig config) : config_(std::move(config)), alphabet_(config_.propositions) {
  validate(config_);
  state_ = grid_reset(config_, 0);
}

GridWorld GridWorld::from_state(GridConfig config, GridWorldState state) {
  GridWorld g(std::move(config));
  if (state.size != g.config_.size || state.cells.size() != static_cast<std::size_t>(state.size * state.size)) {
    throw std::invalid_argument("state does not match grid size");
  }
  g.state_ = std::move(state);
  return g;
}

std::size_t GridWorld::observation_dim() const {
  return (config_.propositions.size() + 1) * static_cast<std::size_t>(config_.size * config_.size);
}

void GridWorld::reset(std::uint64_t seed) { state_ = grid_reset(config_, seed); }

void GridWorld::step(std::size_t action) {
  if (action >= 4) throw std::out_of_range("invalid grid action");
  state_ = grid_step(state_, static_cast<GridAction>(action));
}

void GridWorld::observation(std::span<double> out) const {
  grid_observation(state_, config_.propositions.size(), out);
}

SymbolId GridWorld::oracle_label() const { return grid_label(state_, config_.propositions.size()); }

std::uint64_t GridWorld::observation_key() const {
  const int n = state_.size;
  const int half = n / 2;
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const auto v = state_.at(wrap(state_.row + r - half, n), wrap(state_.col + c - half, n));
      h = splitmix64(h ^ static_cast<std::uint64_t>(v + 2));
    }
  }
  return h;
}

}  // namespace ltlnrm::env
