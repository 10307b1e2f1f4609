#include "ltlnrm/env/flatworld.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ltlnrm/core/error.hpp"
#include "ltlnrm/core/rng.hpp"

namespace ltlnrm::env {

namespace {

double distance(Vec2 a, Vec2 b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

bool inside(const Zone& z, Vec2 p) { return distance(z.center, p) <= z.radius; }

bool try_layout(const FlatConfig& config, Rng& rng, std::vector<Zone>& zones) {
  zones.clear();
  for (std::size_t k = 0; k < config.propositions.size(); ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < config.max_attempts && !placed; ++attempt) {
      Zone z;
      z.radius = uniform_real(rng, config.min_radius, config.max_radius);
      z.center = {uniform_real(rng, z.radius, 1.0 - z.radius), uniform_real(rng, z.radius, 1.0 - z.radius)};
      z.symbol = static_cast<SymbolId>(k);
      placed = std::all_of(zones.begin(), zones.end(),
                           [&](const Zone& o) { return distance(o.center, z.center) > o.radius + z.radius; });
      if (placed) zones.push_back(z);
    }
    if (!placed) return false;
  }
  return true;
}

}  // namespace

FlatWorldState flat_reset(const FlatConfig& config, std::uint64_t seed) {
  if (!(config.min_radius > 0.0 && config.min_radius <= config.max_radius && config.max_radius < 0.5)) {
    throw std::invalid_argument("invalid zone radii");
  }
  FlatWorldState s;
  for (std::uint64_t round = 0;; ++round) {
    if (round == 64) throw std::runtime_error("could not place disjoint zones");
    auto rng = make_rng(seed, "flat-layout", round);
    if (try_layout(config, rng, s.zones)) break;
  }
  auto start = make_rng(seed, "flat-start");
  do {
    s.position = {uniform_real(start), uniform_real(start)};
  } while (std::any_of(s.zones.begin(), s.zones.end(), [&](const Zone& z) { return inside(z, s.position); }));
  return s;
}

FlatWorldState flat_step(const FlatWorldState& state, Vec2 velocity, double max_speed) {
  const double speed = std::hypot(velocity[0], velocity[1]);
  if (speed > max_speed) {
    velocity[0] *= max_speed / speed;
    velocity[1] *= max_speed / speed;
  }
  FlatWorldState next = state;
  next.position[0] = std::clamp(state.position[0] + velocity[0], 0.0, 1.0);
  next.position[1] = std::clamp(state.position[1] + velocity[1], 0.0, 1.0);
  return next;
}

SymbolId flat_label(const FlatWorldState& state, std::size_t num_propositions) {
  for (const auto& z : state.zones) {
    if (inside(z, state.position)) return z.symbol;
  }
  return static_cast<SymbolId>(num_propositions);
}

FlatWorld::FlatWorld(FlatConfig config) : config_(std::move(config)), alphabet_(config_.propositions) {
  state_ = flat_reset(config_, 0);
}

std::size_t FlatWorld::observation_dim() const {
  const std::size_t k = config_.propositions.size();
  return 2 + k * (3 + k);
}

void FlatWorld::reset(std::uint64_t seed) { state_ = flat_reset(config_, seed); }

void FlatWorld::step(std::size_t action) {
  if (action >= 8) throw std::out_of_range("invalid flatworld action");
  const double angle = static_cast<double>(action) * std::numbers::pi / 4.0;
  step_velocity({config_.max_speed * std::cos(angle), config_.max_speed * std::sin(angle)});
}

void FlatWorld::step_velocity(Vec2 velocity) { state_ = flat_step(state_, velocity, config_.max_speed); }

void FlatWorld::observation(std::span<double> out) const {
  if (out.size() != observation_dim()) throw DimensionMismatchError("observation buffer size");
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t k = config_.propositions.size();
  out[0] = state_.position[0];
  out[1] = state_.position[1];
  for (std::size_t i = 0; i < state_.zones.size(); ++i) {
    const auto& z = state_.zones[i];
    auto block = out.subspan(2 + i * (3 + k), 3 + k);
    block[0] = z.center[0] - state_.position[0];
    block[1] = z.center[1] - state_.position[1];
    block[2] = z.radius;
    block[3 + z.symbol] = 1.0;
  }
}

SymbolId FlatWorld::oracle_label() const { return flat_label(state_, config_.propositions.size()); }

std::uint64_t FlatWorld::observation_key() const {
  const int n = config_.key_lattice;
  auto cell = [n](double v) { return std::min(n - 1, static_cast<int>(v * n)); };
  return static_cast<std::uint64_t>(cell(state_.position[0]) * n + cell(state_.position[1]));
}

}  // namespace ltlnrm::env
