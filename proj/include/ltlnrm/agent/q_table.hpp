#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

#include "ltlnrm/core/rng.hpp"

namespace ltlnrm::agent {

/// Product state seen by the learner: the environment's observation key
/// and the residual id of the exposed automaton state. Residual ids are
/// structural hashes of the remaining task, so states of different but
/// equivalent tasks share table rows.
struct QKey {
  std::uint64_t observation = 0;
  std::uint64_t automaton = 0;
  friend bool operator==(const QKey&, const QKey&) = default;
};

struct QKeyHash {
  std::size_t operator()(const QKey& k) const noexcept;
};

inline constexpr double kDefaultGamma = 0.94;

class QTable {
 public:
  QTable(std::size_t num_actions, double alpha, double gamma = kDefaultGamma);

  std::size_t num_actions() const noexcept { return num_actions_; }
  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return table_.size(); }

  /// Action values; unseen keys read as zeros.
  std::span<const double> values(const QKey& key) const;
  double max_value(const QKey& key) const;

  /// Q(s,a) += alpha * (r + gamma * max Q(s') - Q(s,a)); no bootstrap
  /// when `terminal`.
  void update(const QKey& state, std::size_t action, double reward, const QKey& next, bool terminal);
  /// Highest-valued action, ties broken uniformly at random.
  std::size_t greedy(const QKey& key, Rng& rng) const;

  /// All rows sorted by key, for byte-stable output.
  std::vector<std::pair<QKey, std::vector<double>>> rows() const;
  void set_row(const QKey& key, std::vector<double> values);

 private:
  std::size_t num_actions_;
  double alpha_;
  double gamma_;
  std::vector<double> zeros_;
  std::unordered_map<QKey, std::vector<double>, QKeyHash> table_;
};

/// Binary table file: magic `NRMQ`, action count, alpha, gamma, row count,
/// then per row the two key words and the action values.
std::vector<std::uint8_t> serialize(const QTable& table);
QTable deserialize_table(std::span<const std::uint8_t> bytes);
void save_table(const QTable& table, const std::filesystem::path& path);
QTable load_table(const std::filesystem::path& path);

}  // namespace ltlnrm::agent
