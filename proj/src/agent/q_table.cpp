#include "ltlnrm/agent/q_table.hpp"

#include <algorithm>
#include <tuple>
#include <stdexcept>

#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/core/error.hpp"

namespace ltlnrm::agent {

std::size_t QKeyHash::operator()(const QKey& k) const noexcept {
  return static_cast<std::size_t>(splitmix64(k.observation ^ splitmix64(k.automaton)));
}

QTable::QTable(std::size_t num_actions, double alpha, double gamma)
    : num_actions_(num_actions), alpha_(alpha), gamma_(gamma), zeros_(num_actions, 0.0) {
  if (num_actions == 0) throw std::invalid_argument("need at least one action");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("learning rate must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("discount must lie in [0, 1]");
}

std::span<const double> QTable::values(const QKey& key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? std::span<const double>(zeros_) : std::span<const double>(it->second);
}

double QTable::max_value(const QKey& key) const {
  const auto v = values(key);
  return *std::max_element(v.begin(), v.end());
}

void QTable::update(const QKey& state, std::size_t action, double reward, const QKey& next, bool terminal) {
  if (action >= num_actions_) throw std::out_of_range("action out of range");
  const double target = reward + (terminal ? 0.0 : gamma_ * max_value(next));
  auto [it, inserted] = table_.try_emplace(state, zeros_);
  double& q = it->second[action];
  q += alpha_ * (target - q);
}

std::size_t QTable::greedy(const QKey& key, Rng& rng) const {
  const auto v = values(key);
  const double best = *std::max_element(v.begin(), v.end());
  std::size_t ties = 0;
  for (double x : v) ties += x == best;
  auto pick = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ties) - 1));
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a] == best && pick-- == 0) return a;
  }
  return 0;
}

std::vector<std::pair<QKey, std::vector<double>>> QTable::rows() const {
  std::vector<std::pair<QKey, std::vector<double>>> out(table_.begin(), table_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.observation, a.first.automaton) < std::tie(b.first.observation, b.first.automaton);
  });
  return out;
}

void QTable::set_row(const QKey& key, std::vector<double> values) {
  if (values.size() != num_actions_) throw DimensionMismatchError("row width differs from the action count");
  table_[key] = std::move(values);
}

std::vector<std::uint8_t> serialize(const QTable& table) {
  ByteWriter w;
  w.bytes("NRMQ");
  w.u64(table.num_actions());
  w.f64(table.alpha());
  w.f64(table.gamma());
  const auto rows = table.rows();
  w.u64(rows.size());
  for (const auto& [key, values] : rows) {
    w.u64(key.observation);
    w.u64(key.automaton);
    for (double v : values) w.f64(v);
  }
  return w.take();
}

QTable deserialize_table(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect("NRMQ", "q-table file");
  const auto actions_at = r.offset();
  const auto actions = r.u64();
  if (actions == 0 || actions > 4096) throw MalformedFileError("implausible action count", actions_at);
  const double alpha = r.f64();
  const double gamma = r.f64();
  const auto count_at = r.offset();
  const auto count = r.u64();
  if (count > r.remaining() / (16 + 8 * actions)) throw MalformedFileError("truncated q-table rows", count_at);
  QTable table = [&] {
    try {
      return QTable(actions, alpha, gamma);
    } catch (const std::invalid_argument& e) {
      throw MalformedFileError(e.what(), actions_at);
    }
  }();
  for (std::uint64_t i = 0; i < count; ++i) {
    QKey key;
    key.observation = r.u64();
    key.automaton = r.u64();
    std::vector<double> values(actions);
    for (auto& v : values) v = r.f64();
    table.set_row(key, std::move(values));
  }
  r.expect_end();
  return table;
}

void save_table(const QTable& table, const std::filesystem::path& path) { write_file(path, serialize(table)); }

QTable load_table(const std::filesystem::path& path) { return deserialize_table(read_file(path)); }

}  // namespace ltlnrm::agent
