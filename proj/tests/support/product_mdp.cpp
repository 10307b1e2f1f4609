#include "product_mdp.hpp"

#include <algorithm>
#include <cmath>

namespace ltlnrm::oracle {

GridProduct::GridProduct(env::GridWorldState layout, const automata::MooreMachine& machine, double gamma)
    : layout_(std::move(layout)), machine_(machine), gamma_(gamma),
      cells_(static_cast<std::size_t>(layout_.size * layout_.size)) {}

std::size_t GridProduct::index(int row, int col, automata::StateId q) const {
  return static_cast<std::size_t>(row * layout_.size + col) * machine_.num_states() + q;
}

bool GridProduct::terminal(std::size_t s) const { return machine_.output(s % machine_.num_states()) != 0; }

std::pair<std::size_t, int> GridProduct::step(std::size_t s, std::size_t action) const {
  const auto Q = machine_.num_states();
  const int n = layout_.size;
  const auto cell = static_cast<int>(s / Q);
  int row = cell / n, col = cell % n;
  // Independent of the environment code: N, S, E, W on a torus.
  switch (action) {
    case 0: row = (row + n - 1) % n; break;
    case 1: row = (row + 1) % n; break;
    case 2: col = (col + 1) % n; break;
    default: col = (col + n - 1) % n; break;
  }
  const auto v = layout_.cells[static_cast<std::size_t>(row * n + col)];
  const auto symbol = v < 0 ? machine_.alphabet().empty_id() : static_cast<ltl::SymbolId>(v);
  const auto q = machine_.next(static_cast<automata::StateId>(s % Q), symbol);
  return {index(row, col, q), machine_.output(q)};
}

std::vector<std::array<double, 4>> GridProduct::optimal_q(double tol) const {
  std::vector<double> v(num_states(), 0.0);
  std::vector<std::array<double, 4>> q(num_states());
  for (double delta = 1.0; delta > tol;) {
    delta = 0.0;
    for (std::size_t s = 0; s < num_states(); ++s) {
      if (terminal(s)) continue;
      for (std::size_t a = 0; a < 4; ++a) {
        const auto [next, r] = step(s, a);
        q[s][a] = r != 0 ? r : gamma_ * v[next];
      }
      const double best = *std::max_element(q[s].begin(), q[s].end());
      delta = std::max(delta, std::abs(best - v[s]));
      v[s] = best;
    }
  }
  return q;
}

std::vector<double> GridProduct::policy_values(const std::function<std::array<double, 4>(std::size_t)>& policy,
                                               double tol) const {
  std::vector<double> v(num_states(), 0.0);
  std::vector<std::array<double, 4>> pi(num_states());
  for (std::size_t s = 0; s < num_states(); ++s) {
    if (!terminal(s)) pi[s] = policy(s);
  }
  for (double delta = 1.0; delta > tol;) {
    delta = 0.0;
    for (std::size_t s = 0; s < num_states(); ++s) {
      if (terminal(s)) continue;
      double value = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        if (pi[s][a] == 0.0) continue;
        const auto [next, r] = step(s, a);
        value += pi[s][a] * (r != 0 ? r : gamma_ * v[next]);
      }
      delta = std::max(delta, std::abs(value - v[s]));
      v[s] = value;
    }
  }
  return v;
}

}  // namespace ltlnrm::oracle
