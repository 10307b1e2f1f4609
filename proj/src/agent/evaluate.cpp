#include "ltlnrm/agent/evaluate.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ltlnrm::agent {

EvalRow evaluate(const QTable& table, const EnvFactory& make_env, const std::vector<TaskPtr>& tasks,
                 env::LabelingMode mode, const nrm::Grounder* grounder, const EvalOptions& options) {
  if (tasks.empty()) throw std::invalid_argument("no evaluation tasks");
  if (options.episodes == 0) throw std::invalid_argument("episode count must be positive");
  env::ProductEnv penv(make_env(), mode, grounder, options.timeout);
  if (penv.base().num_actions() != table.num_actions()) {
    throw std::invalid_argument("table and environment action counts differ");
  }
  ResidualIndex residuals;
  EvalRow row;
  row.distribution = options.distribution;
  row.episodes = options.episodes;
  row.seed = options.seed;
  double total = 0.0;
  double discounted = 0.0;
  std::size_t successes = 0;
  for (std::size_t i = 0; i < options.episodes; ++i) {
    const auto& task = tasks[i % tasks.size()];
    const auto& ids = residuals.ids(task);
    penv.set_task(task);
    auto ties = make_rng(options.seed, "eval-ties", i);
    int r = penv.reset(derive_seed(options.seed, "eval-episode", i));
    double ret = r;
    double disc = r;
    double scale = 1.0;
    while (!penv.done()) {
      const QKey key{penv.base().observation_key(), ids[penv.exposed_state()]};
      r = penv.step(table.greedy(key, ties)).reward;
      scale *= options.gamma;
      ret += r;
      disc += scale * r;
    }
    total += ret;
    discounted += disc;
    successes += r > 0;
  }
  const auto n = static_cast<double>(options.episodes);
  row.total_return = total / n;
  row.discounted_return = discounted / n;
  row.success_rate = static_cast<double>(successes) / n;
  return row;
}

std::string eval_csv(const std::vector<EvalRow>& rows) {
  std::string out = "distribution,total_return,discounted_return,episodes,seed\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%zu,%llu\n", r.total_return, r.discounted_return, r.episodes,
                  static_cast<unsigned long long>(r.seed));
    out += r.distribution + buf;
  }
  return out;
}

std::string table_cell(double total, double discounted) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f (%.3f)", total, discounted);
  return buf;
}

std::string table_report(const std::vector<EvalRow>& rows) {
  std::vector<std::string> order;
  std::vector<std::array<double, 3>> sums;
  for (const auto& r : rows) {
    std::size_t i = 0;
    while (i < order.size() && order[i] != r.distribution) ++i;
    if (i == order.size()) {
      order.push_back(r.distribution);
      sums.push_back({0, 0, 0});
    }
    sums[i][0] += r.total_return;
    sums[i][1] += r.discounted_return;
    sums[i][2] += 1;
  }
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%-12s", order[i].c_str());
    out += std::string(name) + table_cell(sums[i][0] / sums[i][2], sums[i][1] / sums[i][2]) + "\n";
  }
  return out;
}

}  // namespace ltlnrm::agent
