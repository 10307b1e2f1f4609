#pragma once

#include <string>
#include <vector>

#include "ltlnrm/agent/joint_training.hpp"

namespace ltlnrm::agent {

struct EvalOptions {
  std::string distribution = "base";
  std::size_t episodes = 1000;
  std::uint64_t seed = 0;
  std::size_t timeout = env::kDefaultTimeout;
  double gamma = kDefaultGamma;
};

struct EvalRow {
  std::string distribution;
  double total_return = 0.0;       // mean undiscounted return
  double discounted_return = 0.0;  // mean of sum_t gamma^t r(t), t = 0 at reset
  double success_rate = 0.0;       // share of episodes ending with +1
  std::size_t episodes = 0;
  std::uint64_t seed = 0;
};

/// Greedy rollouts; episode i runs task i mod |tasks| from an environment
/// seed derived from (seed, i). No learning happens.
EvalRow evaluate(const QTable& table, const EnvFactory& make_env, const std::vector<TaskPtr>& tasks,
                 env::LabelingMode mode, const nrm::Grounder* grounder, const EvalOptions& options);

/// CSV `distribution,total_return,discounted_return,episodes,seed`, six
/// decimals.
std::string eval_csv(const std::vector<EvalRow>& rows);

/// "total (discounted)" with three decimals, e.g. "0.950 (0.712)".
std::string table_cell(double total, double discounted);

/// One line per distribution, averaged over the rows sharing it, in first
/// appearance order: `distribution  total (discounted)`.
std::string table_report(const std::vector<EvalRow>& rows);

}  // namespace ltlnrm::agent
