#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlnrm/agent/q_table.hpp"
#include "ltlnrm/env/product_env.hpp"
#include "ltlnrm/nrm/trainer.hpp"

namespace ltlnrm::agent {

using automata::TaskPtr;
using EnvFactory = std::function<std::unique_ptr<env::Environment>()>;

struct AgentConfig {
  double alpha = 0.5;
  double gamma = kDefaultGamma;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double explore_fraction = 0.5;  // share of episodes over which epsilon decays
  std::size_t episodes = 10'000;
  std::size_t timeout = env::kDefaultTimeout;
};

/// Linear decay from epsilon_start to epsilon_end, then constant.
double epsilon_at(const AgentConfig& config, std::size_t episode);

struct JointConfig {
  AgentConfig agent;
  nrm::GrounderProfile profile = nrm::GrounderProfile::gridworld();
  env::LabelingMode mode = env::LabelingMode::Learned;
  std::size_t episodes_per_round = 50;  // collection episodes between grounder rounds
  std::uint64_t seed = 0;
};

/// Residual ids per task machine, computed once per task.
class ResidualIndex {
 public:
  const std::vector<std::uint64_t>& ids(const TaskPtr& task);

 private:
  std::unordered_map<const automata::Task*, std::pair<TaskPtr, std::vector<std::uint64_t>>> cache_;
};

struct EpisodeStat {
  std::size_t episode = 0;
  std::size_t task = 0;
  int total_return = 0;
  std::size_t steps = 0;
  double epsilon = 0.0;
  bool stored = false;  // accepted into the grounder buffers
};

struct JointResult {
  QTable table;
  nrm::Grounder grounder;  // the grounder the agent ended on (unchanged in oracle mode)
  std::vector<EpisodeStat> episodes;
  std::vector<nrm::TrainRound> rounds;
};

/// One experience stream feeds both learners: each episode samples a task,
/// acts epsilon-greedily on the exposed automaton state, updates the table
/// online and (learned mode) offers the episode to the grounder buffers;
/// every `episodes_per_round` episodes one grounder round runs until the
/// grounder early-stops.
JointResult train_joint(const EnvFactory& make_env, const std::vector<TaskPtr>& tasks, nrm::Grounder initial,
                        const JointConfig& config);

/// CSV `episode,task,total_return,steps,epsilon,stored`.
std::string episode_stats_csv(const std::vector<EpisodeStat>& stats);

}  // namespace ltlnrm::agent
