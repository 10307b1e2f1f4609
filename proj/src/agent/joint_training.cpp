#include "ltlnrm/agent/joint_training.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ltlnrm/automata/minimize.hpp"
#include "ltlnrm/core/kv_config.hpp"

namespace ltlnrm::agent {

double epsilon_at(const AgentConfig& config, std::size_t episode) {
  const double horizon = config.explore_fraction * static_cast<double>(config.episodes);
  if (horizon <= 0.0) return config.epsilon_end;
  const double frac = std::min(1.0, static_cast<double>(episode) / horizon);
  return config.epsilon_start + frac * (config.epsilon_end - config.epsilon_start);
}

const std::vector<std::uint64_t>& ResidualIndex::ids(const TaskPtr& task) {
  auto it = cache_.find(task.get());
  if (it == cache_.end()) {
    it = cache_.emplace(task.get(), std::make_pair(task, automata::residual_ids(task->machine))).first;
  }
  return it->second.second;
}

JointResult train_joint(const EnvFactory& make_env, const std::vector<TaskPtr>& tasks, nrm::Grounder initial,
                        const JointConfig& config) {
  if (tasks.empty()) throw std::invalid_argument("no training tasks");
  const bool learned = config.mode == env::LabelingMode::Learned;
  nrm::GrounderTrainer trainer(std::move(initial), config.profile, derive_seed(config.seed, "grounder"));
  nrm::ReplayBuffers buffers(config.profile);
  // The grounder the agent acts on: the latest one while training, the
  // best-validation one once training has stopped.
  nrm::Grounder active = trainer.grounder();
  env::ProductEnv penv(make_env(), config.mode, learned ? &active : nullptr, config.agent.timeout);
  const std::size_t dim = penv.base().observation_dim();

  QTable table(penv.base().num_actions(), config.agent.alpha, config.agent.gamma);
  ResidualIndex residuals;
  auto policy_rng = make_rng(config.seed, "policy");
  auto task_rng = make_rng(config.seed, "task-pick");
  std::vector<double> obs(dim);
  JointResult result{table, active, {}, {}};
  bool grounder_frozen = !learned;

  for (std::size_t ep = 0; ep < config.agent.episodes; ++ep) {
    const auto task_index = static_cast<std::size_t>(uniform_int(task_rng, 0, static_cast<int>(tasks.size()) - 1));
    const auto& task = tasks[task_index];
    const auto& ids = residuals.ids(task);
    penv.set_task(task);
    const double epsilon = epsilon_at(config.agent, ep);

    nrm::Episode record;
    record.id = ep;
    record.task = task;
    int r = penv.reset(derive_seed(config.seed, "episode", ep));
    int total = r;
    penv.base().observation(obs);
    if (learned) {
      record.observations.push_row(obs);
      record.rewards.push_back(r);
      record.oracle_symbols.push_back(penv.base().oracle_label());
      record.grounder_symbols.push_back(active.argmax(obs));
    }
    QKey key{penv.base().observation_key(), ids[penv.exposed_state()]};
    while (!penv.done()) {
      const std::size_t action =
          bernoulli(policy_rng, epsilon)
              ? static_cast<std::size_t>(uniform_int(policy_rng, 0, static_cast<int>(table.num_actions()) - 1))
              : table.greedy(key, policy_rng);
      const auto step = penv.step(action);
      const QKey next{penv.base().observation_key(), ids[penv.exposed_state()]};
      table.update(key, action, step.reward, next, step.reward != 0);
      key = next;
      total += step.reward;
      if (learned) {
        penv.base().observation(obs);
        record.observations.push_row(obs);
        record.rewards.push_back(step.reward);
        record.oracle_symbols.push_back(step.info.oracle_symbol);
        record.grounder_symbols.push_back(*step.info.grounder_symbol);
      }
    }
    EpisodeStat stat{ep, task_index, total, penv.steps(), epsilon, false};
    if (learned && !grounder_frozen) stat.stored = buffers.offer(std::move(record));
    result.episodes.push_back(stat);

    if (!grounder_frozen && (ep + 1) % config.episodes_per_round == 0 && !buffers.train().empty()) {
      result.rounds.push_back(trainer.run_round(buffers));
      grounder_frozen = trainer.should_stop();
      active = grounder_frozen ? trainer.best() : trainer.grounder();
    }
  }
  result.table = std::move(table);
  result.grounder = std::move(active);
  return result;
}

std::string episode_stats_csv(const std::vector<EpisodeStat>& stats) {
  std::ostringstream out;
  out << "episode,task,total_return,steps,epsilon,stored\n";
  for (const auto& s : stats) {
    out << s.episode << ',' << s.task << ',' << s.total_return << ',' << s.steps << ',' << format_double(s.epsilon)
        << ',' << (s.stored ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace ltlnrm::agent
