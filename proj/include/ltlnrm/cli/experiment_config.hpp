#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ltlnrm/agent/joint_training.hpp"
#include "ltlnrm/core/kv_config.hpp"
#include "ltlnrm/tasks/sampler.hpp"

namespace ltlnrm::cli {

enum class EnvProfile { Minecraft, Desk, FlatWorld, Bootcamp };

std::string to_string(EnvProfile p);
EnvProfile env_profile_from_string(std::string_view text);

/// Everything a run depends on. Serialized as sorted `key = value` text,
/// so the copy stored in a run directory reproduces the run.
struct ExperimentConfig {
  EnvProfile environment = EnvProfile::Minecraft;
  std::optional<std::uint64_t> layout_seed;  // fixed grid layout
  tasks::TaskConfig task = tasks::TaskConfig::minecraft_po();
  std::string dataset;  // precompiled training tasks; sampled when empty
  std::size_t train_tasks = 10'000;
  std::size_t eval_tasks = 200;
  int eval_depth = 15;
  int eval_conjunctions = 12;
  env::LabelingMode labeling = env::LabelingMode::Learned;
  std::string grounder_profile = "gridworld";
  nrm::GrounderProfile profile = nrm::GrounderProfile::gridworld();
  double grounder_init_scale = 0.01;
  std::size_t episodes_per_round = 50;
  agent::AgentConfig agent;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> eval_seeds{0};
  std::size_t eval_episodes = 1000;
  std::string output_dir = "runs";

  KvConfig to_kv() const;
  /// Unknown keys are rejected; missing keys keep the defaults of the
  /// named environment and grounder profiles.
  static ExperimentConfig from_kv(const KvConfig& kv);
  static ExperimentConfig load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  agent::EnvFactory env_factory() const;
  agent::JointConfig joint_config() const;
};

/// Defaults for a named environment profile: task grammar, generalization
/// sizes, grounder profile and layout.
ExperimentConfig defaults_for(EnvProfile profile);

}  // namespace ltlnrm::cli
