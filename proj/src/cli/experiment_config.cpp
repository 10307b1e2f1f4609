#include "ltlnrm/cli/experiment_config.hpp"

#include <set>
#include <stdexcept>

#include "ltlnrm/core/error.hpp"
#include "ltlnrm/env/bootcamp.hpp"
#include "ltlnrm/env/flatworld.hpp"
#include "ltlnrm/env/gridworld.hpp"

namespace ltlnrm::cli {

std::string to_string(EnvProfile p) {
  switch (p) {
    case EnvProfile::Minecraft: return "minecraft";
    case EnvProfile::Desk: return "desk";
    case EnvProfile::FlatWorld: return "flatworld";
    case EnvProfile::Bootcamp: return "bootcamp";
  }
  return "minecraft";
}

EnvProfile env_profile_from_string(std::string_view text) {
  if (text == "minecraft") return EnvProfile::Minecraft;
  if (text == "desk") return EnvProfile::Desk;
  if (text == "flatworld") return EnvProfile::FlatWorld;
  if (text == "bootcamp") return EnvProfile::Bootcamp;
  throw std::invalid_argument("unknown environment '" + std::string(text) + "'");
}

namespace {

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (auto s : seeds) out += (out.empty() ? "" : ",") + std::to_string(s);
  return out;
}

std::vector<std::uint64_t> split_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    const auto item = text.substr(start, comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed list '" + text + "'");
    }
    start = comma + 1;
  }
  return out;
}

nrm::GrounderProfile grounder_profile_named(const std::string& name) {
  if (name == "gridworld") return nrm::GrounderProfile::gridworld();
  if (name == "flatworld") return nrm::GrounderProfile::flatworld();
  throw std::invalid_argument("unknown grounder profile '" + name + "'");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "environment", "layout_seed", "dataset", "train_tasks", "eval.tasks", "eval.depth", "eval.conjunctions",
      "labeling", "grounder.profile", "grounder.learning_rate", "grounder.train_capacity",
      "grounder.validation_capacity", "grounder.batch_size", "grounder.accumulation", "grounder.update_steps",
      "grounder.patience", "grounder.tau", "grounder.init_magnitude", "grounder.init_scale",
      "grounder.episodes_per_round", "agent.alpha", "agent.gamma", "agent.epsilon_start", "agent.epsilon_end",
      "agent.explore_fraction", "agent.episodes", "agent.timeout", "seed", "eval.seeds", "eval.episodes",
      "output_dir", "task.class", "task.sequences_min", "task.sequences_max", "task.length_min", "task.length_max",
      "task.disjunction_probability", "task.alphabet"};
  return keys;
}

}  // namespace

ExperimentConfig defaults_for(EnvProfile profile) {
  ExperimentConfig c;
  c.environment = profile;
  switch (profile) {
    case EnvProfile::Minecraft:
      break;
    case EnvProfile::Desk:
      c.task = tasks::TaskConfig::desk_po();
      c.layout_seed = 0;
      c.train_tasks = 500;
      c.eval_depth = 3;
      c.eval_conjunctions = 3;
      c.agent.episodes = 20'000;
      break;
    case EnvProfile::FlatWorld:
      c.task = tasks::TaskConfig::flatworld_po();
      c.grounder_profile = "flatworld";
      c.profile = nrm::GrounderProfile::flatworld();
      c.eval_depth = 4;
      c.eval_conjunctions = 2;
      break;
    case EnvProfile::Bootcamp:
      c.task = tasks::TaskConfig::minecraft_po();
      c.labeling = env::LabelingMode::Oracle;
      break;
  }
  return c;
}

KvConfig ExperimentConfig::to_kv() const {
  KvConfig kv;
  kv.set("environment", to_string(environment));
  if (layout_seed) kv.set("layout_seed", *layout_seed);
  task.write(kv);
  if (!dataset.empty()) kv.set("dataset", dataset);
  kv.set("train_tasks", static_cast<std::uint64_t>(train_tasks));
  kv.set("eval.tasks", static_cast<std::uint64_t>(eval_tasks));
  kv.set("eval.depth", eval_depth);
  kv.set("eval.conjunctions", eval_conjunctions);
  kv.set("labeling", std::string(labeling == env::LabelingMode::Oracle ? "oracle" : "learned"));
  kv.set("grounder.profile", grounder_profile);
  kv.set("grounder.learning_rate", profile.learning_rate);
  kv.set("grounder.train_capacity", static_cast<std::uint64_t>(profile.train_capacity));
  kv.set("grounder.validation_capacity", static_cast<std::uint64_t>(profile.validation_capacity));
  kv.set("grounder.batch_size", static_cast<std::uint64_t>(profile.batch_size));
  kv.set("grounder.accumulation", static_cast<std::uint64_t>(profile.accumulation));
  kv.set("grounder.update_steps", static_cast<std::uint64_t>(profile.update_steps));
  kv.set("grounder.patience", static_cast<std::uint64_t>(profile.patience));
  kv.set("grounder.tau", profile.tau);
  kv.set("grounder.init_magnitude", profile.init_magnitude);
  kv.set("grounder.init_scale", grounder_init_scale);
  kv.set("grounder.episodes_per_round", static_cast<std::uint64_t>(episodes_per_round));
  kv.set("agent.alpha", agent.alpha);
  kv.set("agent.gamma", agent.gamma);
  kv.set("agent.epsilon_start", agent.epsilon_start);
  kv.set("agent.epsilon_end", agent.epsilon_end);
  kv.set("agent.explore_fraction", agent.explore_fraction);
  kv.set("agent.episodes", static_cast<std::uint64_t>(agent.episodes));
  kv.set("agent.timeout", static_cast<std::uint64_t>(agent.timeout));
  kv.set("seed", seed);
  kv.set("eval.seeds", join_seeds(eval_seeds));
  kv.set("eval.episodes", static_cast<std::uint64_t>(eval_episodes));
  kv.set("output_dir", output_dir);
  return kv;
}

ExperimentConfig ExperimentConfig::from_kv(const KvConfig& kv) {
  for (const auto& [key, value] : kv.entries()) {
    if (!known_keys().count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  ExperimentConfig c = defaults_for(env_profile_from_string(kv.get_string("environment", "minecraft")));
  if (kv.contains("layout_seed")) c.layout_seed = kv.get_u64("layout_seed", 0);
  if (kv.contains("task.alphabet")) c.task = tasks::TaskConfig::read(kv);
  c.dataset = kv.get_string("dataset", "");
  c.train_tasks = kv.get_u64("train_tasks", c.train_tasks);
  c.eval_tasks = kv.get_u64("eval.tasks", c.eval_tasks);
  c.eval_depth = static_cast<int>(kv.get_int("eval.depth", c.eval_depth));
  c.eval_conjunctions = static_cast<int>(kv.get_int("eval.conjunctions", c.eval_conjunctions));
  const auto labeling = kv.get_string("labeling", c.labeling == env::LabelingMode::Oracle ? "oracle" : "learned");
  if (labeling != "oracle" && labeling != "learned") throw std::invalid_argument("labeling must be oracle or learned");
  c.labeling = labeling == "oracle" ? env::LabelingMode::Oracle : env::LabelingMode::Learned;
  c.grounder_profile = kv.get_string("grounder.profile", c.grounder_profile);
  c.profile = grounder_profile_named(c.grounder_profile);
  auto& p = c.profile;
  p.learning_rate = kv.get_double("grounder.learning_rate", p.learning_rate);
  p.train_capacity = kv.get_u64("grounder.train_capacity", p.train_capacity);
  p.validation_capacity = kv.get_u64("grounder.validation_capacity", p.validation_capacity);
  p.batch_size = kv.get_u64("grounder.batch_size", p.batch_size);
  p.accumulation = kv.get_u64("grounder.accumulation", p.accumulation);
  p.update_steps = kv.get_u64("grounder.update_steps", p.update_steps);
  p.patience = kv.get_u64("grounder.patience", p.patience);
  p.tau = kv.get_double("grounder.tau", p.tau);
  p.init_magnitude = kv.get_double("grounder.init_magnitude", p.init_magnitude);
  c.grounder_init_scale = kv.get_double("grounder.init_scale", c.grounder_init_scale);
  c.episodes_per_round = kv.get_u64("grounder.episodes_per_round", c.episodes_per_round);
  auto& a = c.agent;
  a.alpha = kv.get_double("agent.alpha", a.alpha);
  a.gamma = kv.get_double("agent.gamma", a.gamma);
  a.epsilon_start = kv.get_double("agent.epsilon_start", a.epsilon_start);
  a.epsilon_end = kv.get_double("agent.epsilon_end", a.epsilon_end);
  a.explore_fraction = kv.get_double("agent.explore_fraction", a.explore_fraction);
  a.episodes = kv.get_u64("agent.episodes", a.episodes);
  a.timeout = kv.get_u64("agent.timeout", a.timeout);
  c.seed = kv.get_u64("seed", c.seed);
  if (kv.contains("eval.seeds")) c.eval_seeds = split_seeds(kv.require_string("eval.seeds"));
  c.eval_episodes = kv.get_u64("eval.episodes", c.eval_episodes);
  c.output_dir = kv.get_string("output_dir", c.output_dir);
  if (c.episodes_per_round == 0 || c.eval_tasks == 0 || c.train_tasks == 0) {
    throw std::invalid_argument("counts must be positive");
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) { return from_kv(KvConfig::load(path)); }

void ExperimentConfig::save(const std::filesystem::path& path) const { to_kv().save(path); }

agent::EnvFactory ExperimentConfig::env_factory() const {
  switch (environment) {
    case EnvProfile::Minecraft:
    case EnvProfile::Desk: {
      auto grid = environment == EnvProfile::Desk ? env::GridConfig::desk() : env::GridConfig::minecraft();
      grid.propositions.clear();
      for (auto id : task.alphabet.propositions()) grid.propositions.push_back(task.alphabet.name(id));
      grid.fixed_layout_seed = layout_seed;
      return [grid] { return std::make_unique<env::GridWorld>(grid); };
    }
    case EnvProfile::FlatWorld: {
      env::FlatConfig flat;
      flat.propositions.clear();
      for (auto id : task.alphabet.propositions()) flat.propositions.push_back(task.alphabet.name(id));
      return [flat] { return std::make_unique<env::FlatWorld>(flat); };
    }
    case EnvProfile::Bootcamp: {
      const auto alphabet = task.alphabet;
      return [alphabet] { return std::make_unique<env::Bootcamp>(alphabet); };
    }
  }
  throw std::logic_error("unhandled environment");
}

agent::JointConfig ExperimentConfig::joint_config() const {
  agent::JointConfig j;
  j.agent = agent;
  j.profile = profile;
  j.mode = labeling;
  j.episodes_per_round = episodes_per_round;
  j.seed = seed;
  return j;
}

}  // namespace ltlnrm::cli
