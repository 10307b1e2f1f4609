#include "ltlnrm/tasks/sampler.hpp"

#include <stdexcept>

namespace ltlnrm::tasks {

std::string to_string(TaskClass c) { return c == TaskClass::PartiallyOrdered ? "po" : "ga"; }

TaskClass task_class_from_string(std::string_view text) {
  if (text == "po" || text == "partially-ordered") return TaskClass::PartiallyOrdered;
  if (text == "ga" || text == "global-avoidance") return TaskClass::GlobalAvoidance;
  throw std::invalid_argument("unknown task class '" + std::string(text) + "'");
}

namespace {

const Alphabet& minecraft_alphabet() {
  static const Alphabet a({"pick", "lava", "door", "apple", "egg"});
  return a;
}

const Alphabet& flatworld_alphabet() {
  static const Alphabet a({"red", "green", "blue", "yellow", "magenta"});
  return a;
}

const Alphabet& desk_alphabet() {
  static const Alphabet a({"a", "b", "c"});
  return a;
}

int draw(Rng& rng, Range r) { return uniform_int(rng, r.min, r.max); }

Formula atom_of(const Alphabet& alphabet, ltl::SymbolId id) { return Formula::atom(alphabet.symbol(id)); }

ltl::SymbolId pick(Rng& rng, const std::vector<ltl::SymbolId>& pool) {
  return pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
}

Formula po_term(const TaskConfig& config, const std::vector<ltl::SymbolId>& props, Rng& rng) {
  const auto first = pick(rng, props);
  if (!bernoulli(rng, config.disjunction_probability)) return atom_of(config.alphabet, first);
  auto second = pick(rng, props);
  while (second == first) second = pick(rng, props);
  return Formula::disjunction({atom_of(config.alphabet, first), atom_of(config.alphabet, second)});
}

Formula join(std::vector<Formula> sequences) {
  return sequences.size() == 1 ? sequences.front() : Formula::conjunction(std::move(sequences));
}

}  // namespace

TaskConfig TaskConfig::minecraft_po() {
  return TaskConfig{TaskClass::PartiallyOrdered, {1, 4}, {1, 5}, 0.25, minecraft_alphabet()};
}

TaskConfig TaskConfig::minecraft_ga() {
  return TaskConfig{TaskClass::GlobalAvoidance, {1, 2}, {1, 3}, 0.0, minecraft_alphabet()};
}

TaskConfig TaskConfig::flatworld_po() {
  return TaskConfig{TaskClass::PartiallyOrdered, {1, 1}, {1, 3}, 0.25, flatworld_alphabet()};
}

TaskConfig TaskConfig::flatworld_ga() {
  return TaskConfig{TaskClass::GlobalAvoidance, {1, 1}, {1, 2}, 0.0, flatworld_alphabet()};
}

TaskConfig TaskConfig::desk_po() {
  return TaskConfig{TaskClass::PartiallyOrdered, {1, 2}, {1, 2}, 0.25, desk_alphabet()};
}

TaskConfig TaskConfig::desk_ga() {
  return TaskConfig{TaskClass::GlobalAvoidance, {1, 2}, {1, 2}, 0.0, desk_alphabet()};
}

TaskConfig TaskConfig::preset(std::string_view name) {
  if (name == "minecraft-po") return minecraft_po();
  if (name == "minecraft-ga") return minecraft_ga();
  if (name == "flatworld-po") return flatworld_po();
  if (name == "flatworld-ga") return flatworld_ga();
  if (name == "desk-po") return desk_po();
  if (name == "desk-ga") return desk_ga();
  throw std::invalid_argument("unknown task preset '" + std::string(name) + "'");
}

TaskConfig TaskConfig::with_depth(int depth) const {
  TaskConfig c = *this;
  c.length = {depth, depth};
  return c;
}

TaskConfig TaskConfig::with_conjunctions(int count) const {
  TaskConfig c = *this;
  c.sequences = {count, count};
  return c;
}

TaskConfig depth_config(const TaskConfig& base, bool flatworld) {
  const bool po = base.task_class == TaskClass::PartiallyOrdered;
  if (flatworld) return base.with_depth(po ? 4 : 3);
  return base.with_depth(po ? 15 : 5);
}

TaskConfig conjunction_config(const TaskConfig& base, bool flatworld) {
  const bool po = base.task_class == TaskClass::PartiallyOrdered;
  if (flatworld) return base.with_conjunctions(2);
  return base.with_conjunctions(po ? 12 : 3);
}

void TaskConfig::validate() const {
  if (sequences.min < 1 || sequences.min > sequences.max) throw std::invalid_argument("empty sequences range");
  if (length.min < 1 || length.min > length.max) throw std::invalid_argument("empty length range");
  if (!(disjunction_probability >= 0.0 && disjunction_probability <= 1.0)) {
    throw std::invalid_argument("disjunction probability must lie in [0, 1]");
  }
  const auto props = alphabet.propositions().size();
  if (task_class == TaskClass::GlobalAvoidance && props < 2) {
    throw std::invalid_argument("global avoidance needs at least two propositions");
  }
  if (task_class == TaskClass::PartiallyOrdered && props < (disjunction_probability > 0.0 ? 2u : 1u)) {
    throw std::invalid_argument("alphabet too small for distinct disjuncts");
  }
}

void TaskConfig::write(KvConfig& kv, const std::string& prefix) const {
  kv.set(prefix + "class", to_string(task_class));
  kv.set(prefix + "sequences_min", sequences.min);
  kv.set(prefix + "sequences_max", sequences.max);
  kv.set(prefix + "length_min", length.min);
  kv.set(prefix + "length_max", length.max);
  kv.set(prefix + "disjunction_probability", disjunction_probability);
  std::string props;
  for (auto id : alphabet.propositions()) props += (props.empty() ? "" : ",") + alphabet.name(id);
  kv.set(prefix + "alphabet", props);
}

TaskConfig TaskConfig::read(const KvConfig& kv, const std::string& prefix) {
  TaskConfig c;
  c.task_class = task_class_from_string(kv.get_string(prefix + "class", "po"));
  auto get = [&](const char* key, int fallback) { return static_cast<int>(kv.get_int(prefix + key, fallback)); };
  c.sequences = {get("sequences_min", 1), get("sequences_max", 1)};
  c.length = {get("length_min", 1), get("length_max", 1)};
  c.disjunction_probability = kv.get_double(prefix + "disjunction_probability",
                                            c.task_class == TaskClass::PartiallyOrdered ? 0.25 : 0.0);
  c.alphabet = Alphabet::from_list(kv.require_string(prefix + "alphabet"));
  c.validate();
  return c;
}

Formula sample_po_tree(const TaskConfig& config, Rng& rng) {
  config.validate();
  const auto props = config.alphabet.propositions();
  const int k = draw(rng, config.sequences);
  std::vector<Formula> sequences;
  for (int s = 0; s < k; ++s) {
    const int n = draw(rng, config.length);
    std::vector<Formula> terms;
    for (int i = 0; i < n; ++i) terms.push_back(po_term(config, props, rng));
    Formula seq = Formula::eventually(terms.back());
    for (int i = n - 2; i >= 0; --i) seq = Formula::eventually(Formula::conjunction({terms[i], seq}));
    sequences.push_back(seq);
  }
  return join(std::move(sequences));
}

Formula sample_ga_tree(const TaskConfig& config, Rng& rng) {
  config.validate();
  const auto props = config.alphabet.propositions();
  const auto avoid = pick(rng, props);
  std::vector<ltl::SymbolId> targets;
  for (auto p : props) {
    if (p != avoid) targets.push_back(p);
  }
  const Formula guard = Formula::negation(atom_of(config.alphabet, avoid));
  const int k = draw(rng, config.sequences);
  std::vector<Formula> sequences;
  for (int s = 0; s < k; ++s) {
    const int n = draw(rng, config.length);
    std::vector<ltl::SymbolId> steps;
    for (int i = 0; i < n; ++i) steps.push_back(pick(rng, targets));
    Formula seq = Formula::until(guard, atom_of(config.alphabet, steps.back()));
    for (int i = n - 2; i >= 0; --i) {
      seq = Formula::until(guard, Formula::conjunction({atom_of(config.alphabet, steps[static_cast<std::size_t>(i)]), seq}));
    }
    sequences.push_back(seq);
  }
  return join(std::move(sequences));
}

Formula sample_po(const TaskConfig& config, Rng& rng) { return ltl::canonicalize(sample_po_tree(config, rng)); }

Formula sample_ga(const TaskConfig& config, Rng& rng) { return ltl::canonicalize(sample_ga_tree(config, rng)); }

Formula sample_task(const TaskConfig& config, Rng& rng) {
  return config.task_class == TaskClass::PartiallyOrdered ? sample_po(config, rng) : sample_ga(config, rng);
}

}  // namespace ltlnrm::tasks
