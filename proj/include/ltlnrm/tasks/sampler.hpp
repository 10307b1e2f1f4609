#pragma once

#include <string>

#include "ltlnrm/core/kv_config.hpp"
#include "ltlnrm/core/rng.hpp"
#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::tasks {

using ltl::Alphabet;
using ltl::Formula;

enum class TaskClass { PartiallyOrdered, GlobalAvoidance };

std::string to_string(TaskClass c);
TaskClass task_class_from_string(std::string_view text);

struct Range {
  int min = 1;
  int max = 1;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Grammar parameters. `alphabet` includes `_empty`, which is never drawn.
struct TaskConfig {
  TaskClass task_class = TaskClass::PartiallyOrdered;
  Range sequences;
  Range length;
  double disjunction_probability = 0.25;  // partially-ordered terms only
  Alphabet alphabet;

  static TaskConfig minecraft_po();
  static TaskConfig minecraft_ga();
  static TaskConfig flatworld_po();
  static TaskConfig flatworld_ga();
  /// Three propositions a, b, c; one or two sequences of length one or two.
  static TaskConfig desk_po();
  static TaskConfig desk_ga();
  /// Named presets: minecraft-po, minecraft-ga, flatworld-po, flatworld-ga,
  /// desk-po, desk-ga.
  static TaskConfig preset(std::string_view name);

  /// Same grammar with the sequence length fixed to `depth`.
  TaskConfig with_depth(int depth) const;
  /// Same grammar with the number of sequences fixed to `count`.
  TaskConfig with_conjunctions(int count) const;

  /// Throws std::invalid_argument on empty ranges or a too small alphabet.
  void validate() const;

  void write(KvConfig& kv, const std::string& prefix = "task.") const;
  static TaskConfig read(const KvConfig& kv, const std::string& prefix = "task.");

  friend bool operator==(const TaskConfig&, const TaskConfig&) = default;
};

/// Generalization configurations used for zero-shot evaluation.
TaskConfig depth_config(const TaskConfig& base, bool flatworld);
TaskConfig conjunction_config(const TaskConfig& base, bool flatworld);

/// And of k sequences F(t1 & F(t2 & ... F tn)), each term an atom or, with
/// the configured probability, a disjunction of two distinct atoms. The
/// tree follows the grammar exactly and is not canonicalized.
Formula sample_po_tree(const TaskConfig& config, Rng& rng);
/// Sequences !v U (p1 & (!v U (p2 & ...))) sharing one avoided atom v that
/// is never a target. Not canonicalized.
Formula sample_ga_tree(const TaskConfig& config, Rng& rng);

Formula sample_po(const TaskConfig& config, Rng& rng);
Formula sample_ga(const TaskConfig& config, Rng& rng);
/// Dispatches on the configured class; result is canonical.
Formula sample_task(const TaskConfig& config, Rng& rng);

}  // namespace ltlnrm::tasks
