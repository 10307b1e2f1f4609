#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltlnrm/agent/evaluate.hpp"
#include "ltlnrm/cli/experiment_config.hpp"

namespace ltlnrm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kIoFailure = 3 };

/// Runs `body`, mapping escaping exceptions to exit codes: I/O failures to
/// kIoFailure, everything else to kUsage. Diagnostics go to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

struct CompileArgs {
  std::string formula;
  std::string alphabet = "pick,lava,door,apple,egg";
  std::string out;  // machine file, optional
  std::string dot;  // DOT file, optional
  bool minimize = true;
  std::size_t state_cap = 10'000;
};
int cmd_compile(const CompileArgs& args, std::ostream& out);

struct SampleArgs {
  std::string preset = "minecraft-po";
  std::string config;  // task.* keys; overrides the preset
  std::size_t count = 10;
  std::uint64_t seed = 0;
};
int cmd_sample(const SampleArgs& args, std::ostream& out);

struct DatasetArgs {
  std::string preset = "minecraft-po";
  std::string config;
  std::size_t count = 10'000;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
};
int cmd_dataset(const DatasetArgs& args, std::ostream& out);

struct TrainArgs {
  std::string config;
  std::string run_dir;  // default: timestamped directory under output_dir
  std::optional<std::uint64_t> seed;
};
int cmd_train(const TrainArgs& args, std::ostream& out);

struct EvalArgs {
  std::string run_dir;
  std::optional<std::uint64_t> seed;  // must match the run's seed when given
};
int cmd_eval(const EvalArgs& args, std::ostream& out);

struct VerifyArgs {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::size_t max_length = 6;
  std::string alphabet = "a,b,c,d";
};

struct VerifyReport {
  std::size_t formulas = 0;
  std::size_t progression_failures = 0;    // machine vs iterated progression
  std::size_t minimization_failures = 0;   // minimized vs unminimized machine
  std::vector<std::string> messages;
  bool ok() const noexcept { return progression_failures == 0 && minimization_failures == 0; }
};

/// Samples `count` formulas, alternating partially-ordered and global
/// avoidance grammars, and checks every trace up to `max_length`.
VerifyReport run_verification(const VerifyArgs& args);
int cmd_verify(const VerifyArgs& args, std::ostream& out);

/// Training tasks of an experiment: the configured dataset, or a sampled one.
std::vector<automata::TaskPtr> training_tasks(const ExperimentConfig& config);

/// Evaluation tasks drawn from `task_config`, excluding formulas in
/// `exclude` and formulas whose machines exceed the state cap; the number
/// of rejected draws is added to `rejected`.
std::vector<automata::TaskPtr> sample_eval_tasks(const tasks::TaskConfig& task_config, std::size_t n,
                                                 std::uint64_t seed, std::string_view stream,
                                                 const std::set<ltl::Formula>& exclude, std::size_t& rejected);

/// Trains and writes config.txt, q_table.nrmq, grounder.nrmg,
/// grounder_log.csv, episodes.csv and tasks.txt into `run_dir`.
void train_run(const ExperimentConfig& config, const std::filesystem::path& run_dir, std::ostream& log);

/// Evaluates a trained run on the base, +dep. and +conj. distributions for
/// every evaluation seed; writes metrics.csv and report.txt.
std::vector<agent::EvalRow> eval_run(const std::filesystem::path& run_dir, std::ostream& log);

std::filesystem::path timestamped_run_dir(const std::filesystem::path& output_dir);

}  // namespace ltlnrm::cli
