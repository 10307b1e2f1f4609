#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ltlnrm/automata/compile.hpp"
#include "ltlnrm/tasks/sampler.hpp"

namespace ltlnrm::tasks {

using automata::TaskPtr;

struct TaskDataset {
  TaskConfig config;
  std::uint64_t seed = 0;
  std::vector<TaskPtr> tasks;
};

/// Samples formula i from its own counter-derived stream, compiles and
/// minimizes it, and checks the machine against progression. Work is
/// spread over `threads` workers (0 = hardware concurrency); the result
/// does not depend on the thread count. Throws Error naming the formula on
/// any compile or verification failure.
TaskDataset build_dataset(const TaskConfig& config, std::size_t n, std::uint64_t seed,
                          const automata::CompileOptions& options = {}, unsigned threads = 0);

/// Compiles and verifies already sampled formulae, preserving order.
std::vector<TaskPtr> compile_tasks(const std::vector<Formula>& formulas, const Alphabet& alphabet,
                                   const automata::CompileOptions& options = {}, unsigned threads = 0);

/// Directory layout: `config.txt`, `manifest.tsv` with lines
/// `formula<TAB>machines/NNNNNN.nrmm`, and the machine files.
void save_dataset(const TaskDataset& dataset, const std::filesystem::path& dir);
TaskDataset load_dataset(const std::filesystem::path& dir);

}  // namespace ltlnrm::tasks
