#include "ltlnrm/tasks/dataset.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "ltlnrm/automata/serialize.hpp"
#include "ltlnrm/automata/verify.hpp"
#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/core/error.hpp"
#include "ltlnrm/ltl/parser.hpp"

namespace ltlnrm::tasks {

namespace {

TaskPtr compile_checked(const Formula& f, const Alphabet& alphabet, const automata::CompileOptions& options) {
  try {
    auto task = automata::compile_task(f, alphabet, options);
    if (auto d = automata::verify_against_progression(f, task->machine)) {
      throw Error("machine disagrees with progression on " + d->describe(alphabet));
    }
    return task;
  } catch (const std::exception& e) {
    throw Error("task '" + ltl::print(f) + "': " + e.what());
  }
}

// Runs body(i) for i in [0, n) on up to `threads` workers; rethrows the
// failure with the lowest index.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string machine_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "machines/%06zu.nrmm", i);
  return buf;
}

}  // namespace

std::vector<TaskPtr> compile_tasks(const std::vector<Formula>& formulas, const Alphabet& alphabet,
                                   const automata::CompileOptions& options, unsigned threads) {
  std::vector<TaskPtr> out(formulas.size());
  parallel_for(formulas.size(), threads,
               [&](std::size_t i) { out[i] = compile_checked(formulas[i], alphabet, options); });
  return out;
}

TaskDataset build_dataset(const TaskConfig& config, std::size_t n, std::uint64_t seed,
                          const automata::CompileOptions& options, unsigned threads) {
  if (n == 0) throw std::invalid_argument("dataset size must be positive");
  config.validate();
  std::vector<Formula> formulas(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = make_rng(seed, "task", i);
    formulas[i] = sample_task(config, rng);
  }
  return TaskDataset{config, seed, compile_tasks(formulas, config.alphabet, options, threads)};
}

void save_dataset(const TaskDataset& dataset, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "machines", ec);
  if (ec) throw IoError("cannot create " + (dir / "machines").string() + ": " + ec.message());
  KvConfig kv;
  dataset.config.write(kv);
  kv.set("seed", dataset.seed);
  kv.set("count", static_cast<std::uint64_t>(dataset.tasks.size()));
  kv.save(dir / "config.txt");
  std::string manifest;
  for (std::size_t i = 0; i < dataset.tasks.size(); ++i) {
    const auto name = machine_name(i);
    automata::save_machine(dataset.tasks[i]->machine, dir / name);
    manifest += ltl::print(dataset.tasks[i]->formula) + "\t" + name + "\n";
  }
  write_text_file(dir / "manifest.tsv", manifest);
}

TaskDataset load_dataset(const std::filesystem::path& dir) {
  const auto kv = KvConfig::load(dir / "config.txt");
  TaskDataset ds;
  ds.config = TaskConfig::read(kv);
  ds.seed = kv.get_u64("seed", 0);
  const auto count = kv.get_u64("count", 0);
  const auto text = read_text_file(dir / "manifest.tsv");
  std::size_t offset = 0;
  while (offset < text.size()) {
    const auto eol = std::min(text.find('\n', offset), text.size());
    const std::string_view line(text.data() + offset, eol - offset);
    if (!line.empty()) {
      const auto tab = line.find('\t');
      if (tab == std::string_view::npos) throw MalformedFileError("manifest line without a tab", offset);
      const auto formula = ltl::parse(line.substr(0, tab), ds.config.alphabet);
      auto machine = automata::load_machine(dir / std::string(line.substr(tab + 1)));
      if (!(machine.alphabet() == ds.config.alphabet)) {
        throw MalformedFileError("machine alphabet differs from the dataset alphabet", offset);
      }
      ds.tasks.push_back(std::make_shared<const automata::Task>(automata::Task{formula, std::move(machine)}));
    }
    offset = eol + 1;
  }
  if (ds.tasks.size() != count) throw MalformedFileError("manifest length differs from the recorded count", 0);
  return ds;
}

}  // namespace ltlnrm::tasks
