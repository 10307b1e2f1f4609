#include "ltlnrm/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "ltlnrm/automata/minimize.hpp"
#include "ltlnrm/automata/serialize.hpp"
#include "ltlnrm/automata/verify.hpp"
#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/core/error.hpp"
#include "ltlnrm/ltl/parser.hpp"
#include "ltlnrm/tasks/dataset.hpp"

namespace ltlnrm::cli {

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const MalformedFileError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

namespace {

tasks::TaskConfig task_config_from(const std::string& preset, const std::string& config_path) {
  if (config_path.empty()) return tasks::TaskConfig::preset(preset);
  return tasks::TaskConfig::read(KvConfig::load(config_path));
}

std::map<int, std::size_t> output_histogram(const automata::MooreMachine& m) {
  std::map<int, std::size_t> h{{-1, 0}, {0, 0}, {1, 0}};
  for (auto o : m.outputs()) ++h[o];
  return h;
}

}  // namespace

int cmd_compile(const CompileArgs& args, std::ostream& out) {
  const auto alphabet = ltl::Alphabet::from_list(args.alphabet);
  const auto f = ltl::parse(args.formula, alphabet);
  const auto m = automata::compile(f, alphabet, automata::CompileOptions{args.state_cap, args.minimize});
  const auto h = output_histogram(m);
  out << "formula: " << ltl::print(f) << '\n';
  out << "states: " << m.num_states() << '\n';
  out << "outputs: +1=" << h.at(1) << " 0=" << h.at(0) << " -1=" << h.at(-1) << '\n';
  if (!args.out.empty()) automata::save_machine(m, args.out);
  if (!args.dot.empty()) write_text_file(args.dot, automata::to_dot(m));
  return kOk;
}

int cmd_sample(const SampleArgs& args, std::ostream& out) {
  const auto config = task_config_from(args.preset, args.config);
  for (std::size_t i = 0; i < args.count; ++i) {
    auto rng = make_rng(args.seed, "task", i);
    out << ltl::print(tasks::sample_task(config, rng)) << '\n';
  }
  return kOk;
}

int cmd_dataset(const DatasetArgs& args, std::ostream& out) {
  if (args.out.empty()) throw std::invalid_argument("--out is required");
  const auto config = task_config_from(args.preset, args.config);
  const auto ds = tasks::build_dataset(config, args.count, args.seed, {}, args.threads);
  tasks::save_dataset(ds, args.out);
  std::size_t states = 0;
  for (const auto& t : ds.tasks) states += t->machine.num_states();
  out << "tasks: " << ds.tasks.size() << '\n';
  out << "mean states: " << static_cast<double>(states) / static_cast<double>(ds.tasks.size()) << '\n';
  out << "written: " << args.out << '\n';
  return kOk;
}

std::filesystem::path timestamped_run_dir(const std::filesystem::path& output_dir) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream name;
  name << "run-" << std::put_time(&tm, "%Y%m%d-%H%M%S");
  auto dir = output_dir / name.str();
  for (int i = 1; std::filesystem::exists(dir); ++i) dir = output_dir / (name.str() + "-" + std::to_string(i));
  return dir;
}

std::vector<automata::TaskPtr> training_tasks(const ExperimentConfig& config) {
  if (!config.dataset.empty()) {
    auto ds = tasks::load_dataset(config.dataset);
    if (!(ds.config.alphabet == config.task.alphabet)) {
      throw std::invalid_argument("dataset alphabet differs from the experiment alphabet");
    }
    return ds.tasks;
  }
  return tasks::build_dataset(config.task, config.train_tasks, derive_seed(config.seed, "train-tasks")).tasks;
}

std::vector<automata::TaskPtr> sample_eval_tasks(const tasks::TaskConfig& task_config, std::size_t n,
                                                 std::uint64_t seed, std::string_view stream,
                                                 const std::set<ltl::Formula>& exclude, std::size_t& rejected) {
  std::vector<automata::TaskPtr> out;
  const std::size_t max_draws = 1000 * n;
  for (std::size_t draw = 0; out.size() < n; ++draw) {
    if (draw == max_draws) throw Error("could not draw enough evaluation tasks for " + std::string(stream));
    auto rng = make_rng(seed, stream, draw);
    const auto f = tasks::sample_task(task_config, rng);
    if (exclude.count(f)) {
      ++rejected;
      continue;
    }
    try {
      out.push_back(automata::compile_task(f, task_config.alphabet));
    } catch (const StateCapExceededError&) {
      ++rejected;
    }
  }
  return out;
}

void train_run(const ExperimentConfig& config, const std::filesystem::path& run_dir, std::ostream& log) {
  std::filesystem::create_directories(run_dir);
  config.save(run_dir / "config.txt");
  const auto tasks = training_tasks(config);
  std::string listing;
  for (const auto& t : tasks) listing += ltl::print(t->formula) + '\n';
  write_text_file(run_dir / "tasks.txt", listing);

  const auto make_env = config.env_factory();
  const auto probe = make_env();
  auto init_rng = make_rng(config.seed, "grounder-init");
  auto initial = nrm::Grounder::random(probe->observation_dim(), probe->alphabet().size(), init_rng,
                                       config.grounder_init_scale);
  const auto result = agent::train_joint(make_env, tasks, std::move(initial), config.joint_config());

  agent::save_table(result.table, run_dir / "q_table.nrmq");
  nrm::save_grounder(result.grounder, run_dir / "grounder.nrmg");
  write_text_file(run_dir / "grounder_log.csv", nrm::training_log_csv(result.rounds));
  write_text_file(run_dir / "episodes.csv", agent::episode_stats_csv(result.episodes));
  std::size_t successes = 0;
  for (const auto& e : result.episodes) successes += e.total_return > 0;
  log << "episodes: " << result.episodes.size() << '\n';
  log << "training success rate: " << static_cast<double>(successes) / static_cast<double>(result.episodes.size())
      << '\n';
  log << "grounder rounds: " << result.rounds.size() << '\n';
  if (!result.rounds.empty()) log << "grounder accuracy: " << result.rounds.back().grounder_accuracy << '\n';
  log << "table rows: " << result.table.size() << '\n';
}

std::vector<agent::EvalRow> eval_run(const std::filesystem::path& run_dir, std::ostream& log) {
  const auto config = ExperimentConfig::load(run_dir / "config.txt");
  const auto table = agent::load_table(run_dir / "q_table.nrmq");
  const auto grounder = nrm::load_grounder(run_dir / "grounder.nrmg");
  std::set<ltl::Formula> seen;
  for (const auto& t : training_tasks(config)) seen.insert(t->formula);

  struct Distribution {
    std::string name;
    tasks::TaskConfig config;
  };
  const std::vector<Distribution> distributions{
      {"base", config.task},
      {"+dep.", config.task.with_depth(config.eval_depth)},
      {"+conj.", config.task.with_conjunctions(config.eval_conjunctions)}};
  const auto make_env = config.env_factory();
  const nrm::Grounder* g = config.labeling == env::LabelingMode::Learned ? &grounder : nullptr;
  std::vector<agent::EvalRow> rows;
  std::string notes;
  for (const auto& d : distributions) {
    std::size_t rejected = 0;
    const auto tasks =
        sample_eval_tasks(d.config, config.eval_tasks, derive_seed(config.seed, "eval-tasks"), d.name, seen, rejected);
    notes += d.name + ": " + std::to_string(tasks.size()) + " tasks, " + std::to_string(rejected) +
             " draws rejected (seen in training or over the state cap)\n";
    for (auto seed : config.eval_seeds) {
      agent::EvalOptions options;
      options.distribution = d.name;
      options.episodes = config.eval_episodes;
      options.seed = seed;
      options.timeout = config.agent.timeout;
      options.gamma = config.agent.gamma;
      rows.push_back(agent::evaluate(table, make_env, tasks, config.labeling, g, options));
    }
  }
  write_text_file(run_dir / "metrics.csv", agent::eval_csv(rows));
  const auto report = agent::table_report(rows) + "timeout: " + std::to_string(config.agent.timeout) + "\n" + notes;
  write_text_file(run_dir / "report.txt", report);
  log << report;
  return rows;
}

int cmd_train(const TrainArgs& args, std::ostream& out) {
  if (args.config.empty()) throw std::invalid_argument("--config is required");
  auto config = ExperimentConfig::load(args.config);
  if (args.seed) config.seed = *args.seed;
  const std::filesystem::path dir = args.run_dir.empty() ? timestamped_run_dir(config.output_dir) : std::filesystem::path(args.run_dir);
  train_run(config, dir, out);
  out << "run directory: " << dir.string() << '\n';
  return kOk;
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  if (args.run_dir.empty()) throw std::invalid_argument("--run-dir is required");
  const auto config = ExperimentConfig::load(std::filesystem::path(args.run_dir) / "config.txt");
  if (args.seed && *args.seed != config.seed) {
    throw std::invalid_argument("seed " + std::to_string(*args.seed) + " does not match the run's seed " +
                                std::to_string(config.seed));
  }
  eval_run(args.run_dir, out);
  return kOk;
}

VerifyReport run_verification(const VerifyArgs& args) {
  const auto alphabet = ltl::Alphabet::from_list(args.alphabet);
  tasks::TaskConfig po{tasks::TaskClass::PartiallyOrdered, {1, 3}, {1, 3}, 0.25, alphabet};
  tasks::TaskConfig ga{tasks::TaskClass::GlobalAvoidance, {1, 2}, {1, 3}, 0.0, alphabet};
  VerifyReport report;
  for (std::size_t i = 0; i < args.count; ++i) {
    auto rng = make_rng(args.seed, "verify", i);
    const auto f = tasks::sample_task(i % 2 == 0 ? po : ga, rng);
    const auto raw = automata::compile(f, alphabet, automata::CompileOptions{10'000, false});
    const auto min = automata::minimize(raw);
    ++report.formulas;
    if (auto d = automata::verify_traces(f, min, args.max_length)) {
      ++report.progression_failures;
      report.messages.push_back(ltl::print(f) + ": " + d->describe(alphabet));
    }
    if (auto d = automata::compare_machines(raw, min, args.max_length)) {
      ++report.minimization_failures;
      report.messages.push_back(ltl::print(f) + " (minimization): " + d->describe(alphabet));
    }
  }
  return report;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto report = run_verification(args);
  out << "formulas: " << report.formulas << '\n';
  out << "progression disagreements: " << report.progression_failures << '\n';
  out << "minimization disagreements: " << report.minimization_failures << '\n';
  for (const auto& m : report.messages) out << "  " << m << '\n';
  return report.ok() ? kOk : kVerificationFailed;
}

}  // namespace ltlnrm::cli
