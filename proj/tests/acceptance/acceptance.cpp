// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ltlnrm/agent/evaluate.hpp"
#include "ltlnrm/agent/joint_training.hpp"
#include "ltlnrm/automata/compile.hpp"
#include "ltlnrm/automata/minimize.hpp"
#include "ltlnrm/cli/commands.hpp"
#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/env/gridworld.hpp"
#include "ltlnrm/env/product_env.hpp"
#include "ltlnrm/ltl/progression.hpp"
#include "ltlnrm/nrm/forward.hpp"
#include "ltlnrm/nrm/trainer.hpp"
#include "ltlnrm/tasks/dataset.hpp"
#include "product_mdp.hpp"
#include "semantics.hpp"

using namespace ltlnrm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  failures += !o.pass;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "ltlnrm_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------
// Formula corpus shared by the first three checks.

const ltl::Alphabet kAbcd({"a", "b", "c", "d"});

struct Compiled {
  ltl::Formula formula;
  automata::MooreMachine raw;
  automata::MooreMachine min;
};

std::vector<Compiled> corpus() {
  const tasks::TaskConfig po{tasks::TaskClass::PartiallyOrdered, {1, 3}, {1, 3}, 0.25, kAbcd};
  const tasks::TaskConfig ga{tasks::TaskClass::GlobalAvoidance, {1, 2}, {1, 3}, 0.0, kAbcd};
  std::vector<Compiled> out;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = make_rng(20261016, "acceptance-formula", i);
    const auto f = tasks::sample_task(i % 2 == 0 ? po : ga, rng);
    auto raw = automata::compile(f, kAbcd, automata::CompileOptions{10'000, false});
    auto min = automata::minimize(raw);
    out.push_back({f, std::move(raw), std::move(min)});
  }
  return out;
}

struct FormulaSymbolHash {
  std::size_t operator()(const std::pair<ltl::Formula, ltl::SymbolId>& k) const noexcept {
    return k.first.hash() * 31 + k.second;
  }
};

// Every trace of length <= 6, with no early stop at verdicts: the
// progression verdict, the unminimized machine and the minimized machine
// must agree after every prefix.
Outcome progression_equivalence(const std::vector<Compiled>& cs, std::size_t& min_mismatches, double& secs) {
  const auto t0 = Clock::now();
  std::size_t prefixes = 0, mismatches = 0;
  min_mismatches = 0;
  std::string first;
  for (const auto& c : cs) {
    std::unordered_map<std::pair<ltl::Formula, ltl::SymbolId>, ltl::Formula, FormulaSymbolHash> memo;
    std::vector<ltl::SymbolId> trace;
    auto visit = [&](auto&& self, const ltl::Formula& phi, automata::StateId qr, automata::StateId qm) -> void {
      ++prefixes;
      const int verdict = ltl::progression_verdict(phi);
      if (verdict != c.raw.output(qr)) {
        if (mismatches++ == 0) first = ltl::print(c.formula);
      }
      if (c.raw.output(qr) != c.min.output(qm)) ++min_mismatches;
      if (trace.size() == 6) return;
      for (ltl::SymbolId p = 0; p < kAbcd.size(); ++p) {
        auto it = memo.find({phi, p});
        if (it == memo.end()) it = memo.emplace(std::make_pair(phi, p), ltl::progress(phi, p, kAbcd)).first;
        trace.push_back(p);
        self(self, it->second, c.raw.next(qr, p), c.min.next(qm, p));
        trace.pop_back();
      }
    };
    visit(visit, ltl::canonicalize(c.formula), c.raw.initial(), c.min.initial());
  }
  secs = seconds_since(t0);
  Outcome o;
  o.pass = mismatches == 0 && secs < 300.0;
  o.detail = std::to_string(cs.size()) + " formulas, " + std::to_string(prefixes) + " prefixes, " +
             std::to_string(mismatches) + " disagreements, " + fmt("%.1f s", secs) +
             (first.empty() ? "" : ", first failing " + first);
  return o;
}

// Direct-semantics cross-check of progression itself on a subset.
std::size_t semantic_spot_check(const std::vector<Compiled>& cs, std::size_t& checked) {
  std::size_t bad = 0;
  checked = 0;
  for (std::size_t i = 0; i < cs.size(); i += 10) {
    std::vector<ltl::SymbolId> trace;
    auto visit = [&](auto&& self) -> void {
      ++checked;
      const auto q = automata::delta_star(cs[i].min, cs[i].min.initial(), trace);
      bad += oracle::semantic_verdict(cs[i].formula, trace) != cs[i].min.output(q);
      if (trace.size() == 4) return;
      for (ltl::SymbolId p = 0; p < kAbcd.size(); ++p) {
        trace.push_back(p);
        self(self);
        trace.pop_back();
      }
    };
    visit(visit);
  }
  return bad;
}

// ---------------------------------------------------------------------------

std::size_t argmax(std::span<const double> row) {
  return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

Outcome nrm_degenerate(const std::vector<Compiled>& cs) {
  std::set<std::uint64_t> seen;
  std::size_t machines = 0, traces = 0, bad = 0;
  const std::size_t P = kAbcd.size();
  for (const auto& c : cs) {
    if (c.min.num_states() > 6) continue;
    if (!seen.insert(automata::residual_ids(c.min)[c.min.initial()]).second) continue;
    ++machines;
    const nrm::NrmModel model(nrm::init_from_machine(c.min, 1.0, 10.0));
    std::vector<ltl::SymbolId> trace(6, 0);
    // Every length-6 trace; its rows cover every shorter prefix.
    for (std::size_t code = 0; code < 15625; ++code) {
      std::size_t x = code;
      for (auto& s : trace) {
        s = static_cast<ltl::SymbolId>(x % P);
        x /= P;
      }
      Matrix symbols(7, P);
      symbols(0, kAbcd.empty_id()) = 1.0;
      for (std::size_t t = 0; t < 6; ++t) symbols(t + 1, trace[t]) = 1.0;
      const auto pass = nrm::propagate(model, symbols);
      auto q = c.min.initial();
      for (std::size_t t = 0; t <= 6; ++t) {
        if (t > 0) q = c.min.next(q, trace[t - 1]);
        ++traces;
        bad += nrm::reward_of_column(argmax(pass.reward_probs.row(t))) != c.min.output(q) ||
               argmax(pass.state_probs.row(t)) != q;
      }
    }
  }
  return {bad == 0 && machines > 0, std::to_string(machines) + " distinct machines with <= 6 states, " +
                                        std::to_string(traces) + " prefixes, " + std::to_string(bad) + " mismatches"};
}

// ---------------------------------------------------------------------------

nrm::NrmParams random_params(std::size_t Q, std::size_t P, Rng& rng) {
  nrm::NrmParams p;
  p.num_states = Q;
  p.num_symbols = P;
  p.tau = 1.0;
  std::normal_distribution<double> n(0.0, 1.5);
  p.theta_mu.resize(Q);
  p.theta_T.resize(P * Q * Q);
  p.theta_R.resize(Q * nrm::kRewardCount);
  for (auto& v : p.theta_mu) v = n(rng);
  for (auto& v : p.theta_T) v = n(rng);
  for (auto& v : p.theta_R) v = n(rng);
  return p;
}

Outcome gradient_check() {
  const auto t0 = Clock::now();
  auto rng = make_rng(7, "acceptance-fd");
  double worst = 0.0;
  std::size_t params = 0;
  for (int instance = 0; instance < 50; ++instance) {
    const auto Q = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const auto P = static_cast<std::size_t>(uniform_int(rng, 2, 4));
    const auto T = static_cast<std::size_t>(uniform_int(rng, 1, 8));
    const auto D = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const nrm::NrmModel model(random_params(Q, P, rng));
    auto g = nrm::Grounder::random(D, P, rng, 1.0);
    Matrix obs(T, D);
    for (auto& v : obs.data()) v = uniform_real(rng, -1.0, 1.0);
    std::vector<int> targets(T);
    for (auto& y : targets) y = uniform_int(rng, -1, 1);
    const auto grad = nrm::loss_and_gradient(model, g, obs, targets);
    auto check = [&](double& param, double analytic) {
      const double saved = param;
      param = saved + 1e-5;
      const double up = nrm::loss(nrm::forward(model, g, obs).reward_probs, targets);
      param = saved - 1e-5;
      const double down = nrm::loss(nrm::forward(model, g, obs).reward_probs, targets);
      param = saved;
      const double numeric = (up - down) / 2e-5;
      worst = std::max(worst, std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6}));
      ++params;
    };
    for (std::size_t i = 0; i < g.weights().data().size(); ++i) check(g.weights().data()[i], grad.weights.data()[i]);
    for (std::size_t j = 0; j < P; ++j) check(g.bias()[j], grad.bias[j]);
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-4 && secs < 60.0, "50 instances, " + std::to_string(params) + " parameters, worst relative error " +
                                            fmt("%.2e", worst) + ", " + fmt("%.2f s", secs)};
}

// ---------------------------------------------------------------------------

nrm::Episode random_walk(env::ProductEnv& penv, const automata::TaskPtr& task, const nrm::Grounder& g, Rng& rng,
                         std::uint64_t id, std::uint64_t env_seed) {
  penv.set_task(task);
  nrm::Episode e;
  e.id = id;
  e.task = task;
  const int r0 = penv.reset(env_seed);
  auto obs = penv.base().observation();
  e.observations.push_row(obs);
  e.rewards.push_back(r0);
  e.oracle_symbols.push_back(penv.base().oracle_label());
  e.grounder_symbols.push_back(g.argmax(obs));
  while (!penv.done()) {
    const auto step = penv.step(static_cast<std::size_t>(uniform_int(rng, 0, 3)));
    obs = penv.base().observation();
    e.observations.push_row(obs);
    e.rewards.push_back(step.reward);
    e.oracle_symbols.push_back(step.info.oracle_symbol);
    e.grounder_symbols.push_back(g.argmax(obs));
  }
  return e;
}

// 5x5 grid, fresh random layout per episode, mixed PO/GA desk tasks.
double recover_grounder(std::uint64_t seed, double budget_secs, std::size_t& rounds) {
  const auto config = env::GridConfig::desk();
  auto tasks = tasks::build_dataset(tasks::TaskConfig::desk_po(), 500, derive_seed(seed, "recovery-po")).tasks;
  const auto ga = tasks::build_dataset(tasks::TaskConfig::desk_ga(), 500, derive_seed(seed, "recovery-ga")).tasks;
  tasks.insert(tasks.end(), ga.begin(), ga.end());
  const env::GridWorld probe(config);
  auto init_rng = make_rng(seed, "recovery-init");
  const auto initial = nrm::Grounder::random(probe.observation_dim(), probe.alphabet().size(), init_rng);
  env::ProductEnv penv(std::make_unique<env::GridWorld>(config), env::LabelingMode::Oracle, nullptr);
  const auto profile = nrm::GrounderProfile::gridworld();
  nrm::ReplayBuffers buffers(profile);
  auto rng = make_rng(seed, "recovery-walk");
  auto pick = [&] { return tasks[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(tasks.size()) - 1))]; };
  for (std::uint64_t id = 0; buffers.accepted() < 2000; ++id) {
    buffers.offer(random_walk(penv, pick(), initial, rng, id, derive_seed(seed, "recovery-episode", id)));
  }
  std::deque<nrm::EpisodePtr> held_out;
  for (std::uint64_t i = 0; i < 300; ++i) {
    held_out.push_back(std::make_shared<nrm::Episode>(
        random_walk(penv, pick(), initial, rng, 1'000'000 + i, derive_seed(seed, "recovery-held-out", i))));
  }
  const auto t0 = Clock::now();
  nrm::GrounderTrainer trainer(initial, profile, derive_seed(seed, "recovery-trainer"));
  rounds = 0;
  // Validation loss keeps creeping down long after the labels are right, so
  // patience alone rarely fires here; cap the rounds as well.
  while (!trainer.should_stop() && rounds < 1000 && seconds_since(t0) < budget_secs) {
    trainer.run_round(buffers);
    ++rounds;
  }
  return nrm::grounder_accuracy(trainer.best(), held_out);
}

Outcome grounder_recovery() {
  std::ostringstream detail;
  int ok = 0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto ts = Clock::now();
    std::size_t rounds = 0;
    const double acc = recover_grounder(seed, 600.0, rounds);
    const double secs = seconds_since(ts);
    ok += acc >= 0.95 && secs <= 600.0;
    detail << (seed > 1 ? "; " : "") << "seed " << seed << " " << fmt("%.4f", acc) << " (" << rounds << " rounds, "
           << fmt("%.0f s", secs) << ")";
  }
  return {ok >= 4, std::to_string(ok) + "/5 seeds >= 0.95 held-out accuracy [" + detail.str() + "], " +
                       fmt("%.0f s total", seconds_since(t0))};
}

// ---------------------------------------------------------------------------

struct SeedRuns {
  std::uint64_t seed;
  std::map<std::string, agent::EvalRow> oracle, learned;
  std::string learned_report;
};

std::map<std::string, agent::EvalRow> by_distribution(const std::vector<agent::EvalRow>& rows) {
  std::map<std::string, agent::EvalRow> out;
  for (const auto& r : rows) out[r.distribution] = r;
  return out;
}

std::vector<SeedRuns> desk_runs(const fs::path& dir) {
  std::vector<SeedRuns> out;
  std::ostringstream sink;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SeedRuns runs{seed, {}, {}, {}};
    for (auto mode : {env::LabelingMode::Oracle, env::LabelingMode::Learned}) {
      auto config = cli::defaults_for(cli::EnvProfile::Desk);
      config.seed = seed;
      config.layout_seed = seed;
      config.eval_seeds = {seed};
      config.labeling = mode;
      const auto run_dir =
          dir / ("desk-" + std::to_string(seed) + (mode == env::LabelingMode::Oracle ? "-oracle" : "-learned"));
      cli::train_run(config, run_dir, sink);
      const auto rows = by_distribution(cli::eval_run(run_dir, sink));
      if (mode == env::LabelingMode::Oracle) {
        runs.oracle = rows;
      } else {
        runs.learned = rows;
        runs.learned_report = read_text_file(run_dir / "report.txt");
      }
    }
    out.push_back(std::move(runs));
  }
  return out;
}

Outcome joint_parity(const std::vector<SeedRuns>& runs) {
  int ok = 0;
  std::ostringstream detail;
  for (const auto& r : runs) {
    const double o = r.oracle.at("base").success_rate, l = r.learned.at("base").success_rate;
    ok += l >= 0.9 * o;
    detail << (r.seed > 1 ? "; " : "") << "seed " << r.seed << " learned " << fmt("%.3f", l) << " vs oracle "
           << fmt("%.3f", o);
  }
  return {ok >= 4, std::to_string(ok) + "/5 seeds at >= 0.9x oracle success on 200 held-out base tasks [" +
                       detail.str() + "]"};
}

std::string results_table(const std::vector<SeedRuns>& runs) {
  std::ostringstream out;
  out << "  desk-scale PO tasks, mean over " << runs.size() << " seeds, total return (discounted return)\n";
  out << "  distribution   oracle labels    learned grounder\n";
  for (const char* d : {"base", "+dep.", "+conj."}) {
    double ot = 0, od = 0, lt = 0, ld = 0;
    for (const auto& r : runs) {
      ot += r.oracle.at(d).total_return;
      od += r.oracle.at(d).discounted_return;
      lt += r.learned.at(d).total_return;
      ld += r.learned.at(d).discounted_return;
    }
    const double n = static_cast<double>(runs.size());
    char line[160];
    std::snprintf(line, sizeof line, "  %-14s %-16s %s\n", d, agent::table_cell(ot / n, od / n).c_str(),
                  agent::table_cell(lt / n, ld / n).c_str());
    out << line;
  }
  return out.str();
}

Outcome zero_shot(const std::vector<SeedRuns>& runs) {
  int eligible = 0, ok = 0;
  bool shaped = true;
  std::ostringstream detail;
  for (const auto& r : runs) {
    for (const char* d : {"base", "+dep.", "+conj."}) {
      shaped = shaped && r.learned.count(d) && r.learned_report.find(d) != std::string::npos;
    }
    const double base = r.learned.at("base").success_rate, conj = r.learned.at("+conj.").success_rate;
    detail << (r.seed > 1 ? "; " : "") << "seed " << r.seed << " base " << fmt("%.3f", base) << " +conj. "
           << fmt("%.3f", conj);
    if (base >= 0.9) {
      ++eligible;
      ok += conj > 0.0;
    }
  }
  return {shaped && ok == eligible, std::to_string(ok) + "/" + std::to_string(eligible) +
                                        " seeds with base >= 0.9 have +conj. success > 0, report rows base/+dep./+conj. " +
                                        (shaped ? "present" : "missing") + " [" + detail.str() + "]"};
}

// ---------------------------------------------------------------------------

Outcome product_mdp() {
  const auto t0 = Clock::now();
  auto config = env::GridConfig::desk();
  // A layout whose egocentric views are pairwise distinct, so that tabular
  // keys identify cells.
  for (std::uint64_t s = 0;; ++s) {
    config.fixed_layout_seed = s;
    const auto layout = env::grid_reset(config, 0);
    std::set<std::uint64_t> keys;
    for (int r = 0; r < layout.size; ++r) {
      for (int c = 0; c < layout.size; ++c) {
        auto at = layout;
        at.row = r;
        at.col = c;
        keys.insert(env::GridWorld::from_state(config, at).observation_key());
      }
    }
    if (keys.size() == 25) break;
  }
  const auto layout = env::grid_reset(config, 0);
  const auto alphabet = env::GridWorld(config).alphabet();

  std::vector<automata::TaskPtr> tasks;
  std::set<ltl::Formula> seen;
  for (std::uint64_t i = 0; tasks.size() < 12; ++i) {
    auto rng = make_rng(99, "acceptance-mdp-task", i);
    const auto f = tasks::sample_task(i % 2 == 0 ? tasks::TaskConfig::desk_po() : tasks::TaskConfig::desk_ga(), rng);
    if (!seen.insert(f).second) continue;
    auto t = automata::compile_task(f, alphabet);
    if (t->machine.num_states() <= 6 && t->machine.num_states() >= 3) tasks.push_back(std::move(t));
  }

  agent::JointConfig jc;
  jc.mode = env::LabelingMode::Oracle;
  jc.agent.alpha = 1.0;
  jc.agent.epsilon_start = jc.agent.epsilon_end = 1.0;
  jc.agent.episodes = 60'000;
  jc.seed = 99;
  const auto make_env = [config] { return std::make_unique<env::GridWorld>(config); };
  const auto result = agent::train_joint(make_env, tasks, nrm::Grounder(0, alphabet.size()), jc);

  double worst = 0.0;
  std::size_t starts = 0;
  for (const auto& t : tasks) {
    const oracle::GridProduct product(layout, t->machine, jc.agent.gamma);
    const auto q_star = product.optimal_q();
    const auto ids = automata::residual_ids(t->machine);
    const auto Q = t->machine.num_states();
    const auto greedy = [&](std::size_t s) {
      auto at = layout;
      const auto cell = static_cast<int>(s / Q);
      at.row = cell / layout.size;
      at.col = cell % layout.size;
      const auto v = result.table.values({env::GridWorld::from_state(config, at).observation_key(), ids[s % Q]});
      const double best = *std::max_element(v.begin(), v.end());
      std::array<double, 4> pi{};
      const double n = static_cast<double>(std::count(v.begin(), v.end(), best));
      for (std::size_t a = 0; a < 4; ++a) pi[a] = v[a] == best ? 1.0 / n : 0.0;
      return pi;
    };
    const auto v_pi = product.policy_values(greedy);
    for (int r = 0; r < layout.size; ++r) {
      for (int c = 0; c < layout.size; ++c) {
        if (layout.at(r, c) >= 0) continue;
        const auto s = product.index(r, c, t->machine.initial());
        worst = std::max(worst, std::abs(v_pi[s] - *std::max_element(q_star[s].begin(), q_star[s].end())));
        ++starts;
      }
    }
  }
  return {worst <= 1e-6, std::to_string(tasks.size()) + " tasks with 3-6 states, " + std::to_string(starts) +
                             " start states, max |V_greedy - V*| = " + fmt("%.2e", worst) + ", " +
                             fmt("%.1f s", seconds_since(t0))};
}

// ---------------------------------------------------------------------------

Outcome determinism(const fs::path& dir) {
  auto config = cli::defaults_for(cli::EnvProfile::Desk);
  config.seed = 42;
  config.agent.episodes = 4000;
  config.eval_seeds = {0, 1};
  config.eval_episodes = 300;
  std::ostringstream sink;
  std::vector<std::string> files{"metrics.csv", "episodes.csv", "grounder_log.csv", "q_table.nrmq", "grounder.nrmg"};
  std::vector<std::vector<std::uint8_t>> first;
  bool same = true;
  for (int rep = 0; rep < 2; ++rep) {
    const auto run_dir = dir / ("determinism-" + std::to_string(rep));
    cli::train_run(config, run_dir, sink);
    cli::eval_run(run_dir, sink);
    for (std::size_t i = 0; i < files.size(); ++i) {
      auto bytes = read_file(run_dir / files[i]);
      if (rep == 0) {
        first.push_back(std::move(bytes));
      } else {
        same = same && bytes == first[i];
      }
    }
  }
  // A second evaluation of the same run must not change the metrics.
  const auto before = read_file(dir / "determinism-0" / "metrics.csv");
  cli::eval_run(dir / "determinism-0", sink);
  same = same && read_file(dir / "determinism-0" / "metrics.csv") == before;
  return {same, std::string("two identical learned-labeling runs (seed 42) and a repeated evaluation: ") +
                    (same ? "metrics, logs, table and grounder bit-identical" : "outputs differ")};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const auto dir = work_dir();

  const auto cs = corpus();
  std::size_t min_mismatches = 0;
  double secs = 0.0;
  report("progression/automaton equivalence", progression_equivalence(cs, min_mismatches, secs));
  report("minimization soundness",
         {min_mismatches == 0, std::to_string(min_mismatches) + " output disagreements between minimized and "
                                                               "unminimized machines on the same prefixes"});
  std::size_t checked = 0;
  const auto semantic_bad = semantic_spot_check(cs, checked);
  std::cout << "  note: direct-semantics oracle on 100 formulas, " << checked << " prefixes up to length 4: "
            << semantic_bad << " disagreements" << std::endl;
  failures += semantic_bad != 0;

  report("NRM degenerate equivalence", nrm_degenerate(cs));
  report("BPTT gradient check", gradient_check());
  report("grounder recovery", grounder_recovery());

  const auto runs = desk_runs(dir);
  report("joint-training parity", joint_parity(runs));
  report("zero-shot structure", zero_shot(runs));
  std::cout << results_table(runs);

  report("product-MDP optimality", product_mdp());
  report("determinism", determinism(dir));

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
            << fmt("%.0f s", seconds_since(t0)) << std::endl;
  fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
