#include <iostream>

#include "CLI11.hpp"
#include "ltlnrm/cli/commands.hpp"

using namespace ltlnrm::cli;

int main(int argc, char** argv) {
  CLI::App app{"ltlnrm: LTL tasks, reward machines and grounder learning"};
  app.require_subcommand(1);

  CompileArgs compile;
  auto* c = app.add_subcommand("compile", "Compile a formula to a Moore machine");
  c->add_option("formula", compile.formula, "LTL formula")->required();
  c->add_option("--alphabet", compile.alphabet, "Comma separated symbols");
  c->add_option("--out", compile.out, "Write the machine file");
  c->add_option("--dot", compile.dot, "Write a DOT rendering");
  c->add_option("--state-cap", compile.state_cap, "Maximum number of states");
  c->add_flag("!--no-minimize", compile.minimize, "Skip minimization");

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Print sampled task formulas");
  s->add_option("--preset", sample.preset, "minecraft-po, minecraft-ga, flatworld-po, flatworld-ga, desk-po, desk-ga");
  s->add_option("--config", sample.config, "Task config file (task.* keys)");
  s->add_option("--count", sample.count);
  s->add_option("--seed", sample.seed);

  DatasetArgs dataset;
  auto* d = app.add_subcommand("dataset", "Sample, compile and save a task dataset");
  d->add_option("--preset", dataset.preset);
  d->add_option("--config", dataset.config);
  d->add_option("--count", dataset.count);
  d->add_option("--seed", dataset.seed);
  d->add_option("--out", dataset.out)->required();
  d->add_option("--threads", dataset.threads, "0 uses all cores");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Jointly train the agent and the grounder");
  t->add_option("--config", train.config, "Experiment config")->required();
  t->add_option("--run-dir", train.run_dir, "Output directory (default: timestamped under output_dir)");
  t->add_option("--seed", train.seed, "Override the config seed");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate a trained run");
  e->add_option("--run-dir", eval.run_dir)->required();
  e->add_option("--seed", eval.seed, "Must match the run's seed");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check compiled machines against progression");
  v->add_option("--count", verify.count);
  v->add_option("--seed", verify.seed);
  v->add_option("--max-length", verify.max_length);
  v->add_option("--alphabet", verify.alphabet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  return run_guarded(
      [&] {
        if (*c) return cmd_compile(compile, std::cout);
        if (*s) return cmd_sample(sample, std::cout);
        if (*d) return cmd_dataset(dataset, std::cout);
        if (*t) return cmd_train(train, std::cout);
        if (*e) return cmd_eval(eval, std::cout);
        return cmd_verify(verify, std::cout);
      },
      std::cerr);
}
