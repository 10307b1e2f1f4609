#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <set>

#include "ltlnrm/core/rng.hpp"
#include "ltlnrm/ltl/parser.hpp"
#include "ltlnrm/tasks/dataset.hpp"
#include "ltlnrm/tasks/sampler.hpp"

using namespace ltlnrm;
using namespace ltlnrm::tasks;
using ltl::Op;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ltlnrm_tasks_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.op() != Op::And) return {f};
  return {f.children().begin(), f.children().end()};
}

// Walks F(t1 & F(t2 & ... F tn)) and returns the terms, or fails.
std::vector<Formula> po_sequence(const Formula& f) {
  std::vector<Formula> terms;
  Formula cur = f;
  while (true) {
    EXPECT_EQ(cur.op(), Op::Eventually);
    if (cur.op() != Op::Eventually) return terms;
    const auto& body = cur.operand();
    if (body.op() == Op::And && body.children().size() == 2 && body.children()[1].op() == Op::Eventually) {
      terms.push_back(body.children()[0]);
      cur = body.children()[1];
    } else {
      terms.push_back(body);
      return terms;
    }
  }
}

void count_ops(const Formula& f, std::map<Op, int>& counts) {
  ++counts[f.op()];
  for (const auto& c : f.children()) count_ops(c, counts);
}

}  // namespace

TEST(Sampler, DegenerateGrammar) {
  TaskConfig c{TaskClass::PartiallyOrdered, {1, 1}, {1, 1}, 0.0, Alphabet({"a"})};
  const auto expected = Formula::eventually(ltl::parse("a", c.alphabet));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(sample_po_tree(c, rng), expected);
  }
  TaskConfig g{TaskClass::GlobalAvoidance, {1, 1}, {1, 1}, 0.0, Alphabet({"a", "b"})};
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    seen.insert(ltl::print(sample_ga_tree(g, rng)));
  }
  EXPECT_EQ(seen, (std::set<std::string>{"(!a U b)", "(!b U a)"}));
}

TEST(Sampler, DisjunctionFrequency) {
  TaskConfig c = TaskConfig::minecraft_po();
  c.sequences = {1, 1};
  c.length = {1, 1};
  int disjunctions = 0;
  const int n = 10'000;
  for (int i = 0; i < n; ++i) {
    auto rng = make_rng(42, "disjunction", static_cast<std::uint64_t>(i));
    const auto term = sample_po_tree(c, rng).operand();
    if (term.op() == Op::Or) {
      ++disjunctions;
      ASSERT_EQ(term.children().size(), 2u);
      EXPECT_NE(term.children()[0], term.children()[1]);
    } else {
      EXPECT_EQ(term.op(), Op::Atom);
    }
  }
  EXPECT_NEAR(static_cast<double>(disjunctions) / n, 0.25, 0.02);
}

TEST(Sampler, PartiallyOrderedShape) {
  const auto c = TaskConfig::minecraft_po();
  std::set<int> sequence_counts, lengths;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = make_rng(1, "shape", i);
    const auto f = sample_po_tree(c, rng);
    const auto seqs = conjuncts(f);
    sequence_counts.insert(static_cast<int>(seqs.size()));
    for (const auto& s : seqs) {
      const auto terms = po_sequence(s);
      lengths.insert(static_cast<int>(terms.size()));
      for (const auto& t : terms) {
        EXPECT_TRUE(t.op() == Op::Atom || (t.op() == Op::Or && t.children().size() == 2));
      }
    }
    std::map<Op, int> ops;
    count_ops(f, ops);
    EXPECT_EQ(ops[Op::Not], 0);
    EXPECT_EQ(ops[Op::Until], 0);
  }
  EXPECT_EQ(sequence_counts, (std::set<int>{1, 2, 3, 4}));
  EXPECT_EQ(lengths, (std::set<int>{1, 2, 3, 4, 5}));
}

TEST(Sampler, GlobalAvoidanceShape) {
  const auto c = TaskConfig::minecraft_ga();
  std::set<int> sequence_counts, lengths;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = make_rng(2, "shape", i);
    const auto f = sample_ga_tree(c, rng);
    std::optional<Formula> guard;
    const auto seqs = conjuncts(f);
    sequence_counts.insert(static_cast<int>(seqs.size()));
    for (const auto& s : seqs) {
      int length = 0;
      Formula cur = s;
      while (true) {
        ASSERT_EQ(cur.op(), Op::Until);
        ASSERT_EQ(cur.lhs().op(), Op::Not);
        if (!guard) guard = cur.lhs();
        EXPECT_EQ(cur.lhs(), *guard) << "one avoided proposition per task";
        ++length;
        const auto& rhs = cur.rhs();
        const auto& target = rhs.op() == Op::And ? rhs.children()[0] : rhs;
        ASSERT_EQ(target.op(), Op::Atom);
        EXPECT_NE(target, guard->operand()) << "the avoided proposition is never a target";
        if (rhs.op() != Op::And) break;
        cur = rhs.children()[1];
      }
      lengths.insert(length);
    }
    // Negation occurs only in the guards.
    std::map<Op, int> ops;
    count_ops(f, ops);
    EXPECT_EQ(ops[Op::Not], ops[Op::Until]);
    EXPECT_EQ(ops[Op::Or], 0);
  }
  EXPECT_EQ(sequence_counts, (std::set<int>{1, 2}));
  EXPECT_EQ(lengths, (std::set<int>{1, 2, 3}));
}

TEST(Sampler, CanonicalAndDeterministic) {
  for (const auto& c : {TaskConfig::minecraft_po(), TaskConfig::minecraft_ga(), TaskConfig::flatworld_po()}) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      auto a = make_rng(5, "det", i), b = make_rng(5, "det", i), t = make_rng(5, "det", i);
      const auto f = sample_task(c, a);
      EXPECT_EQ(f, sample_task(c, b));
      const auto tree = c.task_class == TaskClass::PartiallyOrdered ? sample_po_tree(c, t) : sample_ga_tree(c, t);
      EXPECT_EQ(f, ltl::canonicalize(tree));
      EXPECT_TRUE(ltl::is_syntactically_cosafe(f));
    }
  }
}

TEST(TaskConfig, PresetsAndVariants) {
  EXPECT_EQ(TaskConfig::preset("minecraft-po"), TaskConfig::minecraft_po());
  EXPECT_EQ(TaskConfig::preset("desk-ga"), TaskConfig::desk_ga());
  EXPECT_THROW(TaskConfig::preset("nope"), std::invalid_argument);

  const auto po = TaskConfig::minecraft_po();
  EXPECT_EQ(depth_config(po, false).length, (Range{15, 15}));
  EXPECT_EQ(depth_config(po, false).sequences, po.sequences);
  EXPECT_EQ(conjunction_config(po, false).sequences, (Range{12, 12}));
  EXPECT_EQ(depth_config(TaskConfig::minecraft_ga(), false).length, (Range{5, 5}));
  EXPECT_EQ(conjunction_config(TaskConfig::minecraft_ga(), false).sequences, (Range{3, 3}));
  EXPECT_EQ(depth_config(TaskConfig::flatworld_po(), true).length, (Range{4, 4}));
  EXPECT_EQ(conjunction_config(TaskConfig::flatworld_po(), true).sequences, (Range{2, 2}));
  EXPECT_EQ(depth_config(TaskConfig::flatworld_ga(), true).length, (Range{3, 3}));
}

TEST(TaskConfig, Validation) {
  auto c = TaskConfig::desk_po();
  c.sequences = {2, 1};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = TaskConfig::desk_po();
  c.disjunction_probability = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = TaskConfig{TaskClass::GlobalAvoidance, {1, 1}, {1, 1}, 0.0, Alphabet({"a"})};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(TaskConfig, KvRoundTrip) {
  for (const auto& c : {TaskConfig::minecraft_po(), TaskConfig::flatworld_ga(), TaskConfig::desk_po().with_depth(3)}) {
    KvConfig kv;
    c.write(kv);
    EXPECT_EQ(TaskConfig::read(KvConfig::parse(kv.to_text())), c);
  }
}

TEST(Dataset, DeterministicAcrossThreadCounts) {
  const auto c = TaskConfig::minecraft_po();
  const auto one = build_dataset(c, 60, 9, {}, 1);
  const auto four = build_dataset(c, 60, 9, {}, 4);
  ASSERT_EQ(one.tasks.size(), 60u);
  for (std::size_t i = 0; i < 60; ++i) {
    EXPECT_EQ(one.tasks[i]->formula, four.tasks[i]->formula);
    EXPECT_EQ(one.tasks[i]->machine, four.tasks[i]->machine);
    auto rng = make_rng(9, "task", i);
    EXPECT_EQ(one.tasks[i]->formula, sample_task(c, rng));
  }
}

TEST(Dataset, SaveLoadIdentity) {
  const auto ds = build_dataset(TaskConfig::minecraft_ga(), 25, 4);
  const auto dir = scratch_dir("saveload");
  save_dataset(ds, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.tsv"));
  const auto back = load_dataset(dir);
  EXPECT_EQ(back.config, ds.config);
  EXPECT_EQ(back.seed, ds.seed);
  ASSERT_EQ(back.tasks.size(), ds.tasks.size());
  for (std::size_t i = 0; i < ds.tasks.size(); ++i) {
    EXPECT_EQ(back.tasks[i]->formula, ds.tasks[i]->formula);
    EXPECT_EQ(back.tasks[i]->machine, ds.tasks[i]->machine);
  }
  std::filesystem::remove_all(dir);
}

TEST(Dataset, MissingDirectory) {
  EXPECT_ANY_THROW(load_dataset(scratch_dir("missing")));
}
