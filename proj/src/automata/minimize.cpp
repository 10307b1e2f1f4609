#include "ltlnrm/automata/minimize.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace ltlnrm::automata {
namespace {

constexpr StateId kUnset = std::numeric_limits<StateId>::max();

// Breadth-first renumbering from `start`; the result is canonical for the
// reachable part of the machine.
MooreMachine renumber_from(const MooreMachine& m, StateId start) {
  const std::size_t k = m.num_symbols();
  std::vector<StateId> order;
  std::vector<StateId> new_id(m.num_states(), kUnset);
  std::deque<StateId> queue{start};
  new_id[start] = 0;
  order.push_back(start);
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (SymbolId p = 0; p < k; ++p) {
      const StateId t = m.next(q, p);
      if (new_id[t] == kUnset) {
        new_id[t] = static_cast<StateId>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  std::vector<StateId> transitions(order.size() * k);
  std::vector<Output> outputs(order.size());
  for (StateId i = 0; i < order.size(); ++i) {
    outputs[i] = m.output(order[i]);
    for (SymbolId p = 0; p < k; ++p) transitions[i * k + p] = new_id[m.next(order[i], p)];
  }
  return MooreMachine(m.alphabet(), 0, std::move(transitions), std::move(outputs));
}

// Partition refinement over states 0..n-1. Each block is a contiguous
// range of `elems`; `marked` counts elements moved to the block front
// during the current split.
class Partition {
 public:
  explicit Partition(std::size_t n) : elems_(n), loc_(n), block_of_(n, 0) {
    for (StateId i = 0; i < n; ++i) elems_[i] = loc_[i] = i;
  }

  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  std::size_t block_of(StateId q) const noexcept { return block_of_[q]; }
  std::size_t block_size(std::size_t b) const noexcept { return blocks_[b].end - blocks_[b].begin; }
  StateId first(std::size_t b) const noexcept { return elems_[blocks_[b].begin]; }

  template <typename F>
  void for_each(std::size_t b, F&& fn) const {
    for (std::size_t i = blocks_[b].begin; i < blocks_[b].end; ++i) fn(elems_[i]);
  }

  // Groups states by key into consecutive blocks.
  void init(const std::vector<int>& key) {
    std::stable_sort(elems_.begin(), elems_.end(), [&](StateId a, StateId b) { return key[a] < key[b]; });
    blocks_.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      loc_[elems_[i]] = static_cast<StateId>(i);
      if (i == 0 || key[elems_[i]] != key[elems_[i - 1]]) blocks_.push_back({i, i, 0});
      blocks_.back().end = i + 1;
      block_of_[elems_[i]] = blocks_.size() - 1;
    }
  }

  void mark(StateId q) {
    Block& b = blocks_[block_of_[q]];
    const std::size_t pos = loc_[q];
    const std::size_t dst = b.begin + b.marked;
    if (pos < dst) return;  // already marked
    std::swap(elems_[pos], elems_[dst]);
    loc_[elems_[pos]] = static_cast<StateId>(pos);
    loc_[elems_[dst]] = static_cast<StateId>(dst);
    if (b.marked == 0) touched_.push_back(block_of_[q]);
    ++b.marked;
  }

  // Splits every touched block into (marked, unmarked). Calls
  // on_split(old_block, new_block) for every proper split; the marked part
  // becomes the new block.
  template <typename F>
  void split(F&& on_split) {
    for (std::size_t bi : touched_) {
      Block& b = blocks_[bi];
      const std::size_t marked = b.marked;
      b.marked = 0;
      if (marked == b.end - b.begin) continue;
      const std::size_t nb = blocks_.size();
      const Block fresh{b.begin, b.begin + marked, 0};
      blocks_[bi].begin += marked;
      blocks_.push_back(fresh);
      for (std::size_t i = fresh.begin; i < fresh.end; ++i) block_of_[elems_[i]] = nb;
      on_split(bi, nb);
    }
    touched_.clear();
  }

 private:
  struct Block {
    std::size_t begin, end, marked;
  };
  std::vector<StateId> elems_;
  std::vector<StateId> loc_;
  std::vector<std::size_t> block_of_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> touched_;
};

}  // namespace

MooreMachine minimize(const MooreMachine& input) {
  const MooreMachine m = renumber_from(input, input.initial());
  const std::size_t n = m.num_states();
  const std::size_t k = m.num_symbols();

  // inverse[p][q] = predecessors of q on symbol p
  std::vector<std::vector<std::vector<StateId>>> inverse(k, std::vector<std::vector<StateId>>(n));
  for (StateId q = 0; q < n; ++q) {
    for (SymbolId p = 0; p < k; ++p) inverse[p][m.next(q, p)].push_back(q);
  }

  Partition part(n);
  std::vector<int> key(n);
  for (StateId q = 0; q < n; ++q) key[q] = m.output(q);
  part.init(key);

  std::vector<bool> in_work(part.num_blocks(), true);
  std::deque<std::size_t> work;
  for (std::size_t b = 0; b < part.num_blocks(); ++b) work.push_back(b);

  std::vector<StateId> splitter;
  while (!work.empty()) {
    const std::size_t s = work.front();
    work.pop_front();
    in_work[s] = false;
    splitter.clear();
    part.for_each(s, [&](StateId q) { splitter.push_back(q); });
    for (SymbolId p = 0; p < k; ++p) {
      for (StateId q : splitter) {
        for (StateId pred : inverse[p][q]) part.mark(pred);
      }
      part.split([&](std::size_t old_block, std::size_t new_block) {
        in_work.resize(part.num_blocks(), false);
        if (in_work[old_block]) {
          in_work[new_block] = true;
          work.push_back(new_block);
        } else {
          const std::size_t smaller = part.block_size(new_block) <= part.block_size(old_block) ? new_block : old_block;
          in_work[smaller] = true;
          work.push_back(smaller);
        }
      });
    }
  }

  const std::size_t blocks = part.num_blocks();
  std::vector<StateId> transitions(blocks * k);
  std::vector<Output> outputs(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const StateId rep = part.first(b);
    outputs[b] = m.output(rep);
    for (SymbolId p = 0; p < k; ++p) transitions[b * k + p] = static_cast<StateId>(part.block_of(m.next(rep, p)));
  }
  const MooreMachine quotient(m.alphabet(), static_cast<StateId>(part.block_of(m.initial())), std::move(transitions),
                              std::move(outputs));
  return renumber_from(quotient, quotient.initial());
}

MooreMachine restrict_to(const MooreMachine& m, StateId start) { return renumber_from(m, start); }

std::vector<std::uint64_t> residual_ids(const MooreMachine& m) {
  std::vector<std::uint64_t> ids(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) ids[q] = restrict_to(m, q).structural_hash();
  return ids;
}

}  // namespace ltlnrm::automata
