#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <vector>

#include "automaton.hpp"

namespace pellwalnut {

/// Renumbers states in breadth-first order from the initial state, visiting
/// symbols in increasing order, and drops unreachable states. Two minimal
/// automata for the same language are identical after this.
template <class Label>
automaton<Label> canonicalize(const automaton<Label>& a) {
  const auto m = a.symbols();
  std::vector<state_id> id(a.size(), static_cast<state_id>(-1));
  std::vector<state_id> order;
  order.reserve(a.size());
  id[a.initial()] = 0;
  order.push_back(a.initial());
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto q = order[head];
    for (symbol_id s = 0; s < m; ++s) {
      auto t = a.next(q, s);
      if (id[t] == static_cast<state_id>(-1)) {
        id[t] = static_cast<state_id>(order.size());
        order.push_back(t);
      }
    }
  }
  automaton<Label> out(a.tracks(), static_cast<state_id>(order.size()));
  for (state_id i = 0; i < order.size(); ++i) {
    out.set_label(i, a.label(order[i]));
    for (symbol_id s = 0; s < m; ++s) out.set_next(i, s, id[a.next(order[i], s)]);
  }
  return out;
}

namespace detail {

/// Refinable partition over states 0..n-1 (Knuutila / Valmari style): the
/// elements of each block are contiguous in `elems`, marked elements are
/// moved to the front of their block.
class refinable_partition {
 public:
  explicit refinable_partition(std::size_t n) : elems_(n), loc_(n), block_(n, 0) {
    std::iota(elems_.begin(), elems_.end(), state_id{0});
    std::iota(loc_.begin(), loc_.end(), std::size_t{0});
    if (n) {
      first_.push_back(0);
      end_.push_back(n);
      mid_.push_back(0);
    }
  }

  std::size_t blocks() const noexcept { return first_.size(); }
  std::size_t block_of(state_id q) const noexcept { return block_[q]; }
  std::size_t block_size(std::size_t b) const noexcept { return end_[b] - first_[b]; }
  std::span<const state_id> members(std::size_t b) const {
    return {elems_.data() + first_[b], end_[b] - first_[b]};
  }

  /// Returns true if this is the first mark in the block.
  bool mark(state_id q) {
    auto b = block_[q];
    auto i = loc_[q];
    if (i < mid_[b]) return false;
    bool first_mark = mid_[b] == first_[b];
    auto j = mid_[b]++;
    std::swap(elems_[i], elems_[j]);
    loc_[elems_[i]] = i;
    loc_[elems_[j]] = j;
    return first_mark;
  }

  /// Splits the marked part of block b into a new block. Returns the new
  /// block index, or blocks() if nothing was split.
  std::size_t split(std::size_t b) {
    if (mid_[b] == end_[b]) {
      mid_[b] = first_[b];
      return blocks();
    }
    if (mid_[b] == first_[b]) return blocks();
    auto nb = first_.size();
    first_.push_back(first_[b]);
    end_.push_back(mid_[b]);
    mid_.push_back(first_[b]);
    first_[b] = mid_[b];
    for (auto i = first_[nb]; i < end_[nb]; ++i) block_[elems_[i]] = nb;
    return nb;
  }

 private:
  std::vector<state_id> elems_;
  std::vector<std::size_t> loc_;
  std::vector<std::size_t> block_;
  std::vector<std::size_t> first_, end_, mid_;
};

}  // namespace detail

/// Hopcroft partition refinement. Returns the minimal automaton in
/// canonical numbering.
template <class Label>
automaton<Label> minimize(const automaton<Label>& input) {
  auto a = canonicalize(input);
  const std::size_t n = a.size();
  const std::size_t m = a.symbols();
  if (n <= 1) return a;

  // Reverse transitions as flat transition indices q*m+s, bucketed by target.
  std::vector<std::size_t> in_start(n + 1, 0);
  for (state_id q = 0; q < n; ++q)
    for (symbol_id s = 0; s < m; ++s) ++in_start[a.next(q, s) + 1];
  std::partial_sum(in_start.begin(), in_start.end(), in_start.begin());
  std::vector<std::uint64_t> in_edges(n * m);
  {
    auto fill = in_start;
    for (state_id q = 0; q < n; ++q)
      for (symbol_id s = 0; s < m; ++s)
        in_edges[fill[a.next(q, s)]++] = static_cast<std::uint64_t>(q) * m + s;
  }

  detail::refinable_partition part(n);
  {
    // Initial split by label.
    std::vector<state_id> by_label(n);
    std::iota(by_label.begin(), by_label.end(), state_id{0});
    std::stable_sort(by_label.begin(), by_label.end(),
                     [&](state_id x, state_id y) { return a.label(x) < a.label(y); });
    std::size_t i = 0;
    while (i < n) {
      auto j = i;
      while (j < n && a.label(by_label[j]) == a.label(by_label[i])) ++j;
      if (j < n) {
        // Peel off [j, n) so that each label class ends up in its own block.
        for (auto k = j; k < n; ++k) part.mark(by_label[k]);
        part.split(part.block_of(by_label[j]));
      }
      i = j;
    }
  }

  std::vector<char> in_work(part.blocks(), 1);
  std::deque<std::size_t> work;
  for (std::size_t b = 0; b < part.blocks(); ++b) work.push_back(b);

  std::vector<std::uint64_t> preds;
  std::vector<std::size_t> touched;
  std::vector<state_id> splitter;
  while (!work.empty()) {
    auto b = work.front();
    work.pop_front();
    in_work[b] = 0;
    auto mem = part.members(b);
    splitter.assign(mem.begin(), mem.end());

    preds.clear();
    for (auto t : splitter)
      for (auto k = in_start[t]; k < in_start[t + 1]; ++k) preds.push_back(in_edges[k]);
    std::sort(preds.begin(), preds.end(), [m](std::uint64_t x, std::uint64_t y) {
      auto sx = x % m, sy = y % m;
      return sx != sy ? sx < sy : x < y;
    });

    std::size_t i = 0;
    while (i < preds.size()) {
      auto sym = preds[i] % m;
      touched.clear();
      for (; i < preds.size() && preds[i] % m == sym; ++i) {
        auto q = static_cast<state_id>(preds[i] / m);
        if (part.mark(q)) touched.push_back(part.block_of(q));
      }
      for (auto y : touched) {
        auto z = part.split(y);
        if (z == part.blocks()) continue;
        in_work.push_back(0);
        if (in_work[y]) {
          in_work[z] = 1;
          work.push_back(z);
        } else {
          auto smaller = part.block_size(z) <= part.block_size(y) ? z : y;
          in_work[smaller] = 1;
          work.push_back(smaller);
        }
      }
    }
  }

  automaton<Label> quotient(a.tracks(), static_cast<state_id>(part.blocks()));
  for (std::size_t b = 0; b < part.blocks(); ++b) {
    auto rep = part.members(b).front();
    quotient.set_label(static_cast<state_id>(b), a.label(rep));
    for (symbol_id s = 0; s < m; ++s)
      quotient.set_next(static_cast<state_id>(b), s,
                        static_cast<state_id>(part.block_of(a.next(rep, s))));
  }
  quotient.set_initial(static_cast<state_id>(part.block_of(a.initial())));
  return canonicalize(quotient);
}

}  // namespace pellwalnut
