#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "../ops.hpp"

namespace pellwalnut::logic {

namespace detail {

/// Thompson construction over the digit alphabet {0,1,2}. Supported:
/// digits, '.', character classes "[01]", grouping, '|', '*', '+', '?'.
class regex_builder {
 public:
  explicit regex_builder(std::string_view pattern) : src_(pattern) {}

  dfa build() {
    auto frag = parse_alt();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    accept_ = frag.out;
    return determinize(frag.in);
  }

 private:
  struct node {
    std::vector<int> eps;
    std::vector<std::pair<int, int>> edges;  // (digit, target)
  };
  struct fragment {
    int in, out;
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw error("malformed pattern at offset " + std::to_string(pos_) + ": " + what);
  }

  int add_node() {
    nodes_.emplace_back();
    return static_cast<int>(nodes_.size()) - 1;
  }

  fragment parse_alt() {
    auto f = parse_concat();
    while (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      auto g = parse_concat();
      int in = add_node(), out = add_node();
      nodes_[in].eps = {f.in, g.in};
      nodes_[f.out].eps.push_back(out);
      nodes_[g.out].eps.push_back(out);
      f = {in, out};
    }
    return f;
  }

  fragment parse_concat() {
    int in = add_node();
    fragment f{in, in};
    while (pos_ < src_.size() && src_[pos_] != '|' && src_[pos_] != ')') {
      auto g = parse_repeat();
      nodes_[f.out].eps.push_back(g.in);
      f.out = g.out;
    }
    return f;
  }

  fragment parse_repeat() {
    auto f = parse_atom();
    while (pos_ < src_.size() && (src_[pos_] == '*' || src_[pos_] == '+' || src_[pos_] == '?')) {
      char op = src_[pos_++];
      int in = add_node(), out = add_node();
      nodes_[in].eps.push_back(f.in);
      nodes_[f.out].eps.push_back(out);
      if (op != '+') nodes_[in].eps.push_back(out);
      if (op != '?') nodes_[f.out].eps.push_back(f.in);
      f = {in, out};
    }
    return f;
  }

  fragment parse_atom() {
    if (pos_ >= src_.size()) fail("unexpected end of pattern");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto f = parse_alt();
      if (pos_ >= src_.size() || src_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    std::vector<int> digits;
    if (c == '.') {
      digits = {0, 1, 2};
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      while (pos_ < src_.size() && src_[pos_] != ']') {
        char d = src_[pos_++];
        if (d < '0' || d > '2') fail("digit outside {0,1,2} in class");
        digits.push_back(d - '0');
      }
      if (pos_ >= src_.size()) fail("expected ']'");
      ++pos_;
    } else if (c >= '0' && c <= '2') {
      digits = {c - '0'};
      ++pos_;
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    int in = add_node(), out = add_node();
    for (int d : digits) nodes_[in].edges.emplace_back(d, out);
    return {in, out};
  }

  void eps_close(std::vector<int>& set) const {
    std::vector<char> seen(nodes_.size(), 0);
    for (int q : set) seen[q] = 1;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (int t : nodes_[set[i]].eps)
        if (!seen[t]) {
          seen[t] = 1;
          set.push_back(t);
        }
    std::sort(set.begin(), set.end());
  }

  dfa determinize(int start) const {
    std::vector<std::vector<int>> sets;
    std::vector<std::array<state_id, 3>> delta;
    std::map<std::vector<int>, state_id> ids;
    std::vector<int> s0{start};
    eps_close(s0);
    ids.emplace(s0, 0);
    sets.push_back(s0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::array<state_id, 3> row{};
      for (int d = 0; d < 3; ++d) {
        std::vector<int> next;
        for (int q : sets[i])
          for (auto [digit, t] : nodes_[q].edges)
            if (digit == d) next.push_back(t);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        eps_close(next);
        auto [it, inserted] = ids.try_emplace(next, static_cast<state_id>(sets.size()));
        if (inserted) sets.push_back(next);
        row[d] = it->second;
      }
      delta.push_back(row);
    }
    dfa out(1, static_cast<state_id>(sets.size()));
    for (state_id i = 0; i < sets.size(); ++i) {
      out.set_label(i, std::binary_search(sets[i].begin(), sets[i].end(), accept_));
      for (int d = 0; d < 3; ++d) out.set_next(i, static_cast<symbol_id>(d), delta[i][d]);
    }
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<node> nodes_;
  int accept_ = -1;
};

}  // namespace detail

/// Compiles a digit regular expression into a minimal one-track automaton,
/// intersected with well-formed (0*canonical) representations.
inline dfa compile_regex(std::string_view pattern) {
  detail::regex_builder b(pattern);
  return restrict_canonical(b.build(), 1u);
}

}  // namespace pellwalnut::logic
