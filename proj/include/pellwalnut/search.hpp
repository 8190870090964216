#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "alphabet.hpp"

namespace pellwalnut {

using rational = boost::rational<std::int64_t>;

/// A finite word over small integer symbols with per-symbol prefix counts,
/// so any window count is O(1).
class finite_word {
 public:
  finite_word() = default;

  explicit finite_word(std::vector<int> symbols) : symbols_(std::move(symbols)) {
    int k = 0;
    for (int s : symbols_) {
      if (s < 0) throw error("negative symbol in word");
      k = std::max(k, s + 1);
    }
    counts_.assign(static_cast<std::size_t>(k), std::vector<std::uint32_t>(symbols_.size() + 1, 0));
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      for (int a = 0; a < k; ++a)
        counts_[a][i + 1] = counts_[a][i] + (symbols_[i] == a ? 1 : 0);
  }

  /// Characters are mapped to symbols: digits by value, other characters by
  /// order of first appearance after the digits.
  static finite_word from_string(std::string_view text) {
    std::vector<int> out;
    std::string others;
    bool digits = std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
    for (char c : text) {
      if (digits) {
        out.push_back(c - '0');
        continue;
      }
      auto pos = others.find(c);
      if (pos == std::string::npos) {
        pos = others.size();
        others.push_back(c);
      }
      out.push_back(static_cast<int>(pos));
    }
    return finite_word(std::move(out));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  int operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<int>& symbols() const noexcept { return symbols_; }
  int alphabet_size() const noexcept { return static_cast<int>(counts_.size()); }

  /// Occurrences of `a` in positions [from, from + len).
  std::uint32_t count(int a, std::size_t from, std::size_t len) const {
    if (a < 0 || a >= alphabet_size()) return 0;
    return counts_[a][from + len] - counts_[a][from];
  }

  std::string str() const {
    std::string s;
    for (int x : symbols_) s.push_back(static_cast<char>('0' + x));
    return s;
  }

 private:
  std::vector<int> symbols_;
  std::vector<std::vector<std::uint32_t>> counts_;
};

/// A factor w[start, start+length) with period p.
struct repetition {
  std::size_t start = 0, length = 0, period = 0;
  rational exponent() const {
    return rational(static_cast<std::int64_t>(length), static_cast<std::int64_t>(period));
  }
};

/// Every symbol's count varies by at most one across windows of equal length.
inline bool is_balanced(const finite_word& w) {
  const std::size_t n = w.size();
  for (int a = 0; a < w.alphabet_size(); ++a)
    for (std::size_t len = 1; len < n; ++len) {
      std::uint32_t lo = UINT32_MAX, hi = 0;
      for (std::size_t i = 0; i + len <= n; ++i) {
        auto c = w.count(a, i, len);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (hi - lo > 1) return false;
    }
  return true;
}

/// A repetition of largest exponent (earliest start, then smallest period,
/// among ties).
inline repetition max_repetition(const finite_word& w) {
  if (w.empty()) throw error("max_exponent: empty word");
  const std::size_t n = w.size();
  repetition best{0, 1, 1};
  for (std::size_t p = 1; p <= n; ++p) {
    // Runs of positions i with w[i] == w[i+p]; a run of r matches starting
    // at s gives the factor w[s, s+p+r) with period p.
    std::size_t run = 0;
    for (std::size_t i = 0; i + p <= n; ++i) {
      bool match = i + p < n && w[i] == w[i + p];
      if (match) {
        ++run;
        continue;
      }
      repetition r{i - run, p + run, p};
      if (r.exponent() > best.exponent() ||
          (r.exponent() == best.exponent() && r.start < best.start))
        best = r;
      run = 0;
    }
  }
  return best;
}

inline rational max_exponent(const finite_word& w) { return max_repetition(w).exponent(); }

struct search_result {
  std::size_t max_length = 0;
  std::vector<std::string> words;   // lexicographically sorted
  std::vector<std::size_t> level_sizes;
};

struct search_options {
  int alphabet_size = 5;
  rational bound{3, 2};
  bool strict = true;
  /// Stop after this many letters even if the frontier is not empty.
  std::size_t depth_limit = SIZE_MAX;
};

namespace detail {

/// One frontier entry: the word plus the state needed to check extensions
/// incrementally.
struct search_node {
  std::vector<std::uint8_t> word;
  /// run[p-1]: number of trailing positions i with w[i] == w[i-p].
  std::vector<std::uint16_t> run;
  /// Per window length l and symbol a: lowest and highest count of a over
  /// windows of length l seen so far, at index (l-1) * k + a.
  std::vector<std::uint16_t> lo, hi;
  int letters_used = 0;
};

class extender {
 public:
  explicit extender(const search_options& opt) : opt_(opt) {}

  bool extend(const search_node& from, int c, search_node& to) const {
    const std::size_t n = from.word.size();  // new letter sits at index n
    const auto k = static_cast<std::size_t>(opt_.alphabet_size);
    const auto num = opt_.bound.numerator(), den = opt_.bound.denominator();

    to.run.assign(n, 0);
    for (std::size_t p = 1; p <= n; ++p) {
      std::uint16_t r = 0;
      if (from.word[n - p] == c) r = static_cast<std::uint16_t>((p <= from.run.size() ? from.run[p - 1] : 0) + 1);
      to.run[p - 1] = r;
      // The suffix of length p + r has period p.
      auto len = static_cast<std::int64_t>(p + r), per = static_cast<std::int64_t>(p);
      bool bad = opt_.strict ? len * den >= num * per : len * den > num * per;
      if (r && bad) return false;
    }

    to.lo = from.lo;
    to.hi = from.hi;
    to.lo.resize((n + 1) * k);
    to.hi.resize((n + 1) * k);
    // Counts in windows ending at the new letter, by increasing length.
    std::vector<std::uint16_t> cnt(k, 0);
    for (std::size_t l = 1; l <= n + 1; ++l) {
      int s = l == 1 ? c : from.word[n + 1 - l];
      ++cnt[static_cast<std::size_t>(s)];
      for (std::size_t a = 0; a < k; ++a) {
        auto& lo = to.lo[(l - 1) * k + a];
        auto& hi = to.hi[(l - 1) * k + a];
        if (l == n + 1) {
          lo = hi = cnt[a];
          continue;
        }
        lo = std::min(lo, cnt[a]);
        hi = std::max(hi, cnt[a]);
        if (hi - lo > 1) return false;
      }
    }
    to.word = from.word;
    to.word.push_back(static_cast<std::uint8_t>(c));
    to.letters_used = std::max(from.letters_used, c + 1);
    return true;
  }

 private:
  const search_options& opt_;
};

}  // namespace detail

/// Breadth-first search over words that are balanced and avoid factors of
/// exponent >= bound (> bound when not strict), up to renaming of letters:
/// words start with 0 and introduce letters in increasing order.
inline search_result bfs_optimal(const search_options& opt) {
  if (opt.alphabet_size < 2 || opt.alphabet_size > 255) throw error("alphabet size out of range");
  if (opt.bound <= rational(1)) throw error("bound must exceed 1");
  const auto k = static_cast<std::size_t>(opt.alphabet_size);
  detail::extender ext(opt);

  detail::search_node root;
  root.word = {0};
  root.letters_used = 1;
  root.lo.assign(k, 0);
  root.hi.assign(k, 0);
  root.lo[0] = root.hi[0] = 1;

  search_result res;
  std::vector<detail::search_node> level{root};
  res.level_sizes.push_back(1);
  std::size_t depth = 1;
  while (depth < opt.depth_limit) {
    std::vector<detail::search_node> next;
    detail::search_node child;
    for (const auto& node : level) {
      int top = std::min(node.letters_used, opt.alphabet_size - 1);
      for (int c = 0; c <= top; ++c)
        if (ext.extend(node, c, child)) next.push_back(child);
    }
    if (next.empty()) break;
    level = std::move(next);
    ++depth;
    res.level_sizes.push_back(level.size());
    if (depth >= UINT16_MAX) throw error("search depth exceeds counter range");
  }
  res.max_length = depth;
  for (const auto& node : level) {
    std::string s;
    for (auto x : node.word) s.push_back(static_cast<char>('0' + x));
    res.words.push_back(std::move(s));
  }
  std::sort(res.words.begin(), res.words.end());
  return res;
}

inline search_result bfs_optimal(int alphabet_size, rational bound, bool strict) {
  search_options opt;
  opt.alphabet_size = alphabet_size;
  opt.bound = bound;
  opt.strict = strict;
  return bfs_optimal(opt);
}

}  // namespace pellwalnut
