#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include <pellwalnut/search.hpp>
#include <pellwalnut/sequences.hpp>

#include "optimal_words.hpp"

namespace pw = pellwalnut;

namespace {

// Direct definition: any two factors of equal length differ by at most one
// in the count of every letter.
bool naive_balanced(const std::vector<int>& w, int k) {
  for (std::size_t len = 1; len <= w.size(); ++len)
    for (int a = 0; a < k; ++a) {
      int lo = 1 << 30, hi = -1;
      for (std::size_t i = 0; i + len <= w.size(); ++i) {
        int c = 0;
        for (std::size_t j = i; j < i + len; ++j) c += w[j] == a;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (hi - lo > 1) return false;
    }
  return true;
}

// Largest |u| / p over all factors u and their periods p.
pw::rational naive_max_exponent(const std::vector<int>& w) {
  pw::rational best(0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j)
      for (std::size_t p = 1; p <= j - i; ++p) {
        bool periodic = true;
        for (std::size_t t = i; t + p < j && periodic; ++t) periodic = w[t] == w[t + p];
        if (periodic) {
          best = std::max(best, pw::rational(static_cast<std::int64_t>(j - i), static_cast<std::int64_t>(p)));
          break;
        }
      }
  return best;
}

std::vector<int> digits(const std::string& s) {
  std::vector<int> w;
  for (char c : s) w.push_back(c - '0');
  return w;
}

// Reference search: depth-first, rechecking whole words from scratch.
void naive_count(std::vector<int>& w, int k, pw::rational bound, std::size_t depth,
                 std::vector<std::size_t>& counts) {
  counts[w.size() - 1]++;
  if (w.size() == depth) return;
  int used = *std::max_element(w.begin(), w.end()) + 1;
  for (int c = 0; c <= std::min(used, k - 1); ++c) {
    w.push_back(c);
    if (naive_balanced(w, k) && naive_max_exponent(w) < bound) naive_count(w, k, bound, depth, counts);
    w.pop_back();
  }
}

}  // namespace

TEST(Words, FromString) {
  auto w = pw::finite_word::from_string("0120");
  EXPECT_EQ(w.str(), "0120");
  EXPECT_EQ(w.alphabet_size(), 3);
  EXPECT_EQ(w.count(0, 0, 4), 2u);
  EXPECT_EQ(w.count(7, 0, 4), 0u);
  EXPECT_EQ(pw::finite_word::from_string("abca").str(), "0120");
  EXPECT_THROW(pw::finite_word(std::vector<int>{0, -1}), pw::error);
}

TEST(Words, ExponentAndBalanceMatchDefinitions) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 400; ++i) {
    std::size_t n = 1 + rng() % 14;
    int k = 2 + static_cast<int>(rng() % 3);
    std::vector<int> w(n);
    for (auto& x : w) x = static_cast<int>(rng() % k);
    pw::finite_word fw(w);
    ASSERT_EQ(pw::is_balanced(fw), naive_balanced(w, k));
    ASSERT_EQ(pw::max_exponent(fw), naive_max_exponent(w));
    auto r = pw::max_repetition(fw);
    for (std::size_t t = r.start; t + r.period < r.start + r.length; ++t) ASSERT_EQ(w[t], w[t + r.period]);
  }
  EXPECT_EQ(pw::max_exponent(pw::finite_word::from_string("0101")), pw::rational(2));
  EXPECT_EQ(pw::max_exponent(pw::finite_word::from_string("01201")), pw::rational(5, 3));
  EXPECT_THROW(pw::max_exponent(pw::finite_word{}), pw::error);
}

TEST(Words, PrefixesOfX5) {
  std::vector<int> x(2000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = pw::x5_oracle(i);
  pw::finite_word fw(x);
  EXPECT_TRUE(pw::is_balanced(fw));
  EXPECT_EQ(pw::max_exponent(fw), pw::rational(3, 2));
  auto r = pw::max_repetition(fw);
  // First occurrence is x5[10..15] = 032403; x5[23..28] = 403240 is another.
  EXPECT_EQ(r.start, 10u);
  EXPECT_EQ(r.period, 4u);
  EXPECT_EQ(pw::max_exponent(pw::finite_word(std::vector<int>(x.begin() + 23, x.begin() + 29))), pw::rational(3, 2));
}

TEST(Search, FiveLettersBelowThreeHalves) {
  auto r = pw::bfs_optimal(5, pw::rational(3, 2), true);
  EXPECT_EQ(r.max_length, 44u);
  EXPECT_EQ(r.words, optimal_five_letter_words());
  for (const auto& s : r.words) {
    auto w = pw::finite_word::from_string(s);
    EXPECT_TRUE(pw::is_balanced(w));
    EXPECT_LT(pw::max_exponent(w), pw::rational(3, 2));
  }
  EXPECT_EQ(r.level_sizes.size(), 44u);
  EXPECT_EQ(r.level_sizes.back(), 5u);
}

TEST(Search, FrontierIsCompleteToDepth20) {
  pw::search_options opt;
  opt.depth_limit = 20;
  auto r = pw::bfs_optimal(opt);
  std::vector<std::size_t> counts(20, 0);
  std::vector<int> w{0};
  naive_count(w, 5, pw::rational(3, 2), 20, counts);
  EXPECT_EQ(r.level_sizes, counts);
  EXPECT_EQ(r.max_length, 20u);
}

TEST(Search, NonStrictBoundAllowsTheBoundItself) {
  // Allowing exponent exactly 3/2 admits x5 itself, so the search only
  // stops at the depth limit.
  pw::search_options opt;
  opt.strict = false;
  opt.depth_limit = 60;
  auto r = pw::bfs_optimal(opt);
  EXPECT_EQ(r.max_length, 60u);
  EXPECT_FALSE(r.words.empty());
  for (const auto& s : r.words) EXPECT_LE(pw::max_exponent(pw::finite_word::from_string(s)), pw::rational(3, 2));
}

TEST(Search, SmallAlphabets) {
  // Over two letters every word of length 3 has a factor of exponent >= 3/2.
  auto r = pw::bfs_optimal(2, pw::rational(3, 2), true);
  EXPECT_EQ(r.max_length, 2u);
  EXPECT_EQ(r.words, (std::vector<std::string>{"01"}));
  EXPECT_THROW(pw::bfs_optimal(1, pw::rational(2), true), pw::error);
  EXPECT_THROW(pw::bfs_optimal(3, pw::rational(1), true), pw::error);
}
