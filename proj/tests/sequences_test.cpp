#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include <pellwalnut/ops.hpp>
#include <pellwalnut/sequences.hpp>
#include <pellwalnut/theorems.hpp>

namespace pw = pellwalnut;

namespace {

// Standard words of slope sqrt(2) - 1 (continued fraction [0; 2, 2, ...]):
// s_0 = "0", s_1 = "01", s_k = s_{k-1} s_{k-1} s_{k-2}. Their limit is the
// characteristic word, here indexed from 0 (position n holds c[n+1]).
std::string characteristic_prefix(std::size_t len) {
  std::string a = "0", b = "01";
  while (b.size() < len) {
    std::string c = b + b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return b.substr(0, len);
}

// Linear scan replacement: the k-th 0 becomes zeros[k mod |zeros|], the
// k-th 1 becomes ones[k mod |ones|].
std::string replaced(const std::string& c, const std::string& zeros, const std::string& ones) {
  std::string out;
  std::size_t z = 0, o = 0;
  for (char ch : c) out.push_back(ch == '0' ? zeros[z++ % zeros.size()] : ones[o++ % ones.size()]);
  return out;
}

std::string dfao_string(const pw::dfao& d, std::uint64_t from, std::uint64_t to) {
  std::string s;
  for (auto n = from; n <= to; ++n) s.push_back(static_cast<char>('0' + pw::dfao_eval(d, n)));
  return s;
}

pw::dfao flip_output_at(const pw::dfao& d, const std::string& input, std::uint8_t to) {
  auto m = d;
  m.set_label(m.run(pw::digit_word(input)), to);
  return m;
}

constexpr std::size_t sweep = 100000;

}  // namespace

TEST(Sturmian, ExactArithmetic) {
  using boost::multiprecision::cpp_int;
  EXPECT_EQ(pw::isqrt(0), 0u);
  EXPECT_EQ(pw::isqrt(15), 3u);
  EXPECT_EQ(pw::isqrt(16), 4u);
  unsigned __int128 big = static_cast<unsigned __int128>(UINT64_MAX) * UINT64_MAX;
  EXPECT_EQ(pw::isqrt(big), UINT64_MAX);
  EXPECT_EQ(pw::isqrt(big - 1), UINT64_MAX - 1);
  for (std::uint64_t n : std::vector<std::uint64_t>{1, 2, 1000, 123456789, 1ull << 40, pw::sturmian_limit}) {
    cpp_int two_n2 = cpp_int(2) * n * n;
    cpp_int expected = boost::multiprecision::sqrt(two_n2) - n;
    EXPECT_EQ(cpp_int(pw::floor_alpha(n)), expected) << n;
  }
  EXPECT_THROW(pw::floor_alpha(pw::sturmian_limit + 1), pw::error);
  EXPECT_THROW(pw::sturmian(0), pw::error);
}

TEST(Sturmian, MatchesStandardWords) {
  auto c = characteristic_prefix(sweep);
  EXPECT_EQ(c.substr(0, 29), "01010010100101010010100101010");
  for (std::size_t n = 1; n <= sweep; ++n) ASSERT_EQ(pw::sturmian(n), c[n - 1] - '0') << n;
  std::uint64_t ones = 0;
  for (std::size_t m = 1; m <= 2000; ++m) {
    ones += c[m - 1] - '0';
    ASSERT_EQ(pw::ones_prefix(m), ones);
  }
}

TEST(Sequences, ReplacementOracles) {
  auto c = characteristic_prefix(sweep);
  auto x5 = replaced(c, "0102", "34");
  auto x3 = replaced(c, "01", "2");
  EXPECT_EQ(x5.substr(0, 29), "03140230410324031042301403240");
  EXPECT_EQ(x3.substr(0, 12), "021201202102");
  for (std::size_t i = 0; i < sweep; ++i) {
    ASSERT_EQ(pw::x5_oracle(i), x5[i] - '0') << i;
    ASSERT_EQ(pw::x3_oracle(i), x3[i] - '0') << i;
  }
  EXPECT_THROW(pw::constant_gap_word{}.at(0), pw::error);
}

TEST(Sequences, CharacteristicWordAutomaton) {
  auto d = pw::c_alpha_dfao();
  EXPECT_EQ(d.size(), 5u);
  EXPECT_EQ(dfao_string(d, 1, 29), "01010010100101010010100101010");
  EXPECT_EQ(pw::dfao_eval(d, 0), d.label(d.initial()));
  auto c = characteristic_prefix(sweep);
  for (std::size_t n = 1; n <= sweep; ++n) ASSERT_EQ(pw::dfao_eval(d, n), c[n - 1] - '0') << n;
}

TEST(Sequences, X5Automaton) {
  const auto& d = pw::x5_dfao();
  EXPECT_EQ(d.size(), 25u);
  EXPECT_EQ(dfao_string(d, 0, 28), "03140230410324031042301403240");
  EXPECT_EQ(pw::dfao_eval(d, 25), 3);
  EXPECT_EQ(pw::encode(25).str(), "2001");
  EXPECT_EQ(pw::minimize(d), d);
  for (std::size_t i = 0; i < sweep; ++i) ASSERT_EQ(pw::dfao_eval(d, i), pw::x5_oracle(i)) << i;
}

TEST(Sequences, X3Automaton) {
  const auto& d = pw::x3_dfao();
  EXPECT_EQ(d.size(), 7u);
  EXPECT_EQ(dfao_string(d, 0, 11), "021201202102");
  for (std::size_t i = 0; i < sweep; ++i) ASSERT_EQ(pw::dfao_eval(d, i), pw::x3_oracle(i)) << i;
}

TEST(Sequences, VerifyX5AcceptsReferenceAndRejectsMutants) {
  const auto& adder = pw::reference_adder();
  EXPECT_TRUE(pw::verify_x5(pw::c_alpha_dfao(), pw::x5_dfao(), adder));

  auto x_mut = flip_output_at(pw::x5_dfao(), "2001", 4);
  EXPECT_EQ(pw::dfao_eval(x_mut, 25), 4);
  EXPECT_THROW(pw::verify_x5(pw::c_alpha_dfao(), x_mut, adder), pw::verification_failure);

  auto c_mut = flip_output_at(pw::c_alpha_dfao(), "1", 1);
  try {
    pw::verify_x5(c_mut, pw::x5_dfao(), adder);
    FAIL() << "mutated c_alpha passed";
  } catch (const pw::verification_failure& e) {
    EXPECT_FALSE(e.predicate().empty());
  }
}
