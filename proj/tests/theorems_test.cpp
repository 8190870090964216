#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <pellwalnut/theorems.hpp>

#include "mutations.hpp"

namespace pw = pellwalnut;

TEST(Theorems, PredicateTable) {
  const auto& t = pw::paper_predicates();
  for (const char* name : {"pell_successor", "base_proof", "inductive_proof", "first_0_to_0",
                           "second_0_to_1", "possible_triplets_for_0s", "first_1_to_3",
                           "alternate_3_4_for_1s", "fac_low_exponent", "fac_ex_exponent",
                           "fac_high_exponent", "fac_cex5", "almost_ce_period",
                           "periods_of_high_powers", "maximal_reps", "highest_powers"})
    EXPECT_TRUE(t.contains(name)) << name;
  EXPECT_THROW(pw::paper_predicate("nope"), pw::error);
  EXPECT_THROW(pw::prove("nope"), pw::error);
}

TEST(Theorems, VerifyAdder) {
  auto r = pw::verify_adder();
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.verdicts.size(), 3u);
  EXPECT_EQ(r.verdicts[1].predicate, "base_proof");
  EXPECT_EQ(r.verdicts[2].predicate, "inductive_proof");
  ASSERT_EQ(r.automata.size(), 1u);
  EXPECT_EQ(r.automata[0].first, "pell_successor");
}

TEST(Theorems, VerifyX5Construction) {
  auto r = pw::verify_x5_construction();
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.verdicts.size(), 5u);
}

TEST(Theorems, CorollaryPeriodFour) {
  auto [cex, r] = pw::corollary_cex5();
  EXPECT_TRUE(r.passed());
  for (const auto& v : r.verdicts) EXPECT_TRUE(v.passed()) << v.predicate;
  EXPECT_EQ(cex.tracks(), 2);
  EXPECT_TRUE(pw::is_infinite(cex));
}

TEST(Theorems, AlmostPowersSmall) {
  pw::almost_powers_options opt;
  opt.max_period = 3000;
  opt.prefix = 30000;
  opt.complete_up_to = 1000;
  auto [a, r] = pw::almost_powers(pw::reference_context(), opt);
  EXPECT_TRUE(r.passed());
  // Periods 14, 34, 82, 198, 478, 1154, 2786 with longest n growing like P_k.
  EXPECT_EQ(r.notes.size(), 7u);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_EQ(r.notes.front(), "p = 14: n in [19, 19]");
  EXPECT_TRUE(pw::accepts(a, pw::encode_tuple({1729, 1154})));
  EXPECT_FALSE(pw::accepts(a, pw::encode_tuple({1730, 1154})));
}

TEST(Theorems, X3Analysis) {
  auto r = pw::x3_analysis();
  EXPECT_TRUE(r.passed());
  for (const auto& v : r.verdicts) EXPECT_TRUE(v.passed()) << v.predicate;
}

TEST(Theorems, X3ExponentArithmetic) {
  using boost::multiprecision::cpp_int;
  auto [n5, d5] = pw::x3_exponent(5);
  // (P_6 + P_5 + P_4 - 2) / (P_5 + P_4)
  EXPECT_EQ(n5, cpp_int(109));
  EXPECT_EQ(d5, cpp_int(41));
  // 2 + sqrt(2)/2 = 2.7071...
  EXPECT_TRUE(pw::below_x3_bound(27, 10));
  EXPECT_FALSE(pw::below_x3_bound(28, 10));
  EXPECT_TRUE(pw::below_x3_bound(1, 1));
  EXPECT_FALSE(pw::below_x3_bound(27072, 10000));
  EXPECT_TRUE(pw::below_x3_bound(27071, 10000));
}

TEST(Theorems, Convergents) {
  auto c = pw::convergents(5);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c[0].a, 1u);
  EXPECT_EQ(c[0].b, 2u);
  EXPECT_EQ(c[4].a, 29u);
  EXPECT_EQ(c[4].b, 70u);
}

TEST(Theorems, ReportsFailOnErrors) {
  pw::verdict v{"x", true, true, "error: boom"};
  EXPECT_FALSE(v.passed());
  pw::theorem_report empty;
  EXPECT_FALSE(empty.passed());
}

TEST(Mutations, EachSinglePointMutantBreaksAProof) {
  for (const auto& m : mutations::single_point(pw::reference_context())) {
    auto failed = mutations::first_failure(m.ctx);
    EXPECT_TRUE(failed.has_value()) << m.description;
  }
}
