#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include <pellwalnut/learner.hpp>
#include <pellwalnut/minimize.hpp>
#include <pellwalnut/ops.hpp>
#include <pellwalnut/pell.hpp>

namespace pw = pellwalnut;

namespace {

template <class Label>
pw::automaton<Label> random_automaton(std::mt19937_64& rng, int tracks, pw::state_id n, int labels) {
  pw::automaton<Label> a(tracks, n);
  std::uniform_int_distribution<pw::state_id> st(0, n - 1);
  std::uniform_int_distribution<int> lab(0, labels - 1);
  for (pw::state_id q = 0; q < n; ++q) {
    a.set_label(q, static_cast<Label>(lab(rng)));
    for (pw::symbol_id s = 0; s < a.symbols(); ++s) a.set_next(q, s, st(rng));
  }
  return a;
}

// Reference minimization: Moore's refinement by (class, successor classes)
// signatures until nothing splits, then the quotient.
template <class Label>
pw::automaton<Label> moore_minimize(const pw::automaton<Label>& a) {
  std::vector<int> cls(a.size());
  {
    std::map<Label, int> ids;
    for (pw::state_id q = 0; q < a.size(); ++q)
      cls[q] = ids.try_emplace(a.label(q), static_cast<int>(ids.size())).first->second;
  }
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(a.size());
    for (pw::state_id q = 0; q < a.size(); ++q) {
      std::vector<int> sig{cls[q]};
      for (pw::symbol_id s = 0; s < a.symbols(); ++s) sig.push_back(cls[a.next(q, s)]);
      next[q] = ids.try_emplace(sig, static_cast<int>(ids.size())).first->second;
    }
    bool stable = std::set<int>(next.begin(), next.end()).size() == std::set<int>(cls.begin(), cls.end()).size();
    cls = std::move(next);
    if (stable) break;
  }
  int k = *std::max_element(cls.begin(), cls.end()) + 1;
  pw::automaton<Label> out(a.tracks(), static_cast<pw::state_id>(k));
  for (pw::state_id q = 0; q < a.size(); ++q) {
    out.set_label(cls[q], a.label(q));
    for (pw::symbol_id s = 0; s < a.symbols(); ++s) out.set_next(cls[q], s, cls[a.next(q, s)]);
  }
  out.set_initial(cls[a.initial()]);
  return pw::canonicalize(out);
}

std::vector<std::vector<pw::symbol_id>> all_words(pw::symbol_id m, std::size_t max_len) {
  std::vector<std::vector<pw::symbol_id>> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (pw::symbol_id s = 0; s < m; ++s) {
      auto w = out[i];
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

TEST(Alphabet, SymbolPacking) {
  pw::track_alphabet a(3);
  EXPECT_EQ(a.size(), 27u);
  std::vector<int> d{1, 0, 2};
  auto s = a.encode(d);
  EXPECT_EQ(s, 11u);
  EXPECT_EQ(a.decode(s), d);
  EXPECT_EQ(a.format(s), "[1,0,2]");
  EXPECT_EQ(a.digit(s, 0), 1);
  EXPECT_EQ(a.digit(s, 2), 2);
  EXPECT_EQ(pw::parse_symbol_word(a, "[1,0,2][0,0,0]"), (std::vector<pw::symbol_id>{11, 0}));
  EXPECT_THROW(pw::parse_symbol_word(a, "[1,0]"), pw::error);
  EXPECT_THROW(pw::track_alphabet(pw::max_tracks + 1), pw::error);
  EXPECT_EQ(pw::track_alphabet(0).size(), 1u);
}

TEST(Minimize, MatchesMooreRefinementOnRandomAutomata) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto a = random_automaton<bool>(rng, 1, 20, 2);
    auto m = pw::minimize(a);
    ASSERT_EQ(m, moore_minimize(pw::canonicalize(a))) << "case " << i;
    ASSERT_TRUE(pw::equivalent(a, m));
    ASSERT_EQ(pw::minimize(m), m);
  }
  for (int i = 0; i < 40; ++i) {
    auto a = random_automaton<std::uint8_t>(rng, 2, 20, 4);
    ASSERT_EQ(pw::minimize(a), moore_minimize(pw::canonicalize(a))) << "dfao case " << i;
  }
}

TEST(Minimize, CanonicalNumberingIdentifiesEqualLanguages) {
  // Two different presentations of "number of 1s is even" over one track.
  pw::dfa a(1, 2, false), b(1, 4, false);
  a.set_label(0, true);
  a.set_next(0, 1, 1);
  a.set_next(1, 1, 0);
  b.set_initial(2);
  b.set_label(2, true);
  b.set_label(0, true);
  b.set_next(2, 1, 3);
  b.set_next(3, 1, 0);
  b.set_next(0, 1, 1);
  b.set_next(1, 1, 2);
  EXPECT_EQ(pw::minimize(a), pw::minimize(b));
}

TEST(Ops, ProductMatchesConnectivesExhaustively) {
  std::mt19937_64 rng(11);
  const pw::connective ops[] = {pw::connective::conj, pw::connective::disj, pw::connective::implies,
                                pw::connective::iff, pw::connective::exclusive};
  for (int i = 0; i < 6; ++i) {
    auto a = random_automaton<bool>(rng, 2, 6, 2);
    auto b = random_automaton<bool>(rng, 2, 5, 2);
    auto words = all_words(9, 5);
    for (auto op : ops) {
      auto p = pw::product(a, b, op);
      for (const auto& w : words)
        ASSERT_EQ(pw::accepts(p, w), pw::apply(op, pw::accepts(a, w), pw::accepts(b, w)));
    }
  }
}

TEST(Ops, ProductValidityMaskRejectsBrokenTracks) {
  auto all = pw::constant_dfa(2, true);
  auto r = pw::restrict_canonical(all, 0b10u);  // only track 1 checked
  for (const auto& w : all_words(9, 4)) {
    auto tr = pw::detail::unzip_tracks(2, w);
    ASSERT_EQ(pw::accepts(r, w), pw::detail::valid_track(tr[1]));
  }
}

TEST(Ops, ComplementAndEmptiness) {
  auto u = pw::constant_dfa(1, true);
  EXPECT_TRUE(pw::is_empty(pw::complement(u)));
  EXPECT_FALSE(pw::is_empty(u));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto a = random_automaton<bool>(rng, 1, 8, 2);
    auto c = pw::complement(a);
    for (const auto& w : all_words(3, 6)) ASSERT_NE(pw::accepts(a, w), pw::accepts(c, w));
    EXPECT_TRUE(pw::is_empty(pw::product(a, c, pw::connective::conj)));
  }
}

TEST(Ops, EquivalenceAgreesWithExhaustiveComparison) {
  std::mt19937_64 rng(5);
  int equal = 0;
  for (int i = 0; i < 300; ++i) {
    auto a = random_automaton<bool>(rng, 1, 3, 2);
    auto b = random_automaton<bool>(rng, 1, 3, 2);
    bool same = true;
    for (const auto& w : all_words(3, 8))
      if (pw::accepts(a, w) != pw::accepts(b, w)) same = false;
    ASSERT_EQ(pw::equivalent(a, b), same);
    ASSERT_EQ(pw::equivalent(b, a), same);
    ASSERT_TRUE(pw::equivalent(a, a));
    if (auto w = pw::distinguishing_word(a, b)) ASSERT_NE(pw::accepts(a, *w), pw::accepts(b, *w));
    equal += same;
  }
  EXPECT_GT(equal, 0);
}

TEST(Ops, ZeroSaturation) {
  // One track, accepts exactly "0012".
  pw::dfa a(1, 6, false);
  const pw::state_id dead = 5;
  for (pw::state_id q = 0; q < 5; ++q)
    for (pw::symbol_id s = 0; s < 3; ++s) a.set_next(q, s, dead);
  a.set_next(0, 0, 1);
  a.set_next(1, 0, 2);
  a.set_next(2, 1, 3);
  a.set_next(3, 2, 4);
  a.set_label(4, true);
  auto z = pw::zero_saturate(a);
  for (const char* s : {"12", "012", "0012"}) EXPECT_TRUE(pw::accepts(z, pw::digit_word(s))) << s;
  EXPECT_FALSE(pw::accepts(z, pw::digit_word("00012")));
  EXPECT_FALSE(pw::accepts(z, pw::digit_word("2")));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    auto r = random_automaton<bool>(rng, 1, 6, 2);
    auto zr = pw::zero_saturate(r);
    for (const auto& w : all_words(3, 6))
      if (pw::accepts(r, w)) ASSERT_TRUE(pw::accepts(zr, w));
  }
}

TEST(Ops, ProjectionMatchesBruteForceOnRandomAutomata) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 25; ++i) {
    const pw::state_id n = 5;
    auto a = random_automaton<bool>(rng, 2, n, 2);
    for (int track : {0, 1}) {
      auto p = pw::project(a, track);
      for (const auto& w : all_words(3, 3)) {
        // Some k leading zero columns and some digits on the erased track.
        bool expected = false;
        for (std::size_t k = 0; k < n && !expected; ++k) {
          std::vector<pw::symbol_id> kept(k, 0);
          kept.insert(kept.end(), w.begin(), w.end());
          for (const auto& v : all_words(3, kept.size())) {
            if (v.size() != kept.size()) continue;
            std::vector<pw::symbol_id> full;
            for (std::size_t j = 0; j < kept.size(); ++j)
              full.push_back(track == 0 ? v[j] * 3 + kept[j] : kept[j] * 3 + v[j]);
            if (pw::accepts(a, full)) {
              expected = true;
              break;
            }
          }
        }
        ASSERT_EQ(pw::accepts(p, w), expected) << "case " << i << " track " << track;
      }
    }
  }
}

TEST(Ops, ProjectionOfAdderMatchesArithmetic) {
  auto adder = pw::learn_adder(6, 1, 0).machine;
  // Erasing y leaves x <= z; erasing z leaves every pair.
  auto le = pw::project(adder, 1);
  auto any = pw::project(adder, 2);
  for (std::uint64_t x = 0; x <= 200; ++x)
    for (std::uint64_t z = 0; z <= 200; ++z) {
      ASSERT_EQ(pw::accepts(le, pw::encode_tuple({x, z})), x <= z) << x << " " << z;
      ASSERT_TRUE(pw::accepts(any, pw::encode_tuple({x, z})));
    }
  EXPECT_THROW(pw::project(adder, 3), pw::error);
}

TEST(Ops, RemapTracks) {
  auto adder = pw::learn_adder(6, 1, 0).machine;
  // Tracks (x, y, z) -> (y, x, z) on 3 tracks, and x = y = t on 2 tracks: t + t = z.
  auto swapped = pw::remap_tracks(adder, {1, 0, 2}, 3);
  auto doubled = pw::remap_tracks(adder, {0, 0, 1}, 2);
  for (std::uint64_t x = 0; x < 60; ++x)
    for (std::uint64_t z = 0; z < 120; ++z) {
      ASSERT_EQ(pw::accepts(doubled, pw::encode_tuple({x, z})), 2 * x == z);
      for (std::uint64_t y : {0ull, 3ull, 17ull})
        ASSERT_EQ(pw::accepts(swapped, pw::encode_tuple({x, y, z})), x + y == z);
    }
}

TEST(Ops, EnumerateInRadixOrder) {
  auto words = pw::enumerate(pw::canonical_recognizer(), 2);
  // The recognizer accepts 0*canonical, so leading zeros appear too.
  std::vector<std::string> got;
  for (const auto& w : words) {
    std::string s;
    for (auto c : w) s.push_back(static_cast<char>('0' + c));
    got.push_back(s);
  }
  EXPECT_EQ(got, (std::vector<std::string>{"", "0", "1", "00", "01", "10", "11", "20"}));

  // Restricted to words without a leading zero, the accepted strings are
  // exactly encode(0..12) in order.
  pw::dfa no_lead(1, 3, true);  // 0 start, 1 started, 2 dead
  no_lead.set_next(0, 0, 2);
  no_lead.set_next(0, 1, 1);
  no_lead.set_next(0, 2, 1);
  no_lead.set_label(2, false);
  auto strict = pw::product(pw::canonical_recognizer(), no_lead, pw::connective::conj);
  auto canon = pw::enumerate(strict, 4);
  ASSERT_GE(canon.size(), 13u);
  for (std::uint64_t n = 0; n <= 12; ++n) EXPECT_EQ(canon[n], pw::digit_word(pw::encode(n).digits()));
}

TEST(Ops, InfinitenessAndLiveStates) {
  EXPECT_TRUE(pw::is_infinite(pw::constant_dfa(1, true)));
  EXPECT_FALSE(pw::is_infinite(pw::constant_dfa(1, false)));
  EXPECT_EQ(pw::live_state_count(pw::constant_dfa(1, false)), 0u);
  // Exactly the word "1".
  pw::dfa one(1, 3, false);
  for (pw::symbol_id s = 0; s < 3; ++s) one.set_next(0, s, 2);
  one.set_next(0, 1, 1);
  for (pw::symbol_id s = 0; s < 3; ++s) one.set_next(1, s, 2);
  one.set_label(1, true);
  EXPECT_FALSE(pw::is_infinite(one));
  EXPECT_EQ(pw::live_state_count(one), 2u);
  EXPECT_TRUE(pw::is_infinite(pw::canonical_recognizer()));
}
