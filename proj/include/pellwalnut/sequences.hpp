#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "learner.hpp"
#include "logic/compiler.hpp"
#include "pell.hpp"

namespace pellwalnut {

/// floor(sqrt(v)), exact.
inline std::uint64_t isqrt(unsigned __int128 v) {
  if (v == 0) return 0;
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const int bits = hi ? 128 - __builtin_clzll(hi) : 64 - __builtin_clzll(static_cast<std::uint64_t>(v));
  // 2^ceil(bits/2) >= sqrt(v); Newton's iteration descends from there.
  unsigned __int128 x = static_cast<unsigned __int128>(1) << ((bits + 1) / 2);
  for (;;) {
    unsigned __int128 y = (x + v / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return static_cast<std::uint64_t>(x);
}

/// Largest index accepted by the exact Sturmian arithmetic (2n^2 must fit
/// in 128 bits with room for n+1).
inline constexpr std::uint64_t sturmian_limit = std::uint64_t{1} << 62;

/// floor(n * alpha) for alpha = sqrt(2) - 1.
inline std::uint64_t floor_alpha(std::uint64_t n) {
  if (n > sturmian_limit) throw error("index too large for exact arithmetic");
  auto m = static_cast<unsigned __int128>(n);
  return isqrt(2 * m * m) - n;
}

/// c_alpha[n] = floor((n+1) alpha) - floor(n alpha), indexed from 1.
inline int sturmian(std::uint64_t n) {
  if (n == 0) throw error("the characteristic word is indexed from 1");
  return static_cast<int>(floor_alpha(n + 1) - floor_alpha(n));
}

/// Number of 1s in c_alpha[1..m].
inline std::uint64_t ones_prefix(std::uint64_t m) { return floor_alpha(m + 1); }

/// A periodic word given by its repeating block.
struct constant_gap_word {
  std::string block;

  char at(std::uint64_t i) const {
    if (block.empty()) throw error("empty constant-gap block");
    return block[i % block.size()];
  }
};

/// Replaces the k-th 0 of c_alpha by zeros.at(k-1) and the k-th 1 by
/// ones.at(k-1); the result is indexed from 0.
inline int replacement_oracle(std::uint64_t i, const constant_gap_word& zeros,
                              const constant_gap_word& ones) {
  const std::uint64_t m = i + 1;
  const auto n1 = ones_prefix(m);
  if (sturmian(m) == 0) return zeros.at(m - n1 - 1) - '0';
  return ones.at(n1 - 1) - '0';
}

inline int x5_oracle(std::uint64_t i) { return replacement_oracle(i, {"0102"}, {"34"}); }
inline int x3_oracle(std::uint64_t i) { return replacement_oracle(i, {"01"}, {"2"}); }

/// Output of `d` on the canonical representation of n.
inline std::uint8_t dfao_eval(const dfao& d, std::uint64_t n) {
  return d.evaluate(digit_word(encode(n).digits()));
}

/// c_alpha as a one-track automaton: output 1 iff the representation ends
/// in an odd number of zeros. Index 0 (empty input) outputs 0.
inline dfao c_alpha_dfao() {
  enum : state_id { start, even, odd, after_two, sink };
  dfao d(1, 5, 0);
  auto edge = [&](state_id q, int digit, state_id t) { d.set_next(q, static_cast<symbol_id>(digit), t); };
  // Leading zeros keep the start state.
  edge(start, 0, start);
  edge(start, 1, even);
  edge(start, 2, after_two);
  edge(even, 0, odd);
  edge(even, 1, even);
  edge(even, 2, after_two);
  edge(odd, 0, even);
  edge(odd, 1, even);
  edge(odd, 2, after_two);
  edge(after_two, 0, odd);
  edge(after_two, 1, sink);
  edge(after_two, 2, sink);
  for (int s = 0; s < 3; ++s) edge(sink, s, sink);
  d.set_label(odd, 1);
  return minimize(d);
}

namespace detail {

inline dfao learn_sequence(int (*oracle)(std::uint64_t)) {
  auto member = sequence_membership(oracle);
  bounded_equiv_options opt;
  // One track keeps exhaustive checking cheap; no sampling, so the result
  // is deterministic.
  opt.exhaustive_len = 14;
  opt.samples = 0;
  equivalence_tester<std::uint8_t> eq = [&](const dfao& h) {
    return bounded_equiv(h, member, 14, opt);
  };
  return lstar(member, eq).machine;
}

}  // namespace detail

/// Automaton for x5 learned from the replacement oracle.
inline const dfao& x5_dfao() {
  static const dfao d = detail::learn_sequence(&x5_oracle);
  return d;
}

/// Automaton for x3 learned from the replacement oracle.
inline const dfao& x3_dfao() {
  static const dfao d = detail::learn_sequence(&x3_oracle);
  return d;
}

/// The five predicates that pin x5 to its replacement definition.
inline const std::vector<std::pair<std::string, std::string>>& x5_predicates() {
  static const std::vector<std::pair<std::string, std::string>> preds = {
      {"first_0_to_0", "?msd_pell C[1] = @0 & X[0] = @0"},
      {"second_0_to_1", "?msd_pell C[3] = @0 & X[2] = @1"},
      {"possible_triplets_for_0s",
       "?msd_pell Ap,q,r\n"
       "    ((p < q) & (q < r) &\n"
       "     (C[p + 1] = @0) &\n"
       "     (C[q + 1] = @0) &\n"
       "     (C[r + 1] = @0) &\n"
       "     (Ai ((i > p) & (i < r) & (i != q)) =>\n"
       "         (C[i + 1] = @1))) =>\n"
       "    (((X[p] = @0) & (X[q] = @1) & (X[r] = @0)) |\n"
       "     ((X[p] = @1) & (X[q] = @0) & (X[r] = @2)) |\n"
       "     ((X[p] = @0) & (X[q] = @2) & (X[r] = @0)) |\n"
       "     ((X[p] = @2) & (X[q] = @0) & (X[r] = @1)))"},
      {"first_1_to_3", "?msd_pell C[2] = @1 & X[1] = @3"},
      {"alternate_3_4_for_1s",
       "?msd_pell Ap,q\n"
       "    ((p < q) &\n"
       "     (C[p + 1] = @1) &\n"
       "     (C[q + 1] = @1) &\n"
       "     (Ai ((i > p) & (i < q)) => (C[i + 1] = @0))) =>\n"
       "    (((X[p] = @3) & (X[q] = @4)) |\n"
       "     ((X[p] = @4) & (X[q] = @3)))"},
  };
  return preds;
}

/// Name of the first replacement predicate that fails with C and X bound to
/// the given automata, or nullopt if all hold.
inline std::optional<std::string> first_failing_x5_predicate(const dfao& c, const dfao& x,
                                                             const dfa& adder) {
  logic::environment env(adder);
  env = env.with_sequence("C", c).with_sequence("X", x);
  for (const auto& [name, text] : x5_predicates())
    if (!logic::eval_closed(text, env)) return name;
  return std::nullopt;
}

class verification_failure : public error {
 public:
  explicit verification_failure(const std::string& predicate)
      : error("predicate " + predicate + " is false"), predicate_(predicate) {}
  const std::string& predicate() const noexcept { return predicate_; }

 private:
  std::string predicate_;
};

/// Checks x against its definition from c; throws verification_failure
/// naming the first false predicate.
inline bool verify_x5(const dfao& c, const dfao& x, const dfa& adder) {
  if (auto failed = first_failing_x5_predicate(c, x, adder)) throw verification_failure(*failed);
  return true;
}

}  // namespace pellwalnut
