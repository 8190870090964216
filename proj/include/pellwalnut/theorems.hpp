#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "learner.hpp"
#include "logic/compiler.hpp"
#include "search.hpp"
#include "sequences.hpp"

namespace pellwalnut {

/// One checked claim inside a theorem script.
struct verdict {
  std::string predicate;
  bool expected = true;
  bool obtained = false;
  std::string detail;  // error text or a short explanation

  bool passed() const noexcept { return expected == obtained && detail.rfind("error:", 0) != 0; }
};

struct theorem_report {
  std::string theorem;
  std::vector<verdict> verdicts;
  /// Automata produced along the way, by predicate name.
  std::vector<std::pair<std::string, dfa>> automata;
  std::vector<std::string> notes;
  double seconds = 0;

  bool passed() const {
    for (const auto& v : verdicts)
      if (!v.passed()) return false;
    return !verdicts.empty();
  }
};

/// Consecutive-Pell convergents a_k / b_k = P_k / P_{k+1} of sqrt(2) - 1.
struct convergent_pair {
  std::size_t k = 0;
  std::uint64_t a = 0, b = 0;
};

inline std::vector<convergent_pair> convergents(std::size_t count) {
  std::vector<convergent_pair> out;
  for (std::size_t k = 1; k <= count; ++k) out.push_back({k, pell_number(k), pell_number(k + 1)});
  return out;
}

/// The automata a proof run depends on. Swapping any of them for a mutant
/// is how the scripts' sensitivity is tested.
struct proof_context {
  dfa adder;
  dfao c_alpha;
  dfao x5;
  dfao x3;

  /// Sequence automata built by this library around the given adder.
  static proof_context with_adder(dfa adder) {
    return {std::move(adder), c_alpha_dfao(), x5_dfao(), x3_dfao()};
  }
};

/// The adder learned with deterministic equivalence queries (exhaustive up
/// to length 6, no sampling). Learned once per process.
inline const dfa& reference_adder() {
  static const dfa a = learn_adder(6, 1, 0).machine;
  return a;
}

inline const proof_context& reference_context() {
  static const proof_context ctx = proof_context::with_adder(reference_adder());
  return ctx;
}

/// Every named predicate used by the scripts, in order of appearance.
inline const std::map<std::string, std::string>& paper_predicates() {
  static const std::map<std::string, std::string> p = [] {
    std::map<std::string, std::string> m;
    m["pell_successor"] = "?msd_pell x < y & (Az (z <= x) | (z >= y))";
    m["base_proof"] = "?msd_pell Ax,z ((x + 0 = z) <=> (x = z))";
    m["inductive_proof"] =
        "?msd_pell Ax,y,z,u,v\n"
        "    ($pell_successor(y, u) & $pell_successor(z, v)) =>\n"
        "    ((x + y = z) <=> (x + u = v))";
    for (const auto& [name, text] : x5_predicates()) m[name] = text;
    const std::string repeat = " & (Aj (j + p < n) =>\n    X[i + j] = X[i + j + p])";
    m["fac_low_exponent"] = "?msd_pell Ei,p,n\n    (p >= 1) & (2*n <= 3*p)" + repeat;
    m["fac_ex_exponent"] = "?msd_pell Ei,p,n\n    (p >= 1) & (2*n = 3*p)" + repeat;
    m["fac_high_exponent"] = "?msd_pell Ei,p,n\n    (p >= 1) & (2*n > 3*p)" + repeat;
    m["fac_cex5"] = "?msd_pell En\n    (p >= 1) & (2*n = 3*p)" + repeat;
    m["almost_ce_period"] =
        "?msd_pell Ei\n"
        "    (p > 10) &\n"
        "    (2*n + 4 >= 3*p) &\n"
        "    (Aj (j + p < n) => X[i + j] = X[i + j + p])";
    m["periods_of_high_powers"] =
        "?msd_pell Ei\n    (p >= 1) & (Aj (5*j <= 8*p) => X[i + j] = X[i + j + p])";
    m["maximal_reps"] =
        "?msd_pell Ei\n"
        "    (Aj (j < n) => X[i + j] = X[i + j + p]) &\n"
        "    (X[i + n] != X[i + n + p])";
    m["highest_powers"] =
        "?msd_pell\n"
        "    (p >= 1) & $pows(p) & $maximal_reps(n, p) &\n"
        "    (Am $maximal_reps(m, p) => m <= n)";
    return m;
  }();
  return p;
}

inline const std::string& paper_predicate(const std::string& name) {
  auto it = paper_predicates().find(name);
  if (it == paper_predicates().end()) throw error("no predicate named " + name);
  return it->second;
}

namespace detail {

class script {
 public:
  explicit script(std::string theorem) : start_(std::chrono::steady_clock::now()) {
    report_.theorem = std::move(theorem);
  }

  void check(std::string what, bool expected, const std::function<bool()>& f,
             std::string detail = {}) {
    verdict v{std::move(what), expected, !expected, std::move(detail)};
    try {
      v.obtained = f();
    } catch (const std::exception& e) {
      v.detail = std::string("error: ") + e.what();
    }
    report_.verdicts.push_back(std::move(v));
  }

  /// Evaluates a closed predicate from the table.
  void eval(const logic::environment& env, const std::string& name, bool expected) {
    check(name, expected, [&] { return logic::eval_closed(paper_predicate(name), env); });
  }

  void keep(std::string name, dfa a) { report_.automata.emplace_back(std::move(name), std::move(a)); }
  void note(std::string s) { report_.notes.push_back(std::move(s)); }

  theorem_report finish() {
    report_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  theorem_report report_;
  std::chrono::steady_clock::time_point start_;
};

/// Distinct (value per track) tuples accepted with at most max_len digits.
inline std::set<std::vector<std::uint64_t>> accepted_tuples(const dfa& a, std::size_t max_len) {
  std::set<std::vector<std::uint64_t>> out;
  for (const auto& w : enumerate(a, max_len)) {
    std::vector<std::uint64_t> t;
    for (const auto& track : unzip_tracks(a.tracks(), w)) t.push_back(decode(strip_leading_zeros(track)));
    out.insert(std::move(t));
  }
  return out;
}

inline std::vector<int> oracle_prefix(int (*f)(std::uint64_t), std::size_t len) {
  std::vector<int> w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = f(i);
  return w;
}

/// Longest run of consecutive i with w[i] == w[i+p], over the whole word.
inline std::size_t longest_match_run(const std::vector<int>& w, std::size_t p) {
  std::size_t best = 0, run = 0;
  for (std::size_t i = 0; i + p < w.size(); ++i) {
    run = w[i] == w[i + p] ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

inline logic::environment base_environment(const proof_context& ctx) {
  return logic::environment(ctx.adder);
}

}  // namespace detail

/// Inductive correctness proof of the addition automaton.
inline theorem_report verify_adder(const proof_context& ctx = reference_context()) {
  detail::script s("verify_adder");
  auto env = detail::base_environment(ctx);
  s.check("define pell_successor", true, [&] {
    env = logic::define(env, "pell_successor", paper_predicate("pell_successor"));
    return true;
  });
  s.eval(env, "base_proof", true);
  s.eval(env, "inductive_proof", true);
  if (auto* d = env.definition("pell_successor")) s.keep("pell_successor", d->automaton);
  return s.finish();
}

/// x5 automaton against its definition from c_alpha and the replacement
/// streams (0102)^w and (34)^w.
inline theorem_report verify_x5_construction(const proof_context& ctx = reference_context()) {
  detail::script s("verify_x5");
  auto env = detail::base_environment(ctx).with_sequence("C", ctx.c_alpha).with_sequence("X", ctx.x5);
  for (const auto& [name, text] : x5_predicates()) s.eval(env, name, true);
  return s.finish();
}

/// Critical exponent of x5 is 3/2: attained, and never exceeded.
inline theorem_report prove_e_x5(const proof_context& ctx = reference_context()) {
  detail::script s("prove_e_x5");
  auto env = detail::base_environment(ctx).with_sequence("X", ctx.x5);
  s.eval(env, "fac_low_exponent", true);
  s.eval(env, "fac_ex_exponent", true);
  s.eval(env, "fac_high_exponent", false);
  auto r = s.finish();
  if (r.passed()) r.notes.push_back("critical exponent of x5 is 3/2");
  return r;
}

/// Factors of x5 with exponent exactly 3/2 all have period 4.
inline std::pair<dfa, theorem_report> corollary_cex5(const proof_context& ctx = reference_context()) {
  detail::script s("corollary_cex5");
  auto env = detail::base_environment(ctx).with_sequence("X", ctx.x5);
  dfa cex(2);
  s.check("compile fac_cex5 over (i, p)", true, [&] {
    auto r = logic::compile(paper_predicate("fac_cex5"), env);
    cex = r.automaton;
    env = env.with_definition("fac_cex5", std::move(r));
    return env.definition("fac_cex5")->vars == std::vector<std::string>{"i", "p"};
  });
  s.keep("fac_cex5", cex);
  s.check("Ai,p $fac_cex5(i,p) => p = 4", true,
          [&] { return logic::eval_closed("Ai,p $fac_cex5(i,p) => p = 4", env); });
  s.check("fac_cex5 accepts (23,4)", true, [&] { return accepts(cex, encode_tuple({23, 4})); });
  s.check("fac_cex5 accepts (23,5)", false, [&] { return accepts(cex, encode_tuple({23, 5})); });
  s.check("x5[23..28] = 403240 with exponent 3/2", true, [&] {
    std::vector<int> w;
    for (std::uint64_t i = 23; i <= 28; ++i) w.push_back(dfao_eval(ctx.x5, i));
    finite_word f(w);
    return f.str() == "403240" && max_exponent(f) == rational(3, 2);
  });
  auto report = s.finish();
  return {cex, std::move(report)};
}

struct almost_powers_options {
  std::uint64_t max_period = 10000;
  std::size_t prefix = 100000;
  /// Periods up to this bound are also checked for completeness: every
  /// almost-3/2 power found in the prefix must be accepted.
  std::uint64_t complete_up_to = 2000;
};

/// Factors of length n and period p > 10 with 2n + 4 >= 3p: there are
/// infinitely many, and n/p tends to 3/2.
inline std::pair<dfa, theorem_report> almost_powers(const proof_context& ctx = reference_context(),
                                                   const almost_powers_options& opt = {}) {
  detail::script s("almost_powers");
  auto env = detail::base_environment(ctx).with_sequence("X", ctx.x5);
  dfa a(2);
  s.check("compile almost_ce_period over (n, p)", true, [&] {
    auto r = logic::compile(paper_predicate("almost_ce_period"), env);
    a = r.automaton;
    return r.vars == std::vector<std::string>{"n", "p"};
  });
  s.keep("almost_ce_period", a);
  s.check("infinitely many accepted pairs", true, [&] { return is_infinite(a); });

  // Enough digits for n <= 3p/2 + 2 with p <= max_period.
  std::size_t digits = 1;
  while (digits + 1 < pell_count && pell_number(digits + 1) <= 2 * opt.max_period + 2) ++digits;
  std::map<std::uint64_t, std::set<std::uint64_t>> by_period;
  s.check("enumerate accepted pairs", true, [&] {
    for (const auto& t : detail::accepted_tuples(a, digits + 1))
      if (t[1] <= opt.max_period) by_period[t[1]].insert(t[0]);
    return !by_period.empty();
  });

  auto x = detail::oracle_prefix(&x5_oracle, opt.prefix);
  s.check("accepted pairs match the oracle prefix (p <= " + std::to_string(opt.max_period) + ")",
          true, [&] {
            for (const auto& [p, ns] : by_period) {
              auto longest = p + detail::longest_match_run(x, p);
              std::uint64_t lo = (3 * p - 4 + 1) / 2;  // ceil((3p - 4) / 2)
              if (*ns.begin() != lo || *ns.rbegin() != longest || ns.size() != longest - lo + 1)
                return false;
            }
            return true;
          });
  s.check("every almost-3/2 power in the prefix is accepted (p <= " +
              std::to_string(opt.complete_up_to) + ")",
          true, [&] {
            for (std::uint64_t p = 11; p <= opt.complete_up_to; ++p) {
              auto longest = p + detail::longest_match_run(x, p);
              if (2 * longest + 4 >= 3 * p && !by_period.contains(p)) return false;
            }
            return true;
          });
  s.check("n/p < 3/2, gap shrinking, below 1/1000 beyond p = 2000", true, [&] {
    rational prev_gap(1);
    for (const auto& [p, ns] : by_period) {
      auto n = static_cast<std::int64_t>(*ns.rbegin());
      rational gap = rational(3, 2) - rational(n, static_cast<std::int64_t>(p));
      if (gap <= 0 || gap >= prev_gap) return false;
      if (p > 2000 && gap >= rational(1, 1000)) return false;
      prev_gap = gap;
    }
    return true;
  });
  for (const auto& [p, ns] : by_period)
    s.note("p = " + std::to_string(p) + ": n in [" + std::to_string(*ns.begin()) + ", " +
           std::to_string(*ns.rbegin()) + "]");
  auto report = s.finish();
  return {a, std::move(report)};
}

/// e(m) = (P_{m+1} + P_m + P_{m-1} - 2) / (P_m + P_{m-1}), the largest
/// exponent of a repetition of period P_m + P_{m-1} in x3.
inline std::pair<boost::multiprecision::cpp_int, boost::multiprecision::cpp_int> x3_exponent(
    std::size_t m) {
  using boost::multiprecision::cpp_int;
  auto p = pell_numbers<cpp_int>(m + 2);
  return {p[m + 1] + p[m] + p[m - 1] - 2, p[m] + p[m - 1]};
}

/// True iff num/den < 2 + sqrt(2)/2, decided in integers.
inline bool below_x3_bound(const boost::multiprecision::cpp_int& num,
                           const boost::multiprecision::cpp_int& den) {
  boost::multiprecision::cpp_int lhs = 2 * num - 4 * den;  // compare against sqrt(2) * den
  if (lhs < 0) return true;
  return lhs * lhs < 2 * den * den;
}

struct x3_options {
  std::size_t prefix = 100000;
  std::size_t first_m = 5, last_m = 8;
  std::size_t exponent_last_m = 60;
};

/// High powers of x3: their periods are exactly P_m + P_{m-1}, with longest
/// repetitions n = P_{m+1} - 2, and the exponents e(m) increase towards
/// 2 + sqrt(2)/2 without reaching it.
inline theorem_report x3_analysis(const proof_context& ctx = reference_context(),
                                  const x3_options& opt = {}) {
  detail::script s("x3_analysis");
  auto env = detail::base_environment(ctx).with_sequence("X", ctx.x3);

  s.check("periods_of_high_powers = 0*110000*", true, [&] {
    auto r = logic::compile(paper_predicate("periods_of_high_powers"), env);
    s.keep("periods_of_high_powers", r.automaton);
    return r.vars == std::vector<std::string>{"p"} &&
           equivalent(r.automaton, logic::compile_regex("0*110000*"));
  });

  dfa highest(2);
  s.check("compile highest_powers over (n, p)", true, [&] {
    env = logic::reg(env, "pows", "0*110000*");
    env = logic::define(env, "maximal_reps", paper_predicate("maximal_reps"));
    s.keep("maximal_reps", env.definition("maximal_reps")->automaton);
    auto r = logic::compile(paper_predicate("highest_powers"), env);
    highest = r.automaton;
    return r.vars == std::vector<std::string>{"n", "p"};
  });
  s.keep("highest_powers", highest);

  auto x = detail::oracle_prefix(&x3_oracle, std::max<std::size_t>(opt.prefix, pell_number(10)));
  for (std::size_t m = opt.first_m; m <= opt.last_m; ++m) {
    const auto p = pell_number(m) + pell_number(m - 1);
    const auto n = pell_number(m + 1) - 2;
    s.check("m = " + std::to_string(m) + ": p = " + std::to_string(p) + " gives only n = " +
                std::to_string(n),
            true, [&, p, n] {
              for (std::uint64_t k = 0; k <= 4 * p; ++k)
                if (accepts(highest, encode_tuple({k, p})) != (k == n)) return false;
              return detail::longest_match_run(x, p) == n;
            });
  }

  s.check("e(m) strictly increasing and below 2 + sqrt(2)/2 for m = " +
              std::to_string(opt.first_m) + ".." + std::to_string(opt.exponent_last_m),
          true, [&] {
            auto [pn, pd] = x3_exponent(opt.first_m);
            if (!below_x3_bound(pn, pd)) return false;
            for (std::size_t m = opt.first_m + 1; m <= opt.exponent_last_m; ++m) {
              auto [num, den] = x3_exponent(m);
              if (num * pd <= pn * den || !below_x3_bound(num, den)) return false;
              pn = num;
              pd = den;
            }
            return true;
          });
  return s.finish();
}

/// The whole suite, in a fixed order.
inline std::vector<theorem_report> prove_all(const proof_context& ctx = reference_context()) {
  std::vector<theorem_report> out;
  out.push_back(verify_adder(ctx));
  out.push_back(verify_x5_construction(ctx));
  out.push_back(prove_e_x5(ctx));
  out.push_back(corollary_cex5(ctx).second);
  out.push_back(almost_powers(ctx).second);
  out.push_back(x3_analysis(ctx));
  return out;
}

inline const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> names = {"verify_adder",   "verify_x5",     "prove_e_x5",
                                                 "corollary_cex5", "almost_powers", "x3_analysis"};
  return names;
}

inline theorem_report prove(const std::string& name, const proof_context& ctx = reference_context()) {
  if (name == "verify_adder") return verify_adder(ctx);
  if (name == "verify_x5") return verify_x5_construction(ctx);
  if (name == "prove_e_x5") return prove_e_x5(ctx);
  if (name == "corollary_cex5") return corollary_cex5(ctx).second;
  if (name == "almost_powers") return almost_powers(ctx).second;
  if (name == "x3_analysis") return x3_analysis(ctx);
  throw error("unknown theorem '" + name + "'");
}

}  // namespace pellwalnut
