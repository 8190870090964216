#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "automaton.hpp"
#include "minimize.hpp"
#include "ops.hpp"
#include "pell.hpp"

namespace pellwalnut {

using word = std::vector<symbol_id>;

/// A total, deterministic labelling of symbol words. `dead_prefix`, when
/// set, marks prefixes after which every extension is labelled
/// `dead_label`; the equivalence tester uses it to prune enumeration.
template <class Label>
struct membership_oracle {
  int tracks = 0;
  std::function<Label(std::span<const symbol_id>)> query;
  std::function<bool(std::span<const symbol_id>)> dead_prefix;
  Label dead_label{};
};

template <class Label>
using equivalence_tester =
    std::function<std::optional<word>(const automaton<Label>&)>;

template <class Label>
class non_convergence : public error {
 public:
  non_convergence(std::string what, automaton<Label> last)
      : error(std::move(what)), last_(std::move(last)) {}
  const automaton<Label>& last_hypothesis() const noexcept { return last_; }

 private:
  automaton<Label> last_;
};

/// Finite fragment of the Hankel matrix: rows indexed by a prefix-closed
/// set S plus its one-symbol extensions, columns by a suffix-closed set E.
/// Counterexamples are handled by adding all their suffixes to E, which
/// keeps the rows of S pairwise distinct and the table consistent.
template <class Label>
class observation_table {
 public:
  using row_type = std::vector<Label>;

  explicit observation_table(const membership_oracle<Label>& oracle)
      : oracle_(oracle), alpha_(oracle.tracks) {
    prefixes_.push_back({});
    suffixes_.push_back({});
    index_.emplace(row({}), 0);
  }

  std::size_t prefix_count() const noexcept { return prefixes_.size(); }
  std::size_t suffix_count() const noexcept { return suffixes_.size(); }
  std::size_t queries() const noexcept { return cache_.size(); }
  const std::vector<word>& prefixes() const noexcept { return prefixes_; }
  const std::vector<word>& suffixes() const noexcept { return suffixes_; }

  Label member(const word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    Label v = oracle_.query(w);
    cache_.emplace(w, v);
    return v;
  }

  row_type row(const word& u) {
    row_type r;
    r.reserve(suffixes_.size());
    word uv;
    for (const auto& e : suffixes_) {
      uv.assign(u.begin(), u.end());
      uv.insert(uv.end(), e.begin(), e.end());
      r.push_back(member(uv));
    }
    return r;
  }

  /// Promotes unmatched one-symbol extensions into S until closed.
  void close() {
    for (std::size_t i = 0; i < prefixes_.size(); ++i) {
      for (symbol_id s = 0; s < alpha_.size(); ++s) {
        word ua = prefixes_[i];
        ua.push_back(s);
        auto r = row(ua);
        if (!index_.contains(r)) {
          index_.emplace(std::move(r), prefixes_.size());
          prefixes_.push_back(std::move(ua));
        }
      }
    }
  }

  bool is_closed() {
    for (std::size_t i = 0; i < prefixes_.size(); ++i)
      for (symbol_id s = 0; s < alpha_.size(); ++s) {
        word ua = prefixes_[i];
        ua.push_back(s);
        if (!index_.contains(row(ua))) return false;
      }
    return true;
  }

  /// Rows of S that agree must agree after every one-symbol extension.
  bool is_consistent() {
    for (std::size_t i = 0; i < prefixes_.size(); ++i)
      for (std::size_t j = i + 1; j < prefixes_.size(); ++j) {
        if (row(prefixes_[i]) != row(prefixes_[j])) continue;
        for (symbol_id s = 0; s < alpha_.size(); ++s) {
          word a = prefixes_[i], b = prefixes_[j];
          a.push_back(s);
          b.push_back(s);
          if (row(a) != row(b)) return false;
        }
      }
    return true;
  }

  /// Number of distinct rows among S.
  std::size_t distinct_rows() {
    std::unordered_map<row_type, int, row_hash> seen;
    for (const auto& u : prefixes_) seen.emplace(row(u), 0);
    return seen.size();
  }

  void add_counterexample(const word& cex) {
    for (std::size_t k = 0; k <= cex.size(); ++k) {
      word suffix(cex.begin() + static_cast<std::ptrdiff_t>(k), cex.end());
      if (std::find(suffixes_.begin(), suffixes_.end(), suffix) == suffixes_.end())
        suffixes_.push_back(std::move(suffix));
    }
    index_.clear();
    for (std::size_t i = 0; i < prefixes_.size(); ++i) index_.emplace(row(prefixes_[i]), i);
  }

  /// Hypothesis automaton with one state per row of S. Requires a closed
  /// table.
  automaton<Label> hypothesis() {
    automaton<Label> h(alpha_.tracks(), static_cast<state_id>(prefixes_.size()));
    for (std::size_t i = 0; i < prefixes_.size(); ++i) {
      h.set_label(static_cast<state_id>(i), member(prefixes_[i]));
      for (symbol_id s = 0; s < alpha_.size(); ++s) {
        word ua = prefixes_[i];
        ua.push_back(s);
        auto it = index_.find(row(ua));
        if (it == index_.end()) throw error("observation table is not closed");
        h.set_next(static_cast<state_id>(i), s, static_cast<state_id>(it->second));
      }
    }
    return h;
  }

 private:
  struct row_hash {
    std::size_t operator()(const row_type& r) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto x : r) {
        h ^= static_cast<std::uint64_t>(x);
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  const membership_oracle<Label>& oracle_;
  track_alphabet alpha_;
  std::vector<word> prefixes_;
  std::vector<word> suffixes_;
  std::unordered_map<row_type, std::size_t, row_hash> index_;
  std::unordered_map<word, Label, detail::vector_hash> cache_;
};

template <class Label>
struct lstar_result {
  automaton<Label> machine;
  std::size_t rounds = 0;
  std::size_t queries = 0;
  std::size_t table_rows = 0;  // distinct rows of S at convergence
};

/// Angluin's L*. Returns the hypothesis the equivalence tester accepted, in
/// canonical numbering.
template <class Label>
lstar_result<Label> lstar(const membership_oracle<Label>& oracle,
                          const equivalence_tester<Label>& equiv, std::size_t max_rounds = 500) {
  observation_table<Label> table(oracle);
  for (std::size_t round = 1;; ++round) {
    table.close();
    auto h = table.hypothesis();
    auto cex = equiv(h);
    if (!cex) {
      lstar_result<Label> r;
      r.machine = canonicalize(h);
      r.rounds = round;
      r.queries = table.queries();
      r.table_rows = table.distinct_rows();
      return r;
    }
    if (round >= max_rounds)
      throw non_convergence<Label>("L* did not converge within " + std::to_string(max_rounds) +
                                       " equivalence queries",
                                   canonicalize(h));
    table.add_counterexample(*cex);
  }
}

struct bounded_equiv_options {
  std::size_t exhaustive_len = 6;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

/// Compares hypothesis and oracle on every word up to
/// min(max_len, exhaustive_len) in radix order, pruning below dead prefixes
/// (where the hypothesis residual is checked symbolically instead), then on
/// random words of the remaining lengths that avoid dead prefixes.
template <class Label>
std::optional<word> bounded_equiv(const automaton<Label>& hyp,
                                  const membership_oracle<Label>& oracle, std::size_t max_len,
                                  const bounded_equiv_options& opt = {}) {
  if (max_len < 1) throw error("bounded_equiv: max_len must be at least 1");
  const symbol_id m = hyp.symbols();

  // Per hypothesis state: a shortest word reaching a label other than the
  // dead label, if one exists.
  std::vector<std::optional<word>> escape(hyp.size());
  std::vector<char> escape_done(hyp.size(), 0);
  auto residual_escape = [&](state_id q) -> const std::optional<word>& {
    if (!escape_done[q]) {
      escape[q] = shortest_word_to(
          hyp, [&](state_id t) { return hyp.label(t) != oracle.dead_label; }, q);
      escape_done[q] = 1;
    }
    return escape[q];
  };
  auto is_dead = [&](const word& w) { return oracle.dead_prefix && oracle.dead_prefix(w); };

  const std::size_t exhaustive = std::min(max_len, opt.exhaustive_len);
  word prefix;
  std::optional<word> found;
  // Depth-first over words of exactly `len` symbols in lexicographic order.
  std::function<bool(std::size_t, state_id)> visit = [&](std::size_t len, state_id q) {
    if (prefix.size() == len) {
      if (hyp.label(q) != oracle.query(prefix)) {
        found = prefix;
        return true;
      }
      if (is_dead(prefix)) {
        if (const auto& esc = residual_escape(q)) {
          found = prefix;
          found->insert(found->end(), esc->begin(), esc->end());
          return true;
        }
      }
      return false;
    }
    for (symbol_id s = 0; s < m; ++s) {
      prefix.push_back(s);
      bool dead = is_dead(prefix);
      bool stop = false;
      if (!dead || prefix.size() == len) stop = visit(len, hyp.next(q, s));
      prefix.pop_back();
      if (stop) return true;
    }
    return false;
  };
  for (std::size_t len = 0; len <= exhaustive; ++len)
    if (visit(len, hyp.initial())) return found;

  if (exhaustive >= max_len) return std::nullopt;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick_len(exhaustive + 1, max_len);
  std::vector<symbol_id> allowed;
  for (std::size_t n = 0; n < opt.samples; ++n) {
    auto len = pick_len(rng);
    word w;
    state_id q = hyp.initial();
    for (std::size_t i = 0; i < len; ++i) {
      allowed.clear();
      for (symbol_id s = 0; s < m; ++s) {
        w.push_back(s);
        if (!is_dead(w)) allowed.push_back(s);
        w.pop_back();
      }
      if (allowed.empty()) break;
      auto s = allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)];
      w.push_back(s);
      q = hyp.next(q, s);
    }
    if (hyp.label(q) != oracle.query(w)) return w;
  }
  return std::nullopt;
}

namespace detail {

/// Splits a symbol word into per-track digit strings.
inline std::vector<std::string> unzip_tracks(int tracks, std::span<const symbol_id> w) {
  track_alphabet alpha(tracks);
  std::vector<std::string> out(tracks);
  for (auto s : w)
    for (int t = 0; t < tracks; ++t) out[t].push_back(static_cast<char>('0' + alpha.digit(s, t)));
  return out;
}

/// True once some track contains a 2 followed by a non-zero digit.
inline bool has_broken_track(int tracks, std::span<const symbol_id> w) {
  track_alphabet alpha(tracks);
  for (std::size_t i = 1; i < w.size(); ++i)
    for (int t = 0; t < tracks; ++t)
      if (alpha.digit(w[i - 1], t) == 2 && alpha.digit(w[i], t) != 0) return true;
  return false;
}

inline bool valid_track(std::string_view digits) {
  return is_canonical(strip_leading_zeros(digits));
}

}  // namespace detail

/// x + y = z over three zero-padded tracks; non-canonical tracks are
/// rejected.
inline bool adder_oracle(std::span<const symbol_id> w) {
  auto tr = detail::unzip_tracks(3, w);
  for (const auto& t : tr)
    if (!detail::valid_track(t)) return false;
  return decode(strip_leading_zeros(tr[0])) + decode(strip_leading_zeros(tr[1])) ==
         decode(strip_leading_zeros(tr[2]));
}

inline membership_oracle<bool> adder_membership() {
  membership_oracle<bool> o;
  o.tracks = 3;
  o.query = [](std::span<const symbol_id> w) { return adder_oracle(w); };
  o.dead_prefix = [](std::span<const symbol_id> w) { return detail::has_broken_track(3, w); };
  o.dead_label = false;
  return o;
}

/// One-track Moore oracle for a sequence indexed by naturals. Words whose
/// track is not 0*canonical get `invalid_output`.
template <class Fn>
membership_oracle<std::uint8_t> sequence_membership(Fn f, std::uint8_t invalid_output = 0) {
  membership_oracle<std::uint8_t> o;
  o.tracks = 1;
  o.query = [f, invalid_output](std::span<const symbol_id> w) -> std::uint8_t {
    std::string digits;
    for (auto s : w) digits.push_back(static_cast<char>('0' + s));
    if (!detail::valid_track(digits)) return invalid_output;
    return static_cast<std::uint8_t>(f(decode(strip_leading_zeros(digits))));
  };
  o.dead_prefix = [](std::span<const symbol_id> w) { return detail::has_broken_track(1, w); };
  o.dead_label = invalid_output;
  return o;
}

/// Learns the Pell addition relation (tracks x, y, z with x + y = z).
/// Equivalence queries check every word up to length 6, then `samples`
/// random words up to `max_len`; with samples = 0 the run is deterministic.
inline lstar_result<bool> learn_adder(std::size_t max_len = 8, std::uint64_t seed = 1,
                                      std::size_t samples = 100000) {
  auto oracle = adder_membership();
  bounded_equiv_options opt;
  opt.seed = seed;
  opt.samples = samples;
  equivalence_tester<bool> eq = [&](const dfa& h) { return bounded_equiv(h, oracle, max_len, opt); };
  return lstar(oracle, eq);
}

}  // namespace pellwalnut
