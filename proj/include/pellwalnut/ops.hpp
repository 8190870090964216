#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "automaton.hpp"
#include "minimize.hpp"
#include "pell.hpp"

namespace pellwalnut {

enum class connective { conj, disj, implies, iff, exclusive };

inline bool apply(connective op, bool x, bool y) noexcept {
  switch (op) {
    case connective::conj: return x && y;
    case connective::disj: return x || y;
    case connective::implies: return !x || y;
    case connective::iff: return x == y;
    case connective::exclusive: return x != y;
  }
  return false;
}

namespace detail {

struct vector_hash {
  std::size_t operator()(const std::vector<state_id>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

struct triple_hash {
  std::size_t operator()(const std::array<std::uint32_t, 3>& k) const noexcept {
    std::uint64_t h = k[0] * 0x9E3779B97F4A7C15ull;
    h ^= (k[1] + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
    h ^= (k[2] + 0x165667B19E3779F9ull) * 0x94D049BB133111EBull;
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }
};

/// For each symbol of the `tracks`-track alphabet, the symbol obtained by
/// reading the digits at `positions` (positions[i] is the source track of
/// target track i).
inline std::vector<symbol_id> restriction_table(int tracks, const std::vector<int>& positions) {
  track_alphabet from(tracks);
  track_alphabet to(static_cast<int>(positions.size()));
  std::vector<symbol_id> table(from.size());
  for (symbol_id s = 0; s < from.size(); ++s) {
    symbol_id r = 0;
    for (int p : positions) r = r * digit_base + static_cast<symbol_id>(from.digit(s, p));
    table[s] = r;
  }
  return table;
}

/// Canonical-form tracking for a set of tracks: bit t set means track t's
/// last digit was 2. Returns false if some checked track became invalid.
inline bool step_validity(const track_alphabet& alpha, std::uint32_t checked, symbol_id s,
                          std::uint32_t& pending) {
  std::uint32_t next = 0;
  for (int t = 0; t < alpha.tracks(); ++t) {
    if (!(checked >> t & 1u)) continue;
    int d = alpha.digit(s, t);
    if ((pending >> t & 1u) && d != 0) return false;
    if (d == 2) next |= 1u << t;
  }
  pending = next;
  return true;
}

}  // namespace detail

/// Product of two automata whose tracks are embedded into a common
/// `tracks`-track alphabet: a's track i is result track a_pos[i], likewise
/// for b. Result accepts w iff op(a accepts w|a, b accepts w|b) and every
/// track in `checked` is of the form 0*canonical. Result is minimized.
inline dfa product(const dfa& a, const std::vector<int>& a_pos, const dfa& b,
                   const std::vector<int>& b_pos, int tracks, connective op,
                   std::uint32_t checked = 0) {
  track_alphabet alpha(tracks);
  if (static_cast<int>(a_pos.size()) != a.tracks() || static_cast<int>(b_pos.size()) != b.tracks())
    throw error("product: track embedding does not match operand");
  auto ra = detail::restriction_table(tracks, a_pos);
  auto rb = detail::restriction_table(tracks, b_pos);

  using key = std::array<std::uint32_t, 3>;
  std::unordered_map<key, state_id, detail::triple_hash> ids;
  std::vector<key> states;
  const state_id dead_marker = static_cast<state_id>(-1);
  bool has_dead = false;
  state_id dead_id = 0;

  auto intern = [&](const key& k) {
    auto [it, inserted] = ids.try_emplace(k, static_cast<state_id>(states.size()));
    if (inserted) states.push_back(k);
    return it->second;
  };
  intern({a.initial(), b.initial(), 0});

  std::vector<state_id> delta;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [qa, qb, pending] = states[i];
    for (symbol_id s = 0; s < alpha.size(); ++s) {
      std::uint32_t p = pending;
      if (!detail::step_validity(alpha, checked, s, p)) {
        delta.push_back(dead_marker);
        has_dead = true;
        continue;
      }
      delta.push_back(intern({a.next(qa, ra[s]), b.next(qb, rb[s]), p}));
    }
  }
  dfa out(tracks, static_cast<state_id>(states.size()) + (has_dead ? 1 : 0));
  if (has_dead) dead_id = static_cast<state_id>(states.size());
  for (state_id i = 0; i < states.size(); ++i) {
    auto [qa, qb, pending] = states[i];
    out.set_label(i, pending == 0 && apply(op, a.label(qa), b.label(qb)));
    for (symbol_id s = 0; s < alpha.size(); ++s) {
      auto t = delta[static_cast<std::size_t>(i) * alpha.size() + s];
      out.set_next(i, s, t == dead_marker ? dead_id : t);
    }
  }
  if (has_dead) {
    out.set_label(dead_id, false);
    for (symbol_id s = 0; s < alpha.size(); ++s) out.set_next(dead_id, s, dead_id);
  }
  return minimize(out);
}

inline std::vector<int> identity_positions(int tracks) {
  std::vector<int> p(tracks);
  for (int i = 0; i < tracks; ++i) p[i] = i;
  return p;
}

/// Same-alphabet product.
inline dfa product(const dfa& a, const dfa& b, connective op) {
  if (a.alphabet() != b.alphabet()) throw error("product: alphabet mismatch");
  auto pos = identity_positions(a.tracks());
  return product(a, pos, b, pos, a.tracks(), op, 0);
}

inline dfa complement(const dfa& a) {
  dfa out = a;
  for (state_id q = 0; q < out.size(); ++q) out.set_label(q, !out.label(q));
  return minimize(out);
}

/// Intersects with the language where each track in `checked` is
/// 0*canonical.
inline dfa restrict_canonical(const dfa& a, std::uint32_t checked) {
  auto pos = identity_positions(a.tracks());
  return product(a, pos, constant_dfa(a.tracks(), true), pos, a.tracks(), connective::conj,
                 checked);
}

inline std::uint32_t all_tracks(int tracks) { return tracks ? (1u << tracks) - 1 : 0u; }

/// Rewires tracks: old track i becomes track positions[i] of a
/// `tracks`-track automaton. Several old tracks may map to the same new
/// track (the result then requires them to agree); new tracks that no old
/// track maps to are unconstrained.
template <class Label>
automaton<Label> remap_tracks(const automaton<Label>& a, const std::vector<int>& positions,
                              int tracks) {
  if (static_cast<int>(positions.size()) != a.tracks())
    throw error("remap_tracks: position list does not match track count");
  for (int p : positions)
    if (p < 0 || p >= tracks) throw error("remap_tracks: position out of range");
  auto table = detail::restriction_table(tracks, positions);
  automaton<Label> out(tracks, a.size());
  out.set_initial(a.initial());
  for (state_id q = 0; q < a.size(); ++q) {
    out.set_label(q, a.label(q));
    for (symbol_id s = 0; s < out.symbols(); ++s) out.set_next(q, s, a.next(q, table[s]));
  }
  return out;
}

namespace detail {

/// Subset construction for an automaton read through a nondeterministic
/// symbol relation: choices[s] lists the input symbols of `a` that symbol s
/// of the result may stand for. The start set is given explicitly.
inline dfa subset_construction(const dfa& a, int tracks,
                               const std::vector<std::vector<symbol_id>>& choices,
                               std::vector<state_id> start) {
  track_alphabet alpha(tracks);
  std::unordered_map<std::vector<state_id>, state_id, vector_hash> ids;
  std::vector<std::vector<state_id>> sets;
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  ids.emplace(start, 0);
  sets.push_back(std::move(start));
  std::vector<state_id> delta;
  std::vector<char> seen(a.size(), 0);
  std::vector<state_id> next;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (symbol_id s = 0; s < alpha.size(); ++s) {
      next.clear();
      for (auto q : sets[i])
        for (auto c : choices[s]) {
          auto t = a.next(q, c);
          if (!seen[t]) {
            seen[t] = 1;
            next.push_back(t);
          }
        }
      for (auto t : next) seen[t] = 0;
      std::sort(next.begin(), next.end());
      auto [it, inserted] = ids.try_emplace(next, static_cast<state_id>(sets.size()));
      if (inserted) sets.push_back(next);
      delta.push_back(it->second);
    }
  }
  dfa out(tracks, static_cast<state_id>(sets.size()));
  for (state_id i = 0; i < sets.size(); ++i) {
    bool acc = std::any_of(sets[i].begin(), sets[i].end(),
                           [&](state_id q) { return a.label(q); });
    out.set_label(i, acc);
    for (symbol_id s = 0; s < alpha.size(); ++s)
      out.set_next(i, s, delta[static_cast<std::size_t>(i) * alpha.size() + s]);
  }
  return out;
}

/// States reachable from `from` using only the given symbols.
inline std::vector<state_id> closure(const dfa& a, state_id from,
                                     const std::vector<symbol_id>& symbols) {
  std::vector<char> seen(a.size(), 0);
  std::vector<state_id> out{from};
  seen[from] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto s : symbols) {
      auto t = a.next(out[i], s);
      if (!seen[t]) {
        seen[t] = 1;
        out.push_back(t);
      }
    }
  return out;
}

}  // namespace detail

/// Leading-zero closure: accepts w iff a accepts 0^k w for some k >= 0.
inline dfa zero_saturate(const dfa& a) {
  std::vector<std::vector<symbol_id>> choices(a.symbols());
  for (symbol_id s = 0; s < a.symbols(); ++s) choices[s] = {s};
  auto start = detail::closure(a, a.initial(), {track_alphabet::zero()});
  return minimize(detail::subset_construction(a, a.tracks(), choices, std::move(start)));
}

/// Existential projection of one track followed by zero saturation: the
/// result accepts w iff some digit string for the erased track, together
/// with w padded by leading zeros, is accepted.
inline dfa project(const dfa& a, int track) {
  if (a.tracks() < 1 || track < 0 || track >= a.tracks())
    throw error("project: track out of range");
  const int k = a.tracks() - 1;
  track_alphabet small(k), big(a.tracks());
  std::vector<std::vector<symbol_id>> choices(small.size());
  for (symbol_id s = 0; s < small.size(); ++s) {
    auto digits = small.decode(s);
    digits.insert(digits.begin() + track, 0);
    for (int d = 0; d < digit_base; ++d) {
      digits[track] = d;
      choices[s].push_back(big.encode(digits));
    }
  }
  auto start = detail::closure(a, a.initial(), choices[0]);
  return minimize(detail::subset_construction(a, k, choices, std::move(start)));
}

template <class Label>
bool accepts(const automaton<Label>& a, std::span<const symbol_id> w) {
  return static_cast<bool>(a.evaluate(w));
}

/// Shortest word (radix-least among shortest) leading from the initial
/// state to a state satisfying `pred`, if any.
template <class Label, class Pred>
std::optional<std::vector<symbol_id>> shortest_word_to(const automaton<Label>& a, Pred pred,
                                                       std::optional<state_id> from = {}) {
  state_id start = from.value_or(a.initial());
  std::vector<state_id> parent(a.size(), static_cast<state_id>(-1));
  std::vector<symbol_id> via(a.size(), 0);
  std::vector<state_id> queue{start};
  parent[start] = start;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto q = queue[i];
    if (pred(q)) {
      std::vector<symbol_id> w;
      while (q != start) {
        w.push_back(via[q]);
        q = parent[q];
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (symbol_id s = 0; s < a.symbols(); ++s) {
      auto t = a.next(q, s);
      if (parent[t] == static_cast<state_id>(-1)) {
        parent[t] = q;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

inline bool is_empty(const dfa& a) {
  return !shortest_word_to(a, [&](state_id q) { return a.label(q); }).has_value();
}

/// Shortest word on which the two automata produce different labels.
template <class Label>
std::optional<std::vector<symbol_id>> distinguishing_word(const automaton<Label>& a,
                                                          const automaton<Label>& b) {
  if (a.alphabet() != b.alphabet()) throw error("equivalence: alphabet mismatch");
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, symbol_id>> parent;
  auto pack = [](state_id x, state_id y) { return (std::uint64_t{x} << 32) | y; };
  std::vector<std::uint64_t> queue{pack(a.initial(), b.initial())};
  parent[queue[0]] = {queue[0], 0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto k = queue[i];
    auto qa = static_cast<state_id>(k >> 32), qb = static_cast<state_id>(k & 0xffffffffu);
    if (a.label(qa) != b.label(qb)) {
      std::vector<symbol_id> w;
      while (k != queue[0]) {
        auto [p, s] = parent[k];
        w.push_back(s);
        k = p;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (symbol_id s = 0; s < a.symbols(); ++s) {
      auto t = pack(a.next(qa, s), b.next(qb, s));
      if (parent.try_emplace(t, k, s).second) queue.push_back(t);
    }
  }
  return std::nullopt;
}

template <class Label>
bool equivalent(const automaton<Label>& a, const automaton<Label>& b) {
  return !distinguishing_word(a, b).has_value();
}

/// Accepted words of length <= max_len in radix order.
inline std::vector<std::vector<symbol_id>> enumerate(const dfa& a, std::size_t max_len) {
  // Prune states that cannot reach acceptance.
  std::vector<char> live(a.size(), 0);
  for (state_id q = 0; q < a.size(); ++q) live[q] = a.label(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (state_id q = 0; q < a.size(); ++q) {
      if (live[q]) continue;
      for (symbol_id s = 0; s < a.symbols(); ++s)
        if (live[a.next(q, s)]) {
          live[q] = 1;
          changed = true;
          break;
        }
    }
  }
  std::vector<std::vector<symbol_id>> out;
  std::vector<std::pair<std::vector<symbol_id>, state_id>> level{{{}, a.initial()}};
  for (std::size_t len = 0; len <= max_len && !level.empty(); ++len) {
    std::vector<std::pair<std::vector<symbol_id>, state_id>> next;
    for (auto& [w, q] : level) {
      if (a.label(q)) out.push_back(w);
      if (len == max_len) continue;
      for (symbol_id s = 0; s < a.symbols(); ++s) {
        auto t = a.next(q, s);
        if (!live[t]) continue;
        auto w2 = w;
        w2.push_back(s);
        next.emplace_back(std::move(w2), t);
      }
    }
    level = std::move(next);
  }
  return out;
}

/// States from which an accepting state is reachable.
template <class Label, class Pred>
std::vector<char> coreachable(const automaton<Label>& a, Pred pred) {
  const auto n = a.size();
  std::vector<std::vector<state_id>> rev(n);
  for (state_id q = 0; q < n; ++q)
    for (symbol_id s = 0; s < a.symbols(); ++s) rev[a.next(q, s)].push_back(q);
  std::vector<char> live(n, 0);
  std::vector<state_id> stack;
  for (state_id q = 0; q < n; ++q)
    if (pred(q)) {
      live[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (auto p : rev[q])
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
  }
  return live;
}

/// Reachable states from which some accepting state is reachable, i.e.
/// the state count without the rejecting sink (the usual figure quoted for
/// drawn automata).
inline std::size_t live_state_count(const dfa& a) {
  auto c = canonicalize(a);
  auto live = coreachable(c, [&](state_id q) { return c.label(q); });
  return static_cast<std::size_t>(std::count(live.begin(), live.end(), 1));
}

/// True iff the accepted language is infinite, i.e. some cycle is both
/// reachable and co-reachable.
inline bool is_infinite(const dfa& a) {
  auto c = canonicalize(a);  // only reachable states remain
  auto live = coreachable(c, [&](state_id q) { return c.label(q); });
  const auto n = c.size();
  std::vector<char> color(n, 0);  // 0 new, 1 on stack, 2 done
  for (state_id root = 0; root < n; ++root) {
    if (!live[root] || color[root]) continue;
    std::vector<std::pair<state_id, symbol_id>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [q, s] = stack.back();
      if (s == c.symbols()) {
        color[q] = 2;
        stack.pop_back();
        continue;
      }
      auto t = c.next(q, s++);
      if (!live[t]) continue;
      if (color[t] == 1) return true;
      if (color[t] == 0) {
        color[t] = 1;
        stack.emplace_back(t, 0);
      }
    }
  }
  return false;
}

}  // namespace pellwalnut
