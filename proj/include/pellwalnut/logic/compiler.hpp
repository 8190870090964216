#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "../ops.hpp"
#include "ast.hpp"
#include "parser.hpp"
#include "regex.hpp"

namespace pellwalnut::logic {

/// A compiled predicate: an automaton whose track i carries variable
/// vars[i]. Vars are sorted and unique. The automaton accepts only words in
/// which every track is 0*canonical, and its language is closed under
/// adding and removing leading all-zero symbols.
struct relation {
  std::vector<std::string> vars;
  dfa automaton;

  bool closed() const noexcept { return vars.empty(); }
  /// Truth value of a closed relation.
  bool truth() const { return automaton.label(automaton.initial()); }
};

/// Named definitions and sequences visible to predicates. Copies are cheap
/// snapshots; mutating operations return a new environment.
class environment {
 public:
  environment() = default;
  explicit environment(dfa adder) : adder_(std::make_shared<const dfa>(std::move(adder))) {}

  bool has_adder() const noexcept { return static_cast<bool>(adder_); }
  const dfa& adder() const {
    if (!adder_) throw error("no addition automaton registered");
    return *adder_;
  }
  environment with_adder(dfa adder) const {
    environment e = *this;
    e.adder_ = std::make_shared<const dfa>(std::move(adder));
    return e;
  }

  const relation* definition(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : it->second.get();
  }
  const dfao* sequence(const std::string& name) const {
    auto it = seqs_.find(name);
    return it == seqs_.end() ? nullptr : it->second.get();
  }
  std::vector<std::string> definition_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : defs_) out.push_back(k);
    return out;
  }
  std::vector<std::string> sequence_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : seqs_) out.push_back(k);
    return out;
  }

  /// Adds a definition; redefinition is an error.
  environment with_definition(const std::string& name, relation r) const {
    if (defs_.contains(name)) throw error("redefinition of '" + name + "'");
    environment e = *this;
    e.defs_[name] = std::make_shared<const relation>(std::move(r));
    return e;
  }

  /// Binds a sequence name, replacing an earlier binding of the same name.
  environment with_sequence(const std::string& name, dfao d) const {
    environment e = *this;
    e.seqs_[name] = std::make_shared<const dfao>(std::move(d));
    return e;
  }

 private:
  std::shared_ptr<const dfa> adder_;
  std::map<std::string, std::shared_ptr<const relation>> defs_;
  std::map<std::string, std::shared_ptr<const dfao>> seqs_;
};

/// Output symbols of reachable states.
inline std::set<std::uint8_t> output_alphabet(const dfao& d) {
  std::set<std::uint8_t> out;
  auto c = canonicalize(d);
  for (state_id q = 0; q < c.size(); ++q) out.insert(c.label(q));
  return out;
}

/// One-track automaton for 0* (k)_P.
inline dfa constant_automaton(std::uint64_t k) {
  auto digits = encode(k).digits();
  const auto n = static_cast<state_id>(digits.size());
  dfa a(1, n + 2, false);
  const state_id dead = n + 1;
  for (state_id q = 0; q <= dead; ++q)
    for (symbol_id s = 0; s < 3; ++s) a.set_next(q, s, dead);
  a.set_next(0, 0, 0);
  for (state_id i = 0; i < n; ++i) a.set_next(i, static_cast<symbol_id>(digits[i] - '0'), i + 1);
  a.set_label(n, true);
  return minimize(a);
}

/// Two-track comparator of padded canonical representations; msd-first
/// lexicographic order coincides with numeric order.
inline dfa comparator_automaton(comparison cmp) {
  enum { same = 0, less = 1, greater = 2 };
  dfa a(2, 3, false);
  track_alphabet alpha(2);
  for (symbol_id s = 0; s < alpha.size(); ++s) {
    int x = alpha.digit(s, 0), y = alpha.digit(s, 1);
    a.set_next(same, s, x < y ? less : x > y ? greater : same);
    a.set_next(less, s, less);
    a.set_next(greater, s, greater);
  }
  auto holds = [cmp](int c) {
    switch (cmp) {
      case comparison::eq: return c == same;
      case comparison::ne: return c != same;
      case comparison::lt: return c == less;
      case comparison::le: return c != greater;
      case comparison::gt: return c == greater;
      case comparison::ge: return c != less;
    }
    return false;
  };
  for (state_id q = 0; q < 3; ++q) a.set_label(q, holds(static_cast<int>(q)));
  return restrict_canonical(a, 0b11u);
}

inline bool compare_values(comparison cmp, std::uint64_t x, std::uint64_t y) {
  switch (cmp) {
    case comparison::eq: return x == y;
    case comparison::ne: return x != y;
    case comparison::lt: return x < y;
    case comparison::le: return x <= y;
    case comparison::gt: return x > y;
    case comparison::ge: return x >= y;
  }
  return false;
}

inline comparison mirrored(comparison cmp) {
  switch (cmp) {
    case comparison::lt: return comparison::gt;
    case comparison::le: return comparison::ge;
    case comparison::gt: return comparison::lt;
    case comparison::ge: return comparison::le;
    default: return cmp;
  }
}

// Relation algebra -----------------------------------------------------------

inline relation combine(const relation& x, const relation& y, connective op) {
  std::vector<std::string> vars;
  std::set_union(x.vars.begin(), x.vars.end(), y.vars.begin(), y.vars.end(),
                 std::back_inserter(vars));
  auto index = [&](const std::string& v) {
    return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  };
  std::vector<int> px, py;
  for (const auto& v : x.vars) px.push_back(index(v));
  for (const auto& v : y.vars) py.push_back(index(v));

  // Tracks an accepting operand does not already constrain must be checked.
  std::uint32_t checked = 0;
  if (apply(op, false, false)) {
    checked = all_tracks(static_cast<int>(vars.size()));
  } else if (op != connective::conj) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      bool in_x = std::binary_search(x.vars.begin(), x.vars.end(), vars[i]);
      bool in_y = std::binary_search(y.vars.begin(), y.vars.end(), vars[i]);
      if (in_x != in_y) checked |= 1u << i;
    }
  }
  auto k = static_cast<int>(vars.size());
  return {std::move(vars), product(x.automaton, px, y.automaton, py, k, op, checked)};
}

inline relation negate(const relation& x) {
  auto k = static_cast<int>(x.vars.size());
  auto pos = identity_positions(k);
  return {x.vars, product(x.automaton, pos, constant_dfa(k, true), pos, k,
                          connective::exclusive, all_tracks(k))};
}

inline relation exists(const relation& x, const std::string& var) {
  auto it = std::find(x.vars.begin(), x.vars.end(), var);
  if (it == x.vars.end()) return x;
  auto track = static_cast<int>(it - x.vars.begin());
  relation r;
  r.vars = x.vars;
  r.vars.erase(r.vars.begin() + track);
  r.automaton = project(x.automaton, track);
  return r;
}

inline relation forall(const relation& x, const std::vector<std::string>& vars) {
  auto r = negate(x);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) r = exists(r, *it);
  return negate(r);
}

/// Rebinds a relation's tracks to new variable names (repeats allowed).
inline relation rename(const relation& x, const std::vector<std::string>& names) {
  if (names.size() != x.vars.size()) throw error("rename: arity mismatch");
  std::vector<std::string> vars(names.begin(), names.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<int> pos;
  for (const auto& n : names)
    pos.push_back(static_cast<int>(std::lower_bound(vars.begin(), vars.end(), n) - vars.begin()));
  auto k = static_cast<int>(vars.size());
  return {std::move(vars), minimize(remap_tracks(x.automaton, pos, k))};
}

// Compiler --------------------------------------------------------------------

class compiler {
 public:
  explicit compiler(const environment& env) : env_(env) {}

  relation compile(const formula_ptr& f) {
    std::set<std::string> bound;
    return compile(f, bound);
  }

 private:
  /// Flattens the terms of one atom into fresh variables defined by
  /// elementary relations (addition, constants), then folds those
  /// definitions into the atom, projecting each fresh variable as soon as
  /// nothing left refers to it.
  class atom_builder {
   public:
    explicit atom_builder(compiler& c) : c_(c) {}

    std::string var_of(const term_ptr& t) {
      switch (t->k) {
        case term::kind::variable: return t->name;
        case term::kind::constant: return constant_var(t->value);
        case term::kind::sum: {
          if (auto v = fold(t)) return constant_var(*v);
          auto key = to_string(t);
          if (auto it = memo_.find(key); it != memo_.end()) return it->second;
          auto a = var_of(t->lhs), b = var_of(t->rhs);
          return memo_[key] = add_var(a, b);
        }
        case term::kind::scaled: {
          if (auto v = fold(t)) return constant_var(*v);
          auto key = to_string(t);
          if (auto it = memo_.find(key); it != memo_.end()) return it->second;
          return memo_[key] = scaled_var(t->value, var_of(t->lhs));
        }
      }
      throw error("unknown term");
    }

    relation finish(relation atom) {
      for (std::size_t i = defs_.size(); i-- > 0;) {
        atom = combine(atom, defs_[i], connective::conj);
        auto vars = atom.vars;
        for (const auto& v : vars) {
          if (!fresh_.contains(v)) continue;
          bool used = false;
          for (std::size_t j = 0; j < i && !used; ++j)
            used = std::binary_search(defs_[j].vars.begin(), defs_[j].vars.end(), v);
          if (!used) atom = exists(atom, v);
        }
      }
      return atom;
    }

   private:
    static std::optional<std::uint64_t> fold(const term_ptr& t) {
      switch (t->k) {
        case term::kind::variable: return std::nullopt;
        case term::kind::constant: return t->value;
        case term::kind::sum: {
          auto a = fold(t->lhs), b = fold(t->rhs);
          if (a && b) return *a + *b;
          return std::nullopt;
        }
        case term::kind::scaled: {
          auto a = fold(t->lhs);
          if (a) return t->value * *a;
          return std::nullopt;
        }
      }
      return std::nullopt;
    }

    std::string fresh() {
      auto v = "#" + std::to_string(c_.fresh_counter_++);
      fresh_.insert(v);
      return v;
    }

    std::string constant_var(std::uint64_t k) {
      auto key = "#const" + std::to_string(k);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
      auto v = fresh();
      defs_.push_back({{v}, c_.constant(k)});
      return memo_[key] = v;
    }

    std::string add_var(const std::string& a, const std::string& b) {
      auto v = fresh();
      defs_.push_back(rename({{"x", "y", "z"}, c_.env_.adder()}, {a, b, v}));
      return v;
    }

    std::string scaled_var(std::uint64_t k, const std::string& t) {
      if (k == 0) return constant_var(0);
      // Binary doubling chain, most significant bit first.
      int top = 63;
      while (!(k >> top & 1u)) --top;
      std::string acc = t;
      for (int bit = top - 1; bit >= 0; --bit) {
        acc = add_var(acc, acc);
        if (k >> bit & 1u) acc = add_var(acc, t);
      }
      return acc;
    }

    compiler& c_;
    std::vector<relation> defs_;
    std::map<std::string, std::string> memo_;
    std::set<std::string> fresh_;
  };

  relation compile(const formula_ptr& f, std::set<std::string>& bound) {
    switch (f->k) {
      case formula::kind::constant: return {{}, constant_dfa(0, f->truth)};
      case formula::kind::compare: return compile_compare(*f);
      case formula::kind::call: return compile_call(*f);
      case formula::kind::negation: return negate(compile(f->a, bound));
      case formula::kind::binary:
        return combine(compile(f->a, bound), compile(f->b, bound), f->op);
      case formula::kind::exists:
      case formula::kind::forall: {
        for (const auto& v : f->vars)
          if (!bound.insert(v).second)
            throw error("variable '" + v + "' is bound twice on one path");
        auto body = compile(f->a, bound);
        for (const auto& v : f->vars) bound.erase(v);
        if (f->k == formula::kind::forall) return forall(body, f->vars);
        for (auto it = f->vars.rbegin(); it != f->vars.rend(); ++it) body = exists(body, *it);
        return body;
      }
    }
    throw error("unknown formula");
  }

  relation compile_call(const formula& f) {
    const relation* def = env_.definition(f.name);
    if (!def) throw error("unresolved definition '$" + f.name + "'");
    if (def->vars.size() != f.args.size())
      throw error("$" + f.name + " expects " + std::to_string(def->vars.size()) +
                  " arguments, got " + std::to_string(f.args.size()));
    atom_builder b(*this);
    std::vector<std::string> names;
    for (const auto& a : f.args) names.push_back(b.var_of(a));
    return b.finish(rename(*def, names));
  }

  const dfao& sequence(const std::string& name) {
    const dfao* d = env_.sequence(name);
    if (!d) throw error("unresolved sequence '" + name + "'");
    return *d;
  }

  relation compile_compare(const formula& f) {
    using ok = operand::kind;
    const auto& l = f.left;
    const auto& r = f.right;
    if (l.k == ok::arithmetic && r.k == ok::arithmetic) {
      atom_builder b(*this);
      auto x = b.var_of(l.t), y = b.var_of(r.t);
      relation atom;
      if (x == y) {
        bool reflexive = f.cmp == comparison::eq || f.cmp == comparison::le ||
                         f.cmp == comparison::ge;
        atom = {{x}, reflexive ? canonical_recognizer() : constant_dfa(1, false)};
      } else {
        atom = rename({{"a", "b"}, comparator(f.cmp)}, {x, y});
      }
      return b.finish(std::move(atom));
    }
    if (l.k == ok::arithmetic || r.k == ok::arithmetic)
      throw error("cannot compare a number with a sequence output");
    if (l.k == ok::literal && r.k == ok::literal)
      return {{}, constant_dfa(0, compare_values(f.cmp, l.value, r.value))};
    if (l.k == ok::literal) {
      formula swapped = f;
      swapped.left = r;
      swapped.right = l;
      swapped.cmp = mirrored(f.cmp);
      return compile_compare(swapped);
    }
    const auto& seq_l = sequence(l.sequence);
    auto outs_l = output_alphabet(seq_l);
    atom_builder b(*this);
    auto x = b.var_of(l.t);
    if (r.k == ok::literal) {
      if (!outs_l.contains(static_cast<std::uint8_t>(r.value)) || r.value > 255)
        throw error("@" + std::to_string(r.value) + " is not an output of " + l.sequence);
      auto atom = slice(seq_l, [&](std::uint8_t o) { return compare_values(f.cmp, o, r.value); });
      return b.finish({{x}, std::move(atom)});
    }
    // Sequence against sequence: a disjunction over pairs of outputs.
    const auto& seq_r = sequence(r.sequence);
    auto outs_r = output_alphabet(seq_r);
    auto y = b.var_of(r.t);
    std::optional<relation> atom;
    for (auto cl : outs_l) {
      auto left = relation{{x}, slice(seq_l, [cl](std::uint8_t o) { return o == cl; })};
      std::optional<relation> rights;
      for (auto cr : outs_r) {
        if (!compare_values(f.cmp, cl, cr)) continue;
        relation part{{y}, slice(seq_r, [cr](std::uint8_t o) { return o == cr; })};
        rights = rights ? combine(*rights, part, connective::disj) : part;
      }
      if (!rights) continue;
      auto both = combine(left, *rights, connective::conj);
      atom = atom ? combine(*atom, both, connective::disj) : both;
    }
    if (!atom) {
      std::vector<std::string> vars{x, y};
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      atom = relation{vars, constant_dfa(static_cast<int>(vars.size()), false)};
    }
    return b.finish(std::move(*atom));
  }

  template <class Pred>
  static dfa slice(const dfao& d, Pred pred) {
    dfa a(1, d.size());
    a.set_initial(d.initial());
    for (state_id q = 0; q < d.size(); ++q) {
      a.set_label(q, pred(d.label(q)));
      for (symbol_id s = 0; s < 3; ++s) a.set_next(q, s, d.next(q, s));
    }
    return restrict_canonical(a, 1u);
  }

  const dfa& constant(std::uint64_t k) {
    auto it = constants_.find(k);
    if (it == constants_.end()) it = constants_.emplace(k, constant_automaton(k)).first;
    return it->second;
  }

  const dfa& comparator(comparison c) {
    auto key = static_cast<int>(c);
    auto it = comparators_.find(key);
    if (it == comparators_.end()) it = comparators_.emplace(key, comparator_automaton(c)).first;
    return it->second;
  }

  const environment& env_;
  std::size_t fresh_counter_ = 0;
  std::map<std::uint64_t, dfa> constants_;
  std::map<int, dfa> comparators_;
};

inline relation compile(const formula_ptr& f, const environment& env) {
  compiler c(env);
  return c.compile(f);
}

inline relation compile(std::string_view text, const environment& env) {
  return compile(parse(text), env);
}

/// Truth value of a closed predicate.
inline bool eval_closed(const formula_ptr& f, const environment& env) {
  auto fv = free_variables(f);
  if (!fv.empty()) {
    std::string names;
    for (const auto& v : fv) names += (names.empty() ? "" : ", ") + v;
    throw error("predicate has free variables: " + names);
  }
  return compile(f, env).truth();
}

inline bool eval_closed(std::string_view text, const environment& env) {
  return eval_closed(parse(text), env);
}

inline environment define(const environment& env, const std::string& name,
                          const formula_ptr& f) {
  if (env.definition(name)) throw error("redefinition of '" + name + "'");
  return env.with_definition(name, compile(f, env));
}

inline environment define(const environment& env, const std::string& name,
                          std::string_view text) {
  return define(env, name, parse(text));
}

/// Stores a one-track regular language under `name`; call as $name(t).
inline environment reg(const environment& env, const std::string& name,
                       std::string_view pattern) {
  if (env.definition(name)) throw error("redefinition of '" + name + "'");
  return env.with_definition(name, relation{{"n"}, compile_regex(pattern)});
}

}  // namespace pellwalnut::logic
