#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "../ops.hpp"

namespace pellwalnut::logic {

struct term;
using term_ptr = std::shared_ptr<const term>;

/// Natural-valued term: variable, constant, sum, or constant multiple.
struct term {
  enum class kind { variable, constant, sum, scaled };
  kind k = kind::constant;
  std::string name;          // variable
  std::uint64_t value = 0;   // constant, or the factor of `scaled`
  term_ptr lhs, rhs;         // sum: both; scaled: lhs

  static term_ptr var(std::string n) {
    auto t = std::make_shared<term>();
    t->k = kind::variable;
    t->name = std::move(n);
    return t;
  }
  static term_ptr constant(std::uint64_t v) {
    auto t = std::make_shared<term>();
    t->k = kind::constant;
    t->value = v;
    return t;
  }
  static term_ptr sum(term_ptr a, term_ptr b) {
    auto t = std::make_shared<term>();
    t->k = kind::sum;
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    return t;
  }
  static term_ptr scaled(std::uint64_t factor, term_ptr a) {
    auto t = std::make_shared<term>();
    t->k = kind::scaled;
    t->value = factor;
    t->lhs = std::move(a);
    return t;
  }
};

/// One side of a comparison.
struct operand {
  enum class kind { arithmetic, indexed, literal };
  kind k = kind::arithmetic;
  term_ptr t;               // arithmetic, or the index of `indexed`
  std::string sequence;     // indexed
  std::uint64_t value = 0;  // literal "@value"
};

enum class comparison { eq, ne, lt, le, gt, ge };

struct formula;
using formula_ptr = std::shared_ptr<const formula>;

struct formula {
  enum class kind { compare, call, negation, binary, exists, forall, constant };
  kind k = kind::constant;
  comparison cmp = comparison::eq;
  operand left, right;              // compare
  std::string name;                 // call
  std::vector<term_ptr> args;       // call
  connective op = connective::conj; // binary
  formula_ptr a, b;                 // negation: a; binary: a, b; quantifiers: a
  std::vector<std::string> vars;    // quantifiers
  bool truth = true;                // constant

  static formula_ptr compare_of(comparison c, operand l, operand r) {
    auto f = std::make_shared<formula>();
    f->k = kind::compare;
    f->cmp = c;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
  }
  static formula_ptr call_of(std::string n, std::vector<term_ptr> args) {
    auto f = std::make_shared<formula>();
    f->k = kind::call;
    f->name = std::move(n);
    f->args = std::move(args);
    return f;
  }
  static formula_ptr negation_of(formula_ptr x) {
    auto f = std::make_shared<formula>();
    f->k = kind::negation;
    f->a = std::move(x);
    return f;
  }
  static formula_ptr binary_of(connective op, formula_ptr x, formula_ptr y) {
    auto f = std::make_shared<formula>();
    f->k = kind::binary;
    f->op = op;
    f->a = std::move(x);
    f->b = std::move(y);
    return f;
  }
  static formula_ptr quantified(bool universal, std::vector<std::string> vars, formula_ptr body) {
    auto f = std::make_shared<formula>();
    f->k = universal ? kind::forall : kind::exists;
    f->vars = std::move(vars);
    f->a = std::move(body);
    return f;
  }
  static formula_ptr constant_of(bool v) {
    auto f = std::make_shared<formula>();
    f->k = kind::constant;
    f->truth = v;
    return f;
  }
};

inline bool equal(const term_ptr& x, const term_ptr& y) {
  if (!x || !y) return !x && !y;
  if (x->k != y->k) return false;
  switch (x->k) {
    case term::kind::variable: return x->name == y->name;
    case term::kind::constant: return x->value == y->value;
    case term::kind::sum: return equal(x->lhs, y->lhs) && equal(x->rhs, y->rhs);
    case term::kind::scaled: return x->value == y->value && equal(x->lhs, y->lhs);
  }
  return false;
}

inline bool equal(const operand& x, const operand& y) {
  if (x.k != y.k) return false;
  switch (x.k) {
    case operand::kind::arithmetic: return equal(x.t, y.t);
    case operand::kind::indexed: return x.sequence == y.sequence && equal(x.t, y.t);
    case operand::kind::literal: return x.value == y.value;
  }
  return false;
}

/// Structural equality.
inline bool equal(const formula_ptr& x, const formula_ptr& y) {
  if (!x || !y) return !x && !y;
  if (x->k != y->k) return false;
  switch (x->k) {
    case formula::kind::compare:
      return x->cmp == y->cmp && equal(x->left, y->left) && equal(x->right, y->right);
    case formula::kind::call:
      if (x->name != y->name || x->args.size() != y->args.size()) return false;
      for (std::size_t i = 0; i < x->args.size(); ++i)
        if (!equal(x->args[i], y->args[i])) return false;
      return true;
    case formula::kind::negation: return equal(x->a, y->a);
    case formula::kind::binary: return x->op == y->op && equal(x->a, y->a) && equal(x->b, y->b);
    case formula::kind::exists:
    case formula::kind::forall: return x->vars == y->vars && equal(x->a, y->a);
    case formula::kind::constant: return x->truth == y->truth;
  }
  return false;
}

inline std::string to_string(const term_ptr& t) {
  switch (t->k) {
    case term::kind::variable: return t->name;
    case term::kind::constant: return std::to_string(t->value);
    case term::kind::sum: return to_string(t->lhs) + " + " + to_string(t->rhs);
    case term::kind::scaled: {
      auto inner = to_string(t->lhs);
      if (t->lhs->k == term::kind::sum) inner = "(" + inner + ")";
      return std::to_string(t->value) + "*" + inner;
    }
  }
  return {};
}

inline std::string to_string(const operand& o) {
  switch (o.k) {
    case operand::kind::arithmetic: return to_string(o.t);
    case operand::kind::indexed: return o.sequence + "[" + to_string(o.t) + "]";
    case operand::kind::literal: return "@" + std::to_string(o.value);
  }
  return {};
}

inline const char* to_string(comparison c) {
  switch (c) {
    case comparison::eq: return "=";
    case comparison::ne: return "!=";
    case comparison::lt: return "<";
    case comparison::le: return "<=";
    case comparison::gt: return ">";
    case comparison::ge: return ">=";
  }
  return "?";
}

inline const char* to_string(connective op) {
  switch (op) {
    case connective::conj: return "&";
    case connective::disj: return "|";
    case connective::implies: return "=>";
    case connective::iff: return "<=>";
    case connective::exclusive: return "^";
  }
  return "?";
}

/// Fully parenthesized form that parses back to the same tree.
inline std::string to_string(const formula_ptr& f) {
  switch (f->k) {
    case formula::kind::compare:
      return "(" + to_string(f->left) + " " + to_string(f->cmp) + " " + to_string(f->right) + ")";
    case formula::kind::call: {
      std::string s = "$" + f->name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(f->args[i]);
      }
      return s + ")";
    }
    case formula::kind::negation: return "~" + to_string(f->a);
    case formula::kind::binary:
      return "(" + to_string(f->a) + " " + to_string(f->op) + " " + to_string(f->b) + ")";
    case formula::kind::exists:
    case formula::kind::forall: {
      std::string s = f->k == formula::kind::exists ? "(E" : "(A";
      for (std::size_t i = 0; i < f->vars.size(); ++i) {
        s += i ? "," : "";
        s += f->vars[i];
      }
      return s + " " + to_string(f->a) + ")";
    }
    case formula::kind::constant: return f->truth ? "TRUE" : "FALSE";
  }
  return {};
}

namespace detail {

inline void term_vars(const term_ptr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->k == term::kind::variable) out.insert(t->name);
  term_vars(t->lhs, out);
  term_vars(t->rhs, out);
}

}  // namespace detail

/// Free variables in sorted order.
inline std::set<std::string> free_variables(const formula_ptr& f) {
  std::set<std::string> out;
  switch (f->k) {
    case formula::kind::compare:
      detail::term_vars(f->left.t, out);
      detail::term_vars(f->right.t, out);
      break;
    case formula::kind::call:
      for (const auto& a : f->args) detail::term_vars(a, out);
      break;
    case formula::kind::negation: out = free_variables(f->a); break;
    case formula::kind::binary: {
      out = free_variables(f->a);
      auto r = free_variables(f->b);
      out.insert(r.begin(), r.end());
      break;
    }
    case formula::kind::exists:
    case formula::kind::forall:
      out = free_variables(f->a);
      for (const auto& v : f->vars) out.erase(v);
      break;
    case formula::kind::constant: break;
  }
  return out;
}

}  // namespace pellwalnut::logic
