#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ast.hpp"

namespace pellwalnut::logic {

class parse_error : public error {
 public:
  parse_error(std::size_t line, std::size_t column, std::vector<std::string> expected,
              const std::string& found)
      : error(format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::vector<std::string>& expected, const std::string& found) {
    std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    ": expected ";
    if (expected.size() > 1) s += "one of ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) s += ", ";
      s += expected[i];
    }
    return s + " but found " + found;
  }

  std::size_t line_, column_;
  std::vector<std::string> expected_;
};

namespace detail {

enum class tok {
  ident, number, literal, dollar, header, lparen, rparen, lbracket, rbracket, comma, plus,
  star, tilde, amp, bar, caret, implies, iff, eq, ne, lt, le, gt, ge, end
};

struct token {
  tok kind;
  std::string text;
  std::uint64_t value = 0;
  std::size_t line = 1, column = 1;
};

inline std::string describe(const token& t) {
  if (t.kind == tok::end) return "end of input";
  return "'" + t.text + "'";
}

inline std::vector<token> lex(std::string_view src) {
  std::vector<token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto number_at = [&](std::size_t j, std::size_t& end) {
    std::uint64_t v = 0;
    end = j;
    while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) {
      auto digit = static_cast<std::uint64_t>(src[end] - '0');
      if (v > (UINT64_MAX - digit) / 10) throw parse_error(line, col, {"number"}, "overflow");
      v = v * 10 + digit;
      ++end;
    }
    return v;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    token t{tok::end, {}, 0, line, col};
    auto simple = [&](tok k, std::size_t n) {
      t.kind = k;
      t.text = std::string(src.substr(i, n));
      advance(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      simple(tok::ident, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end;
      t.value = number_at(i, end);
      simple(tok::number, end - i);
    } else if (c == '@') {
      std::size_t end;
      if (i + 1 >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i + 1])))
        throw parse_error(line, col + 1, {"output digit after '@'"},
                          i + 1 < src.size() ? "'" + std::string(1, src[i + 1]) + "'"
                                             : "end of input");
      t.value = number_at(i + 1, end);
      simple(tok::literal, end - i);
    } else if (c == '?') {
      std::size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      simple(tok::header, j - i);
    } else if (src.substr(i, 3) == "<=>") {
      simple(tok::iff, 3);
    } else if (src.substr(i, 2) == "=>") {
      simple(tok::implies, 2);
    } else if (src.substr(i, 2) == "!=") {
      simple(tok::ne, 2);
    } else if (src.substr(i, 2) == "<=") {
      simple(tok::le, 2);
    } else if (src.substr(i, 2) == ">=") {
      simple(tok::ge, 2);
    } else {
      switch (c) {
        case '$': simple(tok::dollar, 1); break;
        case '(': simple(tok::lparen, 1); break;
        case ')': simple(tok::rparen, 1); break;
        case '[': simple(tok::lbracket, 1); break;
        case ']': simple(tok::rbracket, 1); break;
        case ',': simple(tok::comma, 1); break;
        case '+': simple(tok::plus, 1); break;
        case '*': simple(tok::star, 1); break;
        case '~': simple(tok::tilde, 1); break;
        case '&': simple(tok::amp, 1); break;
        case '|': simple(tok::bar, 1); break;
        case '^': simple(tok::caret, 1); break;
        case '=': simple(tok::eq, 1); break;
        case '<': simple(tok::lt, 1); break;
        case '>': simple(tok::gt, 1); break;
        default:
          throw parse_error(line, col, {"a token"}, "'" + std::string(1, c) + "'");
      }
    }
    out.push_back(std::move(t));
  }
  out.push_back({tok::end, {}, 0, line, col});
  return out;
}

class parser {
 public:
  explicit parser(std::string_view src) : toks_(lex(src)) {}

  formula_ptr parse_predicate() {
    if (peek().kind == tok::header) {
      if (peek().text != "?msd_pell")
        fail({"'?msd_pell'"});
      ++pos_;
    }
    auto f = parse_iff();
    expect(tok::end, "end of input");
    return f;
  }

 private:
  const token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const auto& t = peek();
    throw parse_error(t.line, t.column, std::move(expected), describe(t));
  }
  const token& expect(tok k, const char* what) {
    if (peek().kind != k) fail({what});
    return toks_[pos_++];
  }
  bool accept(tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  formula_ptr parse_iff() {
    auto f = parse_implies();
    while (accept(tok::iff)) f = formula::binary_of(connective::iff, f, parse_implies());
    return f;
  }
  formula_ptr parse_implies() {
    auto f = parse_xor();
    if (accept(tok::implies)) return formula::binary_of(connective::implies, f, parse_implies());
    return f;
  }
  formula_ptr parse_xor() {
    auto f = parse_or();
    while (accept(tok::caret)) f = formula::binary_of(connective::exclusive, f, parse_or());
    return f;
  }
  formula_ptr parse_or() {
    auto f = parse_and();
    while (accept(tok::bar)) f = formula::binary_of(connective::disj, f, parse_and());
    return f;
  }
  formula_ptr parse_and() {
    auto f = parse_unary();
    while (accept(tok::amp)) f = formula::binary_of(connective::conj, f, parse_unary());
    return f;
  }

  bool at_quantifier() const {
    const auto& t = peek();
    if (t.kind != tok::ident || (t.text[0] != 'A' && t.text[0] != 'E')) return false;
    if (peek(1).kind == tok::lbracket) return false;
    if (t.text.size() == 1) return peek(1).kind == tok::ident;
    return std::islower(static_cast<unsigned char>(t.text[1])) || t.text[1] == '_';
  }

  formula_ptr parse_unary() {
    if (accept(tok::tilde)) return formula::negation_of(parse_unary());
    if (at_quantifier()) {
      const auto& q = toks_[pos_++];
      bool universal = q.text[0] == 'A';
      std::vector<std::string> vars;
      if (q.text.size() > 1)
        vars.push_back(q.text.substr(1));
      else
        vars.push_back(expect(tok::ident, "variable").text);
      while (accept(tok::comma)) vars.push_back(expect(tok::ident, "variable").text);
      // A quantifier extends as far to the right as possible.
      return formula::quantified(universal, std::move(vars), parse_iff());
    }
    return parse_primary();
  }

  formula_ptr parse_primary() {
    const auto& t = peek();
    if (t.kind == tok::lparen) {
      ++pos_;
      auto f = parse_iff();
      expect(tok::rparen, "')'");
      return f;
    }
    if (t.kind == tok::dollar) {
      ++pos_;
      auto name = expect(tok::ident, "definition name").text;
      expect(tok::lparen, "'('");
      std::vector<term_ptr> args;
      if (peek().kind != tok::rparen) {
        args.push_back(parse_term());
        while (accept(tok::comma)) args.push_back(parse_term());
      }
      expect(tok::rparen, "')'");
      return formula::call_of(std::move(name), std::move(args));
    }
    if (t.kind == tok::ident && (t.text == "TRUE" || t.text == "FALSE") &&
        peek(1).kind != tok::lbracket) {
      ++pos_;
      return formula::constant_of(t.text == "TRUE");
    }
    if (t.kind == tok::ident || t.kind == tok::number || t.kind == tok::literal) {
      auto lhs = parse_operand();
      comparison c;
      switch (peek().kind) {
        case tok::eq: c = comparison::eq; break;
        case tok::ne: c = comparison::ne; break;
        case tok::lt: c = comparison::lt; break;
        case tok::le: c = comparison::le; break;
        case tok::gt: c = comparison::gt; break;
        case tok::ge: c = comparison::ge; break;
        default: fail({"'='", "'!='", "'<'", "'<='", "'>'", "'>='", "'+'"});
      }
      ++pos_;
      auto rhs = parse_operand();
      return formula::compare_of(c, std::move(lhs), std::move(rhs));
    }
    fail({"'('", "'~'", "'$'", "quantifier", "variable", "number", "sequence"});
  }

  operand parse_operand() {
    operand o;
    if (peek().kind == tok::literal) {
      o.k = operand::kind::literal;
      o.value = toks_[pos_++].value;
      return o;
    }
    if (peek().kind == tok::ident && peek(1).kind == tok::lbracket) {
      o.k = operand::kind::indexed;
      o.sequence = toks_[pos_].text;
      pos_ += 2;
      o.t = parse_term();
      expect(tok::rbracket, "']'");
      return o;
    }
    o.k = operand::kind::arithmetic;
    o.t = parse_term();
    return o;
  }

  term_ptr parse_term() {
    auto t = parse_factor();
    while (accept(tok::plus)) t = term::sum(t, parse_factor());
    return t;
  }

  term_ptr parse_factor() {
    const auto& t = peek();
    if (t.kind == tok::number) {
      ++pos_;
      if (accept(tok::star)) return term::scaled(t.value, parse_factor());
      return term::constant(t.value);
    }
    if (t.kind == tok::ident) {
      ++pos_;
      auto v = term::var(t.text);
      if (accept(tok::star)) {
        auto k = expect(tok::number, "number").value;
        return term::scaled(k, v);
      }
      return v;
    }
    fail({"variable", "number"});
  }

  std::vector<token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a predicate in the Walnut-style surface syntax. An optional
/// "?msd_pell" header is accepted; any other numeration header is rejected.
inline formula_ptr parse(std::string_view text) {
  detail::parser p(text);
  return p.parse_predicate();
}

}  // namespace pellwalnut::logic
