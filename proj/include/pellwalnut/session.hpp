#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"
#include "logic/compiler.hpp"
#include "sequences.hpp"
#include "theorems.hpp"

namespace pellwalnut {

enum exit_code : int { ok = 0, proof_failure = 1, usage_error = 2 };

/// Environment variable naming a directory where the learned adder is
/// cached between runs.
inline constexpr const char* adder_cache_variable = "PELLWALNUT_CACHE_DIR";

/// Reads the adder from `<dir>/adder.txt` if present; otherwise learns it
/// deterministically and, when a directory is given, stores it there.
inline dfa load_or_learn_adder(const std::optional<std::filesystem::path>& dir) {
  if (dir) {
    auto file = *dir / "adder.txt";
    if (std::filesystem::exists(file)) {
      std::ifstream in(file);
      auto a = read_text<bool>(in);
      if (a.tracks() != 3) throw error("cached adder in " + file.string() + " is not 3-track");
      return a;
    }
  }
  auto a = reference_adder();
  if (dir) {
    std::filesystem::create_directories(*dir);
    std::ofstream out(*dir / "adder.txt");
    write_text(out, a, {"x", "y", "z"});
  }
  return a;
}

inline std::optional<std::filesystem::path> adder_cache_from_environment() {
  if (const char* v = std::getenv(adder_cache_variable); v && *v) return std::filesystem::path(v);
  return std::nullopt;
}

/// Built-in sequence automata by name.
inline std::optional<dfao> builtin_sequence(const std::string& name) {
  if (name == "c_alpha" || name == "C") return c_alpha_dfao();
  if (name == "x5" || name == "X") return x5_dfao();
  if (name == "x3") return x3_dfao();
  return std::nullopt;
}

struct session_options {
  std::optional<std::filesystem::path> emit_dir;
  std::string format = "txt";
  std::function<dfa()> adder = [] { return load_or_learn_adder(adder_cache_from_environment()); };
};

/// Sequential command interpreter. Statements:
///
///   def NAME "PREDICATE"          compile and store, callable as $NAME(...)
///   eval [NAME] "PREDICATE"       closed: print TRUE/FALSE; otherwise store
///                                 the automaton under NAME and describe it
///   reg NAME [msd_pell] "PATTERN" store a digit regular expression
///   expect TRUE|FALSE             the next closed eval must give this value
///   bind NAME SEQUENCE            bind a sequence name (c_alpha, x5, x3)
///   dump NAME                     print a stored automaton
///
/// Statements end with ';' or a line break; a statement whose quotes are
/// still open continues on the next line.
class session {
 public:
  explicit session(std::ostream& out, session_options opt = {}) : out_(out), opt_(std::move(opt)) {}

  logic::environment& environment() {
    if (!env_) {
      env_ = logic::environment(opt_.adder());
      *env_ = env_->with_sequence("C", c_alpha_dfao()).with_sequence("X", x5_dfao());
    }
    return *env_;
  }

  /// Executes one statement; returns an exit_code.
  int execute(const std::string& statement) {
    std::vector<std::string> words;
    try {
      words = split(statement);
    } catch (const error& e) {
      out_ << "error: " << e.what() << "\n";
      return usage_error;
    }
    if (words.empty()) return ok;
    try {
      return dispatch(words);
    } catch (const logic::parse_error& e) {
      out_ << "parse error: " << e.what() << "\n";
      return usage_error;
    } catch (const error& e) {
      out_ << "error: " << e.what() << "\n";
      return usage_error;
    }
  }

  /// Runs a whole script. Stops at the first usage error; a failed
  /// expectation is reported and the script continues.
  int run(std::istream& in) {
    int status = ok;
    std::string pending, line;
    while (std::getline(in, line)) {
      pending += line;
      pending += '\n';
      if (quotes_open(pending)) continue;
      for (const auto& st : statements(pending)) {
        int r = execute(st);
        if (r == usage_error) return usage_error;
        if (r == proof_failure) status = proof_failure;
      }
      pending.clear();
    }
    if (quotes_open(pending)) {
      out_ << "error: unterminated string at end of script\n";
      return usage_error;
    }
    for (const auto& st : statements(pending)) {
      int r = execute(st);
      if (r == usage_error) return usage_error;
      if (r == proof_failure) status = proof_failure;
    }
    return status;
  }

 private:
  static bool quotes_open(const std::string& s) {
    bool open = false;
    for (char c : s)
      if (c == '"') open = !open;
    return open;
  }

  /// Splits text into statements at ';' and newlines outside quotes, and
  /// drops '#' comments.
  static std::vector<std::string> statements(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, comment = false;
    for (char c : text) {
      if (comment) {
        if (c == '\n') comment = false;
        else continue;
      }
      if (c == '"') quoted = !quoted;
      if (!quoted && c == '#') {
        comment = true;
        continue;
      }
      if (!quoted && (c == ';' || c == '\n')) {
        if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
        cur.clear();
        continue;
      }
      cur.push_back(c);
    }
    if (cur.find_first_not_of(" \t\r") != std::string::npos) out.push_back(cur);
    return out;
  }

  /// Whitespace-separated words; a double-quoted string is one word with
  /// the quotes removed.
  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
        continue;
      }
      if (s[i] == '"') {
        auto end = s.find('"', i + 1);
        if (end == std::string::npos) throw error("unterminated string");
        out.push_back(s.substr(i + 1, end - i - 1));
        i = end + 1;
        continue;
      }
      auto j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '"') ++j;
      out.push_back(s.substr(i, j - i));
      i = j;
    }
    return out;
  }

  int dispatch(const std::vector<std::string>& w) {
    const auto& cmd = w[0];
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (w.size() < lo || w.size() > hi) throw error("wrong number of arguments to " + cmd);
    };
    if (cmd == "def") {
      need(3, 3);
      environment() = logic::define(environment(), w[1], w[2]);
      const auto& r = *environment().definition(w[1]);
      out_ << w[1] << ": defined over " << describe_vars(r.vars) << ", "
           << r.automaton.size() << " states\n";
      emit(w[1], r.automaton, r.vars);
      return ok;
    }
    if (cmd == "eval") {
      need(2, 3);
      std::string name = w.size() == 3 ? w[1] : "";
      const std::string& text = w.back();
      auto f = logic::parse(text);
      auto r = logic::compile(f, environment());
      auto expected = expectation_;
      expectation_.reset();
      if (r.closed()) {
        bool value = r.truth();
        out_ << (name.empty() ? "" : name + ": ") << (value ? "TRUE" : "FALSE");
        if (expected && *expected != value) {
          out_ << " (expected " << (*expected ? "TRUE" : "FALSE") << ")\n";
          return proof_failure;
        }
        out_ << "\n";
        return ok;
      }
      if (expected) throw error("expect applies only to closed predicates");
      out_ << (name.empty() ? "" : name + ": ") << "automaton over " << describe_vars(r.vars)
           << ", " << r.automaton.size() << " states\n";
      if (name.empty()) {
        print(r.automaton, r.vars);
      } else {
        emit(name, r.automaton, r.vars);
        environment() = environment().with_definition(name, std::move(r));
      }
      return ok;
    }
    if (cmd == "reg") {
      need(3, 4);
      if (w.size() == 4 && w[2] != "msd_pell") throw error("unsupported numeration '" + w[2] + "'");
      environment() = logic::reg(environment(), w[1], w.back());
      out_ << w[1] << ": " << environment().definition(w[1])->automaton.size() << " states\n";
      return ok;
    }
    if (cmd == "expect") {
      need(2, 2);
      if (w[1] != "TRUE" && w[1] != "FALSE") throw error("expect takes TRUE or FALSE");
      expectation_ = w[1] == "TRUE";
      return ok;
    }
    if (cmd == "bind") {
      need(3, 3);
      auto seq = builtin_sequence(w[2]);
      if (!seq) throw error("unknown sequence '" + w[2] + "'");
      environment() = environment().with_sequence(w[1], *seq);
      out_ << w[1] << " := " << w[2] << "\n";
      return ok;
    }
    if (cmd == "dump") {
      need(2, 2);
      if (const auto* r = environment().definition(w[1])) {
        print(r->automaton, r->vars);
      } else if (const auto* d = environment().sequence(w[1])) {
        print_sequence(*d);
      } else if (w[1] == "adder") {
        print(environment().adder(), {"x", "y", "z"});
      } else {
        throw error("nothing named '" + w[1] + "'");
      }
      return ok;
    }
    throw error("unknown command '" + cmd + "'");
  }

  static std::string describe_vars(const std::vector<std::string>& vars) {
    std::string s = "(";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? ", " : "") + vars[i];
    return s + ")";
  }

  void print(const dfa& a, const std::vector<std::string>& vars) {
    if (opt_.format == "dot")
      write_dot(out_, a);
    else
      write_text(out_, a, vars);
  }

  void print_sequence(const dfao& d) {
    if (opt_.format == "dot")
      write_dot(out_, d);
    else
      write_text(out_, d);
  }

  void emit(const std::string& name, const dfa& a, const std::vector<std::string>& vars) {
    if (!opt_.emit_dir) return;
    std::filesystem::create_directories(*opt_.emit_dir);
    auto path = *opt_.emit_dir / (name + (opt_.format == "dot" ? ".dot" : ".txt"));
    std::ofstream f(path);
    if (opt_.format == "dot")
      write_dot(f, a, "A");
    else
      write_text(f, a, vars);
  }

  std::ostream& out_;
  session_options opt_;
  std::optional<logic::environment> env_;
  std::optional<bool> expectation_;
};

}  // namespace pellwalnut
