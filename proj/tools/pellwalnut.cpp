// Command-line front end: predicate evaluation, learning, the theorem suite,
// sequence dumps, the word search, and numeral conversion.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <pellwalnut/io.hpp>
#include <pellwalnut/learner.hpp>
#include <pellwalnut/search.hpp>
#include <pellwalnut/sequences.hpp>
#include <pellwalnut/session.hpp>
#include <pellwalnut/theorems.hpp>

namespace pw = pellwalnut;

namespace {

struct globals {
  std::string emit_dir;
  std::string format = "txt";
  std::size_t max_len = 8;
  std::uint64_t seed = 1;
};

pw::session_options session_options(const globals& g) {
  pw::session_options o;
  if (!g.emit_dir.empty()) o.emit_dir = g.emit_dir;
  o.format = g.format;
  return o;
}

void write_automaton(const globals& g, const std::string& name, const pw::dfa& a,
                     const std::vector<std::string>& vars = {}) {
  if (g.emit_dir.empty()) return;
  std::filesystem::create_directories(g.emit_dir);
  auto path = std::filesystem::path(g.emit_dir) / (name + (g.format == "dot" ? ".dot" : ".txt"));
  std::ofstream f(path);
  if (g.format == "dot")
    pw::write_dot(f, a);
  else
    pw::write_text(f, a, vars);
}

int print_report(const pw::theorem_report& r, const globals& g) {
  std::cout << r.theorem << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << std::fixed
            << std::setprecision(2) << r.seconds << " s)\n";
  for (const auto& v : r.verdicts) {
    std::cout << "  " << (v.passed() ? "ok  " : "FAIL") << "  " << v.predicate << "  expected "
              << (v.expected ? "TRUE" : "FALSE") << ", got " << (v.obtained ? "TRUE" : "FALSE");
    if (!v.detail.empty()) std::cout << "  [" << v.detail << "]";
    std::cout << "\n";
  }
  for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
  for (const auto& [name, a] : r.automata) write_automaton(g, name, a);
  return r.passed() ? pw::ok : pw::proof_failure;
}

pw::proof_context context() {
  return pw::proof_context::with_adder(pw::load_or_learn_adder(pw::adder_cache_from_environment()));
}

pw::rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return pw::rational(std::stoll(s));
    return pw::rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw pw::error("bad rational '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pell-base automata: predicate evaluation and the x5 / x3 theorem suite"};
  app.require_subcommand(1);
  app.fallthrough();
  globals g;
  app.add_option("--emit-automata", g.emit_dir, "Write every produced automaton into this directory");
  app.add_option("--format", g.format, "Automaton output format")->check(CLI::IsMember({"txt", "dot"}));
  app.add_option("--max-len", g.max_len, "Longest word checked by equivalence queries when learning");
  app.add_option("--seed", g.seed, "Seed for sampled equivalence queries");

  std::string predicate, name, pattern;
  auto* eval = app.add_subcommand("eval", "Evaluate a predicate");
  eval->add_option("predicate", predicate)->required();

  auto* def = app.add_subcommand("def", "Compile a predicate and print its automaton");
  def->add_option("name", name)->required();
  def->add_option("predicate", predicate)->required();

  auto* reg = app.add_subcommand("reg", "Compile a digit regular expression");
  reg->add_option("name", name)->required();
  reg->add_option("pattern", pattern)->required();

  auto* dump = app.add_subcommand("dump", "Print a built-in automaton (adder, c_alpha, x5, x3)");
  dump->add_option("name", name)->required();

  auto* learn = app.add_subcommand("learn-adder", "Learn the addition automaton");
  std::size_t samples = 100000;
  learn->add_option("--samples", samples, "Random words per equivalence query (0: exhaustive only)");

  auto* verify = app.add_subcommand("verify-adder", "Inductive proof that the adder is correct");

  auto* prove = app.add_subcommand("prove", "Run a theorem script, or all of them");
  std::string theorem = "all";
  prove->add_option("theorem", theorem)->check(CLI::IsMember([] {
    auto v = pw::theorem_names();
    v.push_back("all");
    return v;
  }()));

  auto* seq = app.add_subcommand("seq", "Print or dump a sequence (c_alpha, x5, x3)");
  std::uint64_t from = 0, to = 0;
  std::string dump_file;
  seq->add_option("name", name)->required()->check(CLI::IsMember({"c_alpha", "x5", "x3"}));
  seq->add_option("--from", from);
  seq->add_option("--to", to);
  seq->add_option("--dump", dump_file, "Write the automaton to this file");

  auto* search = app.add_subcommand("search", "Breadth-first search for balanced words");
  int alphabet = 5;
  std::string bound = "3/2";
  bool strict = false;
  std::size_t limit_depth = 0;
  bool show_levels = false;
  search->add_option("--alphabet", alphabet);
  search->add_option("--bound", bound);
  search->add_flag("--strict", strict, "Forbid exponent equal to the bound");
  search->add_option("--limit-depth", limit_depth);
  search->add_flag("--levels", show_levels, "Print the frontier size at each depth");

  auto* convert = app.add_subcommand("convert", "Decimal to Pell representation and back");
  std::string number;
  bool to_decimal = false;
  convert->add_option("number", number)->required();
  convert->add_flag("--to-decimal", to_decimal, "Read NUMBER as a Pell representation");

  auto* run = app.add_subcommand("run", "Run a script of def/eval/reg/expect/bind/dump statements");
  std::string script;
  run->add_option("script", script)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? pw::ok : pw::usage_error;
  }

  try {
    if (eval->parsed() || def->parsed()) {
      pw::session s(std::cout, session_options(g));
      std::string stmt = eval->parsed() ? "eval \"" + predicate + "\""
                                        : "def " + name + " \"" + predicate + "\"";
      int r = s.execute(stmt);
      if (r == pw::ok && def->parsed()) r = s.execute("dump " + name);
      return r;
    }
    if (reg->parsed()) {
      auto a = pw::logic::compile_regex(pattern);
      if (g.format == "dot")
        pw::write_dot(std::cout, a);
      else
        pw::write_text(std::cout, a, {name});
      write_automaton(g, name, a, {name});
      return pw::ok;
    }
    if (dump->parsed()) {
      auto print = [&](const auto& a, const std::vector<std::string>& vars) {
        if (g.format == "dot")
          pw::write_dot(std::cout, a);
        else
          pw::write_text(std::cout, a, vars);
      };
      if (name == "adder") {
        print(pw::load_or_learn_adder(pw::adder_cache_from_environment()), {"x", "y", "z"});
      } else if (auto d = pw::builtin_sequence(name)) {
        print(*d, {"n"});
      } else {
        std::cerr << "unknown automaton '" << name << "'\n";
        return pw::usage_error;
      }
      return pw::ok;
    }
    if (learn->parsed()) {
      auto r = pw::learn_adder(g.max_len, g.seed, samples);
      auto live = pw::live_state_count(r.machine);
      std::cout << "states: " << r.machine.size() << " (" << live << " without the rejecting sink)\n"
                << "alphabet: " << r.machine.symbols() << "\n"
                << "rounds: " << r.rounds << "\nmembership queries: " << r.queries << "\n";
      write_automaton(g, "adder", r.machine, {"x", "y", "z"});
      if (auto dir = pw::adder_cache_from_environment()) {
        std::filesystem::create_directories(*dir);
        std::ofstream f(*dir / "adder.txt");
        pw::write_text(f, r.machine, {"x", "y", "z"});
      }
      return pw::ok;
    }
    if (verify->parsed()) return print_report(pw::verify_adder(context()), g);
    if (prove->parsed()) {
      auto ctx = context();
      if (theorem != "all") return print_report(pw::prove(theorem, ctx), g);
      int status = pw::ok;
      for (const auto& r : pw::prove_all(ctx))
        if (print_report(r, g) != pw::ok) status = pw::proof_failure;
      return status;
    }
    if (seq->parsed()) {
      auto d = *pw::builtin_sequence(name);
      if (!dump_file.empty()) {
        std::ofstream f(dump_file);
        if (!f) throw pw::error("cannot write " + dump_file);
        pw::write_text(f, d, {"n"});
      }
      if (seq->count("--from") || seq->count("--to") || dump_file.empty()) {
        if (name == "c_alpha" && from == 0) from = 1;
        for (std::uint64_t i = from; i <= to; ++i) std::cout << static_cast<unsigned>(pw::dfao_eval(d, i));
        std::cout << "\n";
      }
      return pw::ok;
    }
    if (search->parsed()) {
      pw::search_options o;
      o.alphabet_size = alphabet;
      o.bound = parse_rational(bound);
      o.strict = strict;
      if (limit_depth) o.depth_limit = limit_depth;
      auto r = pw::bfs_optimal(o);
      std::cout << "max length: " << r.max_length << "\ncount: " << r.words.size() << "\n";
      if (show_levels)
        for (std::size_t d = 0; d < r.level_sizes.size(); ++d)
          std::cout << "depth " << d + 1 << ": " << r.level_sizes[d] << "\n";
      for (const auto& w : r.words) std::cout << w << "\n";
      return pw::ok;
    }
    if (convert->parsed()) {
      if (to_decimal) {
        std::cout << pw::decode(number) << "\n";
      } else {
        std::size_t used = 0;
        std::uint64_t n = std::stoull(number, &used);
        if (used != number.size()) throw pw::error("not a decimal number: " + number);
        std::cout << pw::encode(n).str() << "\n";
      }
      return pw::ok;
    }
    if (run->parsed()) {
      std::ifstream in(script);
      pw::session s(std::cout, session_options(g));
      return s.run(in);
    }
  } catch (const pw::logic::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return pw::usage_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pw::usage_error;
  }
  return pw::usage_error;
}
