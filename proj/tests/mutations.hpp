#pragma once

// The four single-point mutants of the proof inputs, and a driver that runs
// the theorem scripts until one of them fails.

#include <optional>
#include <string>
#include <vector>

#include <pellwalnut/theorems.hpp>

namespace mutations {

namespace pw = pellwalnut;

struct mutant {
  std::string description;
  pw::proof_context ctx;
};

inline pw::state_id rejecting_sink(const pw::dfa& a) {
  for (pw::state_id q = 0; q < a.size(); ++q) {
    if (a.label(q)) continue;
    bool loops = true;
    for (pw::symbol_id s = 0; s < a.symbols() && loops; ++s) loops = a.next(q, s) == q;
    if (loops) return q;
  }
  throw pw::error("automaton has no rejecting sink");
}

inline std::vector<mutant> single_point(const pw::proof_context& ref) {
  std::vector<mutant> out;
  {
    auto ctx = ref;
    auto q = ctx.adder.initial();
    ctx.adder.set_label(q, !ctx.adder.label(q));
    out.push_back({"adder: initial state's accepting bit flipped", ctx});
  }
  {
    auto ctx = ref;
    auto sym = pw::parse_symbol_word(ctx.adder.alphabet(), "[1,0,1]")[0];
    ctx.adder.set_next(ctx.adder.initial(), sym, rejecting_sink(ctx.adder));
    out.push_back({"adder: initial [1,0,1] transition rerouted to the sink", ctx});
  }
  {
    auto ctx = ref;
    auto q = ctx.x5.run(pw::digit_word("2001"));
    ctx.x5.set_label(q, ctx.x5.label(q) == 3 ? 4 : 3);
    out.push_back({"x5: output of the state reached by 2001 flipped", ctx});
  }
  {
    auto ctx = ref;
    auto q = ctx.c_alpha.run(pw::digit_word("1"));
    ctx.c_alpha.set_label(q, ctx.c_alpha.label(q) ? 0 : 1);
    out.push_back({"c_alpha: output of the state reached by 1 flipped", ctx});
  }
  return out;
}

/// Runs the theorem scripts in suite order and returns the first that
/// fails, if any.
inline std::optional<std::string> first_failure(const pw::proof_context& ctx) {
  for (const auto& name : pw::theorem_names())
    if (!pw::prove(name, ctx).passed()) return name;
  return std::nullopt;
}

}  // namespace mutations
