#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "automaton.hpp"
#include "minimize.hpp"

namespace pellwalnut {

// Text format:
//
//   msd_pell <tracks>
//   # tracks: x y z
//   state 0 output 3        (DFAO)  |  state 0 accepting  (acceptor)
//   [1,0,2] -> 4
//
// State 0 is initial. Transitions that are not listed go to an implicit
// rejecting sink (label 0). '#' starts a comment; the "# tracks:" comment
// names the variables and is otherwise ignored on input.

template <class Label>
void write_text(std::ostream& out, const automaton<Label>& a,
                const std::vector<std::string>& track_names = {}) {
  auto c = canonicalize(a);
  out << "msd_pell " << c.tracks() << "\n";
  if (!track_names.empty()) {
    out << "# tracks:";
    for (const auto& n : track_names) out << " " << n;
    out << "\n";
  }
  for (state_id q = 0; q < c.size(); ++q) {
    out << "state " << q;
    if constexpr (std::is_same_v<Label, bool>) {
      if (c.label(q)) out << " accepting";
    } else {
      out << " output " << static_cast<unsigned>(c.label(q));
    }
    out << "\n";
    for (symbol_id s = 0; s < c.symbols(); ++s)
      out << c.alphabet().format(s) << " -> " << c.next(q, s) << "\n";
  }
}

template <class Label>
std::string to_text(const automaton<Label>& a, const std::vector<std::string>& track_names = {}) {
  std::ostringstream s;
  write_text(s, a, track_names);
  return s.str();
}

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  auto s = pos == std::string::npos ? line : line.substr(0, pos);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

template <class Label>
automaton<Label> read_text(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw error("automaton text, line " + std::to_string(lineno) + ": " + what);
  };
  int tracks = -1;
  struct pending_state {
    Label label{};
    std::vector<std::pair<symbol_id, std::uint64_t>> edges;
  };
  std::vector<pending_state> states;
  track_alphabet alpha;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    std::istringstream ls(body);
    std::string word;
    ls >> word;
    if (tracks < 0) {
      if (word != "msd_pell") fail("expected header 'msd_pell <tracks>'");
      if (!(ls >> tracks) || tracks < 0 || tracks > max_tracks) fail("bad track count");
      alpha = track_alphabet(tracks);
      continue;
    }
    if (word == "state") {
      std::uint64_t id;
      if (!(ls >> id) || id != states.size()) fail("states must be numbered 0, 1, 2, ... in order");
      pending_state st;
      std::string attr;
      while (ls >> attr) {
        if (attr == "accepting" && std::is_same_v<Label, bool>) {
          st.label = Label(1);
        } else if (attr == "output" && !std::is_same_v<Label, bool>) {
          unsigned v;
          if (!(ls >> v) || v > 255) fail("bad output value");
          st.label = static_cast<Label>(v);
        } else {
          fail("unexpected '" + attr + "'");
        }
      }
      states.push_back(std::move(st));
      continue;
    }
    if (states.empty()) fail("transition before any state");
    auto arrow = body.find("->");
    if (arrow == std::string::npos) fail("expected '[digits] -> target'");
    auto lhs = detail::strip_comment(body.substr(0, arrow));
    std::uint64_t target;
    std::istringstream rs(body.substr(arrow + 2));
    if (!(rs >> target)) fail("bad transition target");
    std::vector<symbol_id> sym;
    try {
      sym = parse_symbol_word(alpha, lhs);
    } catch (const error& e) {
      fail(e.what());
    }
    if (sym.size() != 1) fail("a transition reads exactly one symbol");
    states.back().edges.emplace_back(sym[0], target);
  }
  if (tracks < 0) fail("empty input");
  if (states.empty()) fail("no states");
  const auto n = static_cast<state_id>(states.size());
  automaton<Label> a(tracks, n + 1, Label{});
  for (state_id q = 0; q < n; ++q) {
    a.set_label(q, states[q].label);
    for (symbol_id s = 0; s < a.symbols(); ++s) a.set_next(q, s, n);
    for (auto [s, t] : states[q].edges) {
      if (t >= n) throw error("automaton text: transition to unknown state " + std::to_string(t));
      a.set_next(q, s, static_cast<state_id>(t));
    }
  }
  return canonicalize(a);
}

template <class Label>
automaton<Label> from_text(const std::string& text) {
  std::istringstream s(text);
  return read_text<Label>(s);
}

/// Graphviz rendering; parallel edges are merged into one labelled edge.
template <class Label>
void write_dot(std::ostream& out, const automaton<Label>& a, const std::string& name = "A") {
  auto c = canonicalize(a);
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  init [shape=point];\n  init -> 0;\n";
  for (state_id q = 0; q < c.size(); ++q) {
    out << "  " << q << " [";
    if constexpr (std::is_same_v<Label, bool>) {
      out << (c.label(q) ? "shape=doublecircle" : "shape=circle");
    } else {
      out << "label=\"" << q << "/" << static_cast<unsigned>(c.label(q)) << "\"";
    }
    out << "];\n";
  }
  for (state_id q = 0; q < c.size(); ++q) {
    std::vector<std::string> labels(c.size());
    for (symbol_id s = 0; s < c.symbols(); ++s) {
      auto& l = labels[c.next(q, s)];
      if (!l.empty()) l += ",";
      l += c.alphabet().format(s);
    }
    for (state_id t = 0; t < c.size(); ++t)
      if (!labels[t].empty()) out << "  " << q << " -> " << t << " [label=\"" << labels[t] << "\"];\n";
  }
  out << "}\n";
}

template <class Label>
std::string to_dot(const automaton<Label>& a, const std::string& name = "A") {
  std::ostringstream s;
  write_dot(s, a, name);
  return s.str();
}

}  // namespace pellwalnut
