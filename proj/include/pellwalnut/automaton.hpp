#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "alphabet.hpp"

namespace pellwalnut {

/// Complete deterministic automaton over a k-track digit-tuple alphabet with
/// one label per state. With bool labels this is an acceptor, with small
/// integer labels a Moore machine (DFAO). The transition function is always
/// total; sink states are ordinary states.
template <class Label>
class automaton {
 public:
  using label_type = Label;

  automaton() : automaton(0) {}

  explicit automaton(int tracks) : alpha_(tracks) {}

  /// `states` states labelled `fill`, each looping on every symbol.
  automaton(int tracks, state_id states, Label fill = Label{})
      : alpha_(tracks), labels_(states, fill) {
    delta_.reserve(static_cast<std::size_t>(states) * alpha_.size());
    for (state_id q = 0; q < states; ++q) delta_.insert(delta_.end(), alpha_.size(), q);
  }

  const track_alphabet& alphabet() const noexcept { return alpha_; }
  int tracks() const noexcept { return alpha_.tracks(); }
  symbol_id symbols() const noexcept { return alpha_.size(); }
  state_id size() const noexcept { return static_cast<state_id>(labels_.size()); }

  state_id initial() const noexcept { return initial_; }
  void set_initial(state_id q) { initial_ = q; }

  state_id next(state_id q, symbol_id s) const noexcept {
    return delta_[static_cast<std::size_t>(q) * alpha_.size() + s];
  }
  void set_next(state_id q, symbol_id s, state_id target) {
    delta_[static_cast<std::size_t>(q) * alpha_.size() + s] = target;
  }

  Label label(state_id q) const { return labels_[q]; }
  void set_label(state_id q, Label l) { labels_[q] = l; }

  /// Appends a state whose transitions all loop back to itself.
  state_id add_state(Label l = Label{}) {
    auto q = size();
    labels_.push_back(l);
    delta_.resize(delta_.size() + alpha_.size(), q);
    return q;
  }

  state_id run(std::span<const symbol_id> word) const {
    return run_from(initial_, word);
  }
  state_id run_from(state_id q, std::span<const symbol_id> word) const {
    for (auto s : word) q = next(q, s);
    return q;
  }
  Label evaluate(std::span<const symbol_id> word) const { return label(run(word)); }

  std::span<const state_id> row(state_id q) const {
    return {delta_.data() + static_cast<std::size_t>(q) * alpha_.size(), alpha_.size()};
  }

  bool operator==(const automaton& o) const {
    return alpha_ == o.alpha_ && initial_ == o.initial_ && delta_ == o.delta_ &&
           labels_ == o.labels_;
  }

 private:
  track_alphabet alpha_;
  state_id initial_ = 0;
  std::vector<state_id> delta_;
  std::vector<Label> labels_;
};

using dfa = automaton<bool>;
using dfao = automaton<std::uint8_t>;

/// One-state automaton accepting everything (true) or nothing (false).
inline dfa constant_dfa(int tracks, bool accept) { return dfa(tracks, 1, accept); }

}  // namespace pellwalnut
