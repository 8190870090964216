#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pellwalnut {

using state_id = std::uint32_t;
using symbol_id = std::uint32_t;

/// Digits of every track range over {0, 1, 2}.
inline constexpr int digit_base = 3;

/// Largest number of parallel tracks an automaton may carry. 3^12 symbols
/// is already far beyond anything the predicate compiler produces.
inline constexpr int max_tracks = 12;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr symbol_id pow3(int k) {
  symbol_id r = 1;
  for (int i = 0; i < k; ++i) r *= digit_base;
  return r;
}

/// Symbols of a k-track alphabet are digit tuples packed as base-3 numbers
/// with track 0 as the most significant digit, so numeric order of symbol
/// ids is lexicographic order of tuples.
class track_alphabet {
 public:
  explicit track_alphabet(int tracks = 0) : tracks_(tracks) {
    if (tracks < 0 || tracks > max_tracks)
      throw error("track count out of range: " + std::to_string(tracks));
    size_ = pow3(tracks);
  }

  int tracks() const noexcept { return tracks_; }
  symbol_id size() const noexcept { return size_; }

  symbol_id encode(std::span<const int> digits) const {
    if (static_cast<int>(digits.size()) != tracks_)
      throw error("symbol width does not match track count");
    symbol_id s = 0;
    for (int d : digits) {
      if (d < 0 || d >= digit_base) throw error("digit outside {0,1,2}");
      s = s * digit_base + static_cast<symbol_id>(d);
    }
    return s;
  }

  std::vector<int> decode(symbol_id s) const {
    std::vector<int> digits(tracks_);
    for (int t = tracks_ - 1; t >= 0; --t) {
      digits[t] = static_cast<int>(s % digit_base);
      s /= digit_base;
    }
    return digits;
  }

  int digit(symbol_id s, int track) const noexcept {
    return static_cast<int>((s / pow3(tracks_ - 1 - track)) % digit_base);
  }

  /// The all-zero tuple used for leading padding.
  static constexpr symbol_id zero() noexcept { return 0; }

  /// "[1,0,2]"
  std::string format(symbol_id s) const {
    std::string out = "[";
    auto digits = decode(s);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) out += ',';
      out += static_cast<char>('0' + digits[i]);
    }
    out += ']';
    return out;
  }

  bool operator==(const track_alphabet&) const = default;

 private:
  int tracks_ = 0;
  symbol_id size_ = 1;
};

/// Packs one digit string per track into a symbol word. All tracks must
/// already have equal length.
inline std::vector<symbol_id> zip_tracks(const std::vector<std::string>& tracks) {
  track_alphabet alpha(static_cast<int>(tracks.size()));
  std::size_t len = tracks.empty() ? 0 : tracks.front().size();
  for (const auto& t : tracks)
    if (t.size() != len) throw error("tracks of unequal length");
  std::vector<symbol_id> word(len);
  std::vector<int> digits(tracks.size());
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t t = 0; t < tracks.size(); ++t) digits[t] = tracks[t][i] - '0';
    word[i] = alpha.encode(digits);
  }
  return word;
}

/// Parses "[0,0,1][2,0,0]..." into a symbol word over the given alphabet.
inline std::vector<symbol_id> parse_symbol_word(const track_alphabet& alpha,
                                                const std::string& text) {
  std::vector<symbol_id> word;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '[') throw error("expected '[' in symbol word");
    ++i;
    std::vector<int> digits;
    while (i < text.size() && text[i] != ']') {
      if (text[i] >= '0' && text[i] <= '9') {
        digits.push_back(text[i] - '0');
      } else if (text[i] != ',' && text[i] != ' ') {
        throw error("unexpected character in symbol tuple");
      }
      ++i;
    }
    if (i == text.size()) throw error("unterminated symbol tuple");
    ++i;
    word.push_back(alpha.encode(digits));
    skip_ws();
  }
  return word;
}

}  // namespace pellwalnut
