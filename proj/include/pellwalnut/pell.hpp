#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"

namespace pellwalnut {

namespace detail {

inline constexpr std::size_t pell_table_size = [] {
  std::uint64_t a = 0, b = 1;
  std::size_t n = 2;
  while (b <= (std::numeric_limits<std::uint64_t>::max() - a) / 2) {
    auto c = 2 * b + a;
    a = b;
    b = c;
    ++n;
  }
  return n;
}();

inline constexpr auto pell_table = [] {
  std::array<std::uint64_t, pell_table_size> t{};
  t[0] = 0;
  t[1] = 1;
  for (std::size_t i = 2; i < t.size(); ++i) t[i] = 2 * t[i - 1] + t[i - 2];
  return t;
}();

}  // namespace detail

/// Number of Pell numbers representable in 64 bits (P_0 .. P_{count-1}).
inline constexpr std::size_t pell_count = detail::pell_table_size;

/// P_n with P_0 = 0, P_1 = 1, P_n = 2 P_{n-1} + P_{n-2}.
inline std::uint64_t pell_number(std::size_t n) {
  if (n >= pell_count) throw error("Pell index exceeds 64-bit range: " + std::to_string(n));
  return detail::pell_table[n];
}

/// The first `count` Pell numbers in an arbitrary integer type (for exact
/// arithmetic beyond 64 bits).
template <class Int>
std::vector<Int> pell_numbers(std::size_t count) {
  std::vector<Int> p;
  p.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < 2)
      p.push_back(Int(i));
    else
      p.push_back(Int(2) * p[i - 1] + p[i - 2]);
  }
  return p;
}

/// Most-significant-first Pell digit string. The digit d_i (counted from
/// the right, starting at 0) carries weight P_{i+1}. Zero is the empty
/// string; canonicity is not enforced by the type, only by is_canonical.
class pell_repr {
 public:
  pell_repr() = default;
  explicit pell_repr(std::string digits) : digits_(std::move(digits)) {
    for (char c : digits_)
      if (c < '0' || c > '2') throw error(std::string("invalid Pell digit '") + c + "'");
  }

  const std::string& digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }

  /// Display form; zero shows as "0".
  std::string str() const { return digits_.empty() ? "0" : digits_; }

  /// Left-pads with zeros to the requested width.
  std::string padded(std::size_t width) const {
    if (digits_.size() >= width) return digits_;
    return std::string(width - digits_.size(), '0') + digits_;
  }

  bool operator==(const pell_repr&) const = default;

 private:
  std::string digits_;
};

/// Greedy canonical representation.
inline pell_repr encode(std::uint64_t n) {
  if (n == 0) return {};
  std::size_t top = 1;
  while (top + 1 < pell_count && pell_number(top + 1) <= n) ++top;
  // top is the largest index with P_top <= n; it weights digit top-1.
  std::string digits;
  digits.reserve(top);
  for (std::size_t i = top; i >= 1; --i) {
    auto w = pell_number(i);
    auto d = n / w;
    n -= d * w;
    digits.push_back(static_cast<char>('0' + d));
  }
  return pell_repr(std::move(digits));
}

/// Sum of d_i P_{i+1}; accepts non-canonical strings.
inline std::uint64_t decode(std::string_view digits) {
  unsigned __int128 sum = 0;
  std::size_t n = digits.size();
  for (std::size_t k = 0; k < n; ++k) {
    char c = digits[k];
    if (c < '0' || c > '2') throw error(std::string("invalid Pell digit '") + c + "'");
    if (c == '0') continue;
    std::size_t weight_index = n - k;  // digit d_{n-1-k} weights P_{n-k}
    if (weight_index >= pell_count) throw error("Pell representation exceeds 64-bit range");
    sum += static_cast<unsigned __int128>(c - '0') * pell_number(weight_index);
    if (sum > std::numeric_limits<std::uint64_t>::max())
      throw error("Pell representation exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(sum);
}

inline std::uint64_t decode(const pell_repr& r) { return decode(r.digits()); }

/// Canonical: every digit in {0,1,2}, the last digit is not 2, every 2 is
/// followed by 0, and there is no leading zero.
inline bool is_canonical(std::string_view digits) {
  if (digits.empty()) return true;
  if (digits.front() == '0') return false;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    char c = digits[k];
    if (c < '0' || c > '2') return false;
    if (c == '2' && (k + 1 == digits.size() || digits[k + 1] != '0')) return false;
  }
  return true;
}

inline std::string_view strip_leading_zeros(std::string_view digits) {
  auto k = digits.find_first_not_of('0');
  return k == std::string_view::npos ? std::string_view{} : digits.substr(k);
}

/// Orders two naturals by lexicographic comparison of their zero-padded
/// canonical representations.
inline std::strong_ordering compare(std::uint64_t x, std::uint64_t y) {
  auto rx = encode(x), ry = encode(y);
  auto width = std::max(rx.size(), ry.size());
  auto c = rx.padded(width).compare(ry.padded(width));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// One-track recognizer of 0*w, w canonical. States: 0 = last digit was not
/// a 2 (accepting), 1 = last digit was 2, 2 = dead.
inline dfa canonical_recognizer() {
  dfa a(1, 3, false);
  a.set_label(0, true);
  a.set_next(0, 0, 0);
  a.set_next(0, 1, 0);
  a.set_next(0, 2, 1);
  a.set_next(1, 0, 0);
  a.set_next(1, 1, 2);
  a.set_next(1, 2, 2);
  for (symbol_id s = 0; s < 3; ++s) a.set_next(2, s, 2);
  return a;
}

/// Zero-padded multi-track encoding of a tuple of naturals.
inline std::vector<symbol_id> encode_tuple(std::span<const std::uint64_t> values) {
  std::vector<pell_repr> reprs;
  std::size_t width = 0;
  for (auto v : values) {
    reprs.push_back(encode(v));
    width = std::max(width, reprs.back().size());
  }
  std::vector<std::string> tracks;
  for (const auto& r : reprs) tracks.push_back(r.padded(width));
  return zip_tracks(tracks);
}

inline std::vector<symbol_id> encode_tuple(std::initializer_list<std::uint64_t> values) {
  std::vector<std::uint64_t> v(values);
  return encode_tuple(std::span<const std::uint64_t>(v));
}

/// One-track symbol word of a digit string.
inline std::vector<symbol_id> digit_word(std::string_view digits) {
  std::vector<symbol_id> w;
  for (char c : digits) {
    if (c < '0' || c > '2') throw error(std::string("invalid Pell digit '") + c + "'");
    w.push_back(static_cast<symbol_id>(c - '0'));
  }
  return w;
}

}  // namespace pellwalnut
