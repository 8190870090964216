#pragma once

// Fast brute-force agreement check of an addition automaton: every x, y up
// to `limit` with z = x + y, plus `wrong` random z != x + y per pair.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <pellwalnut/pell.hpp>

namespace adder_check {

struct outcome {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::string first;
};

inline outcome run(const pellwalnut::dfa& a, std::uint64_t limit, int wrong, std::uint64_t seed = 1) {
  std::vector<std::string> repr(2 * limit + 2);
  for (std::uint64_t n = 0; n < repr.size(); ++n) repr[n] = pellwalnut::encode(n).digits();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, 2 * limit + 1);
  outcome out;
  auto accepts = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    const auto &rx = repr[x], &ry = repr[y], &rz = repr[z];
    std::size_t w = std::max({rx.size(), ry.size(), rz.size()});
    auto digit = [w](const std::string& r, std::size_t i) {
      std::size_t pad = w - r.size();
      return i < pad ? 0 : r[i - pad] - '0';
    };
    auto q = a.initial();
    for (std::size_t i = 0; i < w; ++i)
      q = a.next(q, static_cast<pellwalnut::symbol_id>(9 * digit(rx, i) + 3 * digit(ry, i) + digit(rz, i)));
    return a.label(q);
  };
  auto check = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    ++out.checked;
    if (accepts(x, y, z) != (x + y == z)) {
      if (!out.mismatches++)
        out.first = std::to_string(x) + " + " + std::to_string(y) + " = " + std::to_string(z);
    }
  };
  for (std::uint64_t x = 0; x <= limit; ++x)
    for (std::uint64_t y = 0; y <= limit; ++y) {
      check(x, y, x + y);
      for (int k = 0; k < wrong;) {
        auto z = pick(rng);
        if (z == x + y) continue;
        check(x, y, z);
        ++k;
      }
    }
  return out;
}

}  // namespace adder_check
