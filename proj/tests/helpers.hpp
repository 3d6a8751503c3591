// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string_view>

#include "thompson/dyadic.hpp"
#include "thompson/plf.hpp"
#include "thompson/words.hpp"

namespace thompson::testing {

inline Dyadic D(std::string_view s) { return Dyadic::parse(s); }
inline PLHomeo P(std::string_view s) { return parse_plf(s); }
inline PLHomeo W(std::string_view s) { return word_to_plf(parse_word(s)); }

inline DyadicInterval I(std::string_view lo, std::string_view hi) { return {D(lo), D(hi)}; }

/// Random freely reduced word over x_0..x_{max_index} with `length` unit letters.
inline GenWord random_word(std::mt19937_64& rng, int length, std::uint32_t max_index) {
  std::uniform_int_distribution<std::uint32_t> idx(0, max_index);
  std::bernoulli_distribution sign(0.5);
  GenWord w;
  for (int i = 0; i < length; ++i) w.append({idx(rng), sign(rng) ? 1 : -1});
  return w;
}

}  // namespace thompson::testing
