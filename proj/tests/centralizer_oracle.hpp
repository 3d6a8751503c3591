// SPDX-License-Identifier: Apache-2.0
//
// Brute-force membership in a centralizer decomposition: c belongs iff it
// fixes every cut and each projection to a fragment interval is a power of
// that fragment's cyclic generator (found by trying every exponent).

#pragma once

#include "thompson/structure.hpp"

namespace thompson::testing {

inline bool brute_power(const PLHomeo& u, const PLHomeo& h, int range) {
  PLHomeo up;
  PLHomeo down;
  if (u.is_identity()) return true;
  const PLHomeo hinv = h.inverse();
  for (int d = 1; d <= range; ++d) {
    up = up * h;
    down = down * hinv;
    if (up == u || down == u) return true;
  }
  return false;
}

inline bool in_decomposition(const CentralizerDecomposition& dec, const PLHomeo& c, int range = 64) {
  const auto& cuts = dec.defragmentation.cuts;
  for (const auto& p : cuts)
    if (c(p) != p) return false;
  for (const auto& f : dec.cyclic_factors) {
    const auto& iv = dec.defragmentation.fragments[f.fragment].interval;
    if (!brute_power(restrict_to(c, iv), f.generator, range)) return false;
  }
  return true;
}

}  // namespace thompson::testing
