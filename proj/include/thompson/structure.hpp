// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "thompson/plf.hpp"

namespace thompson {

/// Maximal open interval on which g(x) != x. Endpoints are fixed points and
/// need not be dyadic: a slope-2^s segment crossing the diagonal does so at
/// (2^s x0 - y0) / (2^s - 1).
struct MovedInterval {
  Rational lo;
  Rational hi;
  bool moves_up = false;  // g(x) > x inside
};

struct SupportReport {
  std::vector<MovedInterval> moved_intervals;
  /// Dyadic points of closure(supp g) \ supp g, increasing.
  std::vector<Dyadic> dividing_points;

  std::string to_string() const;
};

SupportReport support(const PLHomeo& g);

/// log2 slope of the segment containing r, taken from the given side.
int slope_near(const PLHomeo& g, const Rational& r, bool from_left);

struct Fragment {
  DyadicInterval interval;
  PLHomeo piece;
};

/// g = product of the pieces (in any order); each piece is non-trivial and
/// supported in its interval. Intervals are the consecutive cuts at 0, the
/// dividing points, and 1.
struct Defragmentation {
  std::vector<Fragment> fragments;
  std::vector<Dyadic> cuts;

  std::string to_string() const;
};

Defragmentation defragment(const PLHomeo& g);

/// g on [lo, hi], identity elsewhere. g must fix lo and hi (NonDyadicCut otherwise).
PLHomeo restrict_to(const PLHomeo& g, const DyadicInterval& iv);

bool commutes(const PLHomeo& g, const PLHomeo& h);

/// r^power == g. `certified` is set when power equals the largest value the
/// endpoint slopes allow, so no larger root can exist; otherwise the result is
/// the best root found within the search bound.
struct RootResult {
  PLHomeo root;
  std::uint32_t power = 1;
  std::uint32_t power_bound = 1;
  bool certified = false;
};

/// gcd of the inward log2-slopes of g at the endpoints of its moved
/// intervals; every k with a k-th root of g divides it.
std::uint32_t root_power_bound(const PLHomeo& g);

/// psi in F with psi(from.lo) = to.lo and psi(from.hi) = to.hi, linear on
/// matching standard dyadic pieces. Requires the endpoints at 0 and at 1 to
/// agree (InvalidArgument otherwise).
PLHomeo transfer(const DyadicInterval& from, const DyadicInterval& to);

/// Every element of F supported in [a,b] is psi^-1 embed(e, J) psi, where J
/// is [0,1], [0,1/2], [1/2,1] or [1/4,1/2] and psi = transfer([a,b], J).
PLHomeo chart_element(const PLHomeo& e, const DyadicInterval& iv);

/// Searches r = chart_element(e, hull(supp g)) over the enumeration up to
/// `leaf_bound` leaves. Throws IdentityInput.
RootResult max_root(const PLHomeo& g, std::uint32_t leaf_bound);

struct CyclicFactor {
  PLHomeo generator;
  std::size_t fragment = 0;
  bool certified = false;
};

struct CentralizerDecomposition {
  std::vector<CyclicFactor> cyclic_factors;
  /// Subintervals fixed pointwise by g, each contributing a copy of F.
  std::vector<DyadicInterval> thompson_factors;
  Defragmentation defragmentation;
  /// Set when some fragment root is not certified maximal.
  bool partial = false;

  std::string to_string() const;
};

/// Throws IdentityInput (the centralizer of the identity is all of F).
CentralizerDecomposition centralizer(const PLHomeo& g, std::uint32_t leaf_bound);

enum class ConjDirection {
  ConjByG,         // g^-1 x_m g = x_{m+t}
  ConjByGInverse,  // g x_m g^-1 = x_{m+t}
};

struct ConjShift {
  std::uint32_t threshold = 0;  // identity certified for threshold < m <= threshold + window
  std::uint32_t shift = 0;
  ConjDirection direction = ConjDirection::ConjByG;
  long long exponent_sum = 0;

  std::string to_string() const;
};

/// Applies the k-fold conjugation of `x` by g in the given direction.
PLHomeo conjugate(const PLHomeo& x, const PLHomeo& g, ConjDirection dir, long long k = 1);

/// Certified shift data for g. The threshold starts at degree + max(t, 1),
/// is verified on a window of 10 indices, and is lowered while the identity
/// keeps holding.
ConjShift conj_shift(const PLHomeo& g);

}  // namespace thompson
