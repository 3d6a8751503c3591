// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/dyadic.hpp"

namespace thompson {

struct Breakpoint {
  Dyadic x;
  Dyadic y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Closed interval [lo, hi] with 0 <= lo < hi <= 1 and dyadic endpoints.
class DyadicInterval {
 public:
  DyadicInterval() : lo_(0), hi_(1) {}  // [0,1]
  DyadicInterval(Dyadic lo, Dyadic hi);  // throws BadIntervals
  static DyadicInterval unit() { return {Dyadic(0), Dyadic(1)}; }

  const Dyadic& lo() const noexcept { return lo_; }
  const Dyadic& hi() const noexcept { return hi_; }
  Dyadic length() const { return hi_ - lo_; }
  bool contains(const Dyadic& t) const { return lo_ <= t && t <= hi_; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  std::string to_string() const;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

/*
 * An element of F as a strictly increasing PL homeomorphism of [0,1].
 *
 * Stored canonically: breakpoints from (0,0) to (1,1), one log2-slope per
 * segment, and no two consecutive segments with the same slope. Structural
 * equality is therefore functional equality.
 *
 * Products follow function composition: (f * g)(t) = f(g(t)).
 */
class PLHomeo {
 public:
  PLHomeo();  // identity

  /// Validates and canonicalizes. Throws BadEndpoints, NotMonotone or
  /// SlopeNotPowerOfTwo.
  static PLHomeo make(std::vector<Breakpoint> points);

  const std::vector<Breakpoint>& breakpoints() const noexcept { return points_; }
  /// log2 of the slope on [points[i], points[i+1]].
  const std::vector<int>& slopes() const noexcept { return slopes_; }
  std::size_t segment_count() const noexcept { return slopes_.size(); }

  bool is_identity() const noexcept { return slopes_.size() == 1; }

  /// Throws OutOfDomain unless 0 <= t <= 1.
  Dyadic operator()(const Dyadic& t) const;
  Dyadic preimage(const Dyadic& y) const;

  /// log2 slope immediately right (resp. left) of t.
  int slope_right_of(const Dyadic& t) const;
  int slope_left_of(const Dyadic& t) const;

  PLHomeo inverse() const;
  PLHomeo pow(long long k) const;

  friend PLHomeo operator*(const PLHomeo& f, const PLHomeo& g);
  friend bool operator==(const PLHomeo& a, const PLHomeo& b) {
    return a.slopes_ == b.slopes_ && a.points_ == b.points_;
  }

  std::size_t hash() const noexcept;

  /// `0->0,1/2->1/4,3/4->1/2,1->1`
  std::string to_string() const;

 private:
  friend class PLBuilder;
  std::size_t segment_index(const Dyadic& t) const;  // segment with x_i <= t < x_{i+1}

  std::vector<Breakpoint> points_;
  std::vector<int> slopes_;
};

/// Appends breakpoints with known segment slopes, merging collinear segments.
/// Callers guarantee monotonicity and slope consistency.
class PLBuilder {
 public:
  PLBuilder();
  void reserve(std::size_t n);
  /// Adds the segment ending at `p` whose log2-slope is `slope`.
  void push(Breakpoint p, int slope);
  PLHomeo finish() &&;

 private:
  PLHomeo out_;
};

PLHomeo plf_make(std::vector<Breakpoint> points);
PLHomeo plf_compose(const PLHomeo& f, const PLHomeo& g);
PLHomeo plf_invert(const PLHomeo& f);
Dyadic plf_eval(const PLHomeo& f, const Dyadic& t);

/// The standard generator x_n.
PLHomeo generator(std::uint32_t n);

/// Conjugates f by the increasing affine map [0,1] -> iv and extends by the
/// identity. embed(generator(n), [a,b]) is x_{[a,b],n}.
PLHomeo embed(const PLHomeo& f, const DyadicInterval& iv);

/// Parses the breakpoint text format. Coordinates that are not dyadic are
/// reported as SlopeNotPowerOfTwo, since no power-of-two slope can reach them.
PLHomeo parse_plf(std::string_view text);

/// Unit-square SVG: the graph as a polyline plus the dashed diagonal.
std::string to_svg(const PLHomeo& f, int pixels = 400);

}  // namespace thompson

template <>
struct std::hash<thompson::PLHomeo> {
  std::size_t operator()(const thompson::PLHomeo& f) const noexcept { return f.hash(); }
};
