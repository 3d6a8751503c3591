// SPDX-License-Identifier: Apache-2.0

#include "thompson/structure.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "thompson/error.hpp"
#include "thompson/tree_pair.hpp"
#include "thompson/words.hpp"

namespace thompson {

namespace {

struct FixedComponent {
  Rational lo;
  Rational hi;
  int right_slope = 0;  // log2 slope just right of hi
};

void add_component(std::vector<FixedComponent>& out, FixedComponent c) {
  if (!out.empty() && c.lo <= out.back().hi) {
    if (c.hi >= out.back().hi) {
      out.back().hi = c.hi;
      out.back().right_slope = c.right_slope;
    }
    return;
  }
  out.push_back(std::move(c));
}

std::string join_dyadics(const std::vector<Dyadic>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + "}";
}

}  // namespace

int slope_near(const PLHomeo& g, const Rational& r, bool from_left) {
  const auto& pts = g.breakpoints();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational a = pts[i].x.to_rational();
    const Rational b = pts[i + 1].x.to_rational();
    if (from_left ? (a < r && r <= b) : (a <= r && r < b)) return g.slopes()[i];
  }
  throw Error(ErrorCode::OutOfDomain, "no segment at " + rational_to_string(r));
}

SupportReport support(const PLHomeo& g) {
  const auto& pts = g.breakpoints();
  const auto& slopes = g.slopes();
  std::vector<FixedComponent> fixed;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Dyadic d0 = pts[i].y - pts[i].x;
    const Dyadic d1 = pts[i + 1].y - pts[i + 1].x;
    const int s = slopes[i];
    const Rational x0 = pts[i].x.to_rational();
    if (d0.is_zero()) {
      if (s == 0) {
        // Whole segment on the diagonal.
        const int next = i + 1 < slopes.size() ? slopes[i + 1] : 0;
        add_component(fixed, {x0, pts[i + 1].x.to_rational(), next});
        continue;
      }
      add_component(fixed, {x0, x0, s});
    }
    if (s != 0 && d0.sign() * d1.sign() < 0) {
      // g(x) = y0 + 2^s (x - x0) meets the diagonal inside the segment.
      const Rational factor = pow2(s).to_rational();
      const Rational cross = (pts[i].y.to_rational() - factor * x0) / (Rational(1) - factor);
      add_component(fixed, {cross, cross, s});
    }
  }
  add_component(fixed, {Rational(1), Rational(1), 0});

  SupportReport report;
  for (std::size_t k = 0; k + 1 < fixed.size(); ++k) {
    if (fixed[k].hi < fixed[k + 1].lo) {
      report.moved_intervals.push_back({fixed[k].hi, fixed[k + 1].lo, fixed[k].right_slope > 0});
    }
  }
  for (const auto& m : report.moved_intervals) {
    for (const Rational* end : {&m.lo, &m.hi}) {
      if (!is_dyadic(*end)) continue;
      Dyadic p = dyadic_from_rational(*end);
      if (report.dividing_points.empty() || report.dividing_points.back() != p) report.dividing_points.push_back(p);
    }
  }
  return report;
}

std::string SupportReport::to_string() const {
  std::ostringstream os;
  os << "moved:";
  if (moved_intervals.empty()) os << " none";
  for (const auto& m : moved_intervals) {
    os << " (" << rational_to_string(m.lo) << "," << rational_to_string(m.hi) << ")" << (m.moves_up ? "+" : "-");
  }
  os << "\ndividing_points: " << join_dyadics(dividing_points);
  return os.str();
}

PLHomeo restrict_to(const PLHomeo& g, const DyadicInterval& iv) {
  if (g(iv.lo()) != iv.lo() || g(iv.hi()) != iv.hi()) {
    throw Error(ErrorCode::NonDyadicCut, "element does not fix the cut points of " + iv.to_string());
  }
  std::vector<Breakpoint> pts;
  pts.push_back({Dyadic(0), Dyadic(0)});
  pts.push_back({iv.lo(), iv.lo()});
  for (const auto& p : g.breakpoints()) {
    if (iv.lo() < p.x && p.x < iv.hi()) pts.push_back(p);
  }
  pts.push_back({iv.hi(), iv.hi()});
  pts.push_back({Dyadic(1), Dyadic(1)});
  return PLHomeo::make(std::move(pts));
}

Defragmentation defragment(const PLHomeo& g) {
  Defragmentation out;
  const SupportReport rep = support(g);
  out.cuts.push_back(Dyadic(0));
  for (const auto& p : rep.dividing_points) {
    if (p != out.cuts.back()) out.cuts.push_back(p);
  }
  if (out.cuts.back() != Dyadic(1)) out.cuts.push_back(Dyadic(1));
  for (std::size_t i = 0; i + 1 < out.cuts.size(); ++i) {
    DyadicInterval iv(out.cuts[i], out.cuts[i + 1]);
    PLHomeo piece = restrict_to(g, iv);
    if (!piece.is_identity()) out.fragments.push_back({std::move(iv), std::move(piece)});
  }
  return out;
}

std::string Defragmentation::to_string() const {
  std::ostringstream os;
  os << "fragments: " << fragments.size();
  for (const auto& f : fragments) os << "\n  " << f.interval.to_string() << " " << f.piece.to_string();
  return os.str();
}

bool commutes(const PLHomeo& g, const PLHomeo& h) { return g * h == h * g; }

namespace {

// [p,q] as consecutive standard dyadic intervals, largest-first from the left.
std::vector<Dyadic> standard_cuts(const Dyadic& p, const Dyadic& q) {
  std::vector<Dyadic> cuts{p};
  Dyadic pos = p;
  while (pos < q) {
    long long k = pos.is_zero() ? 0 : -pos.valuation();
    while (pos + pow2(-k) > q) ++k;
    pos = pos + pow2(-k);
    cuts.push_back(pos);
  }
  return cuts;
}

void split_to(std::vector<Dyadic>& cuts, std::size_t pieces) {
  while (cuts.size() - 1 < pieces) {
    // Halve the first widest piece.
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] - cuts[i] > cuts[best + 1] - cuts[best]) best = i;
    cuts.insert(cuts.begin() + static_cast<std::ptrdiff_t>(best) + 1, (cuts[best] + cuts[best + 1]).halved());
  }
}

}  // namespace

PLHomeo transfer(const DyadicInterval& from, const DyadicInterval& to) {
  if ((from.lo().is_zero() != to.lo().is_zero()) || ((from.hi() == Dyadic(1)) != (to.hi() == Dyadic(1)))) {
    throw Error(ErrorCode::InvalidArgument, "an element of F fixes 0 and 1");
  }
  const std::pair<Dyadic, Dyadic> legs[] = {
      {Dyadic(0), Dyadic(0)}, {from.lo(), to.lo()}, {from.hi(), to.hi()}, {Dyadic(1), Dyadic(1)}};
  std::vector<Breakpoint> pts;
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    if (legs[i].first == legs[i + 1].first) continue;
    auto xs = standard_cuts(legs[i].first, legs[i + 1].first);
    auto ys = standard_cuts(legs[i].second, legs[i + 1].second);
    const std::size_t n = std::max(xs.size(), ys.size()) - 1;
    split_to(xs, n);
    split_to(ys, n);
    for (std::size_t j = 0; j < xs.size(); ++j) pts.push_back({xs[j], ys[j]});
  }
  return PLHomeo::make(std::move(pts));
}

PLHomeo chart_element(const PLHomeo& e, const DyadicInterval& iv) {
  const bool left = iv.lo().is_zero();
  const bool right = iv.hi() == Dyadic(1);
  const Dyadic quarter(1, 2);
  const Dyadic half(1, 1);
  const DyadicInterval target = left && right ? DyadicInterval::unit()
                                : left        ? DyadicInterval(Dyadic(0), half)
                                : right       ? DyadicInterval(half, Dyadic(1))
                                              : DyadicInterval(quarter, half);
  if (iv.length() == target.length()) return embed(e, iv);
  const PLHomeo psi = transfer(iv, target);
  return psi.inverse() * embed(e, target) * psi;
}

std::uint32_t root_power_bound(const PLHomeo& g) {
  const SupportReport rep = support(g);
  long long bound = 0;
  for (const auto& m : rep.moved_intervals) {
    bound = std::gcd(bound, static_cast<long long>(std::abs(slope_near(g, m.lo, false))));
    bound = std::gcd(bound, static_cast<long long>(std::abs(slope_near(g, m.hi, true))));
  }
  return static_cast<std::uint32_t>(bound);
}

RootResult max_root(const PLHomeo& g, std::uint32_t leaf_bound) {
  if (g.is_identity()) throw Error(ErrorCode::IdentityInput, "the identity has roots of every order");
  const SupportReport rep = support(g);
  const DyadicInterval hull(dyadic_from_rational(rep.moved_intervals.front().lo),
                            dyadic_from_rational(rep.moved_intervals.back().hi));
  RootResult best{g, 1, root_power_bound(g), false};
  best.certified = best.power == best.power_bound;
  if (best.certified) return best;

  const int target_slope = g.slope_right_of(hull.lo());
  for_each_element(leaf_bound, [&](const PLHomeo& e) {
    if (e.is_identity()) return true;
    PLHomeo r = chart_element(e, hull);
    const int s = r.slope_right_of(hull.lo());
    if (s == 0 || target_slope % s != 0) return true;
    const int k = target_slope / s;
    if (k <= static_cast<int>(best.power) || best.power_bound % static_cast<std::uint32_t>(k) != 0) return true;
    if (r.pow(k) != g) return true;
    best.root = std::move(r);
    best.power = static_cast<std::uint32_t>(k);
    best.certified = best.power == best.power_bound;
    return !best.certified;
  });
  return best;
}

CentralizerDecomposition centralizer(const PLHomeo& g, std::uint32_t leaf_bound) {
  if (g.is_identity()) throw Error(ErrorCode::IdentityInput, "the centralizer of the identity is all of F");
  CentralizerDecomposition out;
  out.defragmentation = defragment(g);
  const auto& cuts = out.defragmentation.cuts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    DyadicInterval iv(cuts[i], cuts[i + 1]);
    if (restrict_to(g, iv).is_identity()) out.thompson_factors.push_back(std::move(iv));
  }
  const auto& frags = out.defragmentation.fragments;
  for (std::size_t i = 0; i < frags.size(); ++i) {
    RootResult r = max_root(frags[i].piece, leaf_bound);
    if (!r.certified) out.partial = true;
    out.cyclic_factors.push_back({std::move(r.root), i, r.certified});
  }
  return out;
}

std::string CentralizerDecomposition::to_string() const {
  std::ostringstream os;
  os << "cyclic_factors: " << cyclic_factors.size();
  for (const auto& c : cyclic_factors) {
    os << "\n  <" << c.generator.to_string() << "> on "
       << defragmentation.fragments[c.fragment].interval.to_string() << (c.certified ? "" : " (root not certified)");
  }
  os << "\nthompson_factors: " << thompson_factors.size();
  for (const auto& iv : thompson_factors) os << "\n  F" << iv.to_string();
  os << "\npartial: " << (partial ? "yes" : "no");
  return os.str();
}

PLHomeo conjugate(const PLHomeo& x, const PLHomeo& g, ConjDirection dir, long long k) {
  const PLHomeo gk = g.pow(k);
  if (dir == ConjDirection::ConjByG) return gk.inverse() * x * gk;
  return gk * x * gk.inverse();
}

namespace {

bool shift_holds(const PLHomeo& g, ConjDirection dir, std::uint32_t m, std::uint32_t t) {
  return conjugate(generator(m), g, dir, 1) == generator(m + t);
}

bool window_holds(const PLHomeo& g, ConjDirection dir, std::uint32_t from, std::uint32_t t, std::uint32_t width) {
  for (std::uint32_t m = from + 1; m <= from + width; ++m)
    if (!shift_holds(g, dir, m, t)) return false;
  return true;
}

}  // namespace

ConjShift conj_shift(const PLHomeo& g) {
  constexpr std::uint32_t kWindow = 10;
  constexpr std::uint32_t kMaxRaise = 64;
  const NormalWord nf = plf_to_word(g);
  ConjShift out;
  out.exponent_sum = nf.exponent_sum();
  out.shift = static_cast<std::uint32_t>(std::llabs(out.exponent_sum));
  const ConjDirection preferred = out.exponent_sum >= 0 ? ConjDirection::ConjByG : ConjDirection::ConjByGInverse;
  const ConjDirection other =
      preferred == ConjDirection::ConjByG ? ConjDirection::ConjByGInverse : ConjDirection::ConjByG;

  std::uint32_t start = nf.degree() + std::max<std::uint32_t>(out.shift, 1);
  bool found = false;
  for (std::uint32_t raise = 0; raise <= kMaxRaise && !found; ++raise) {
    for (ConjDirection dir : {preferred, other}) {
      if (window_holds(g, dir, start + raise, out.shift, kWindow)) {
        out.direction = dir;
        start += raise;
        found = true;
        break;
      }
    }
  }
  if (!found) throw Error(ErrorCode::InvalidArgument, "no certified conjugation shift within the search cap");
  std::uint32_t threshold = start;
  while (threshold > 0 && shift_holds(g, out.direction, threshold, out.shift)) --threshold;
  out.threshold = threshold;
  return out;
}

std::string ConjShift::to_string() const {
  std::ostringstream os;
  os << "t: " << shift << "\nM: " << threshold << "\ndirection: "
     << (direction == ConjDirection::ConjByG ? "g^-1 x_m g = x_{m+t}" : "g x_m g^-1 = x_{m+t}")
     << "\nexponent_sum: " << exponent_sum;
  return os.str();
}

}  // namespace thompson
