// SPDX-License-Identifier: Apache-2.0

#include "thompson/plf.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "thompson/error.hpp"

namespace thompson {

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ < Dyadic(0) || hi_ > Dyadic(1) || !(lo_ < hi_)) {
    throw Error(ErrorCode::BadIntervals, "interval [" + lo_.to_string() + "," + hi_.to_string() +
                                             "] is not a subinterval of [0,1] with lo < hi");
  }
}

std::string DyadicInterval::to_string() const {
  return "[" + lo_.to_string() + "," + hi_.to_string() + "]";
}

PLHomeo::PLHomeo() : points_{{Dyadic(0), Dyadic(0)}, {Dyadic(1), Dyadic(1)}}, slopes_{0} {}

PLBuilder::PLBuilder() {
  out_.points_.assign(1, Breakpoint{Dyadic(0), Dyadic(0)});
  out_.slopes_.clear();
}

void PLBuilder::reserve(std::size_t n) {
  out_.points_.reserve(n);
  out_.slopes_.reserve(n);
}

void PLBuilder::push(Breakpoint p, int slope) {
  if (!out_.slopes_.empty() && out_.slopes_.back() == slope) {
    out_.points_.back() = std::move(p);
    return;
  }
  out_.points_.push_back(std::move(p));
  out_.slopes_.push_back(slope);
}

PLHomeo PLBuilder::finish() && { return std::move(out_); }

PLHomeo PLHomeo::make(std::vector<Breakpoint> points) {
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 2 || points.front() != Breakpoint{Dyadic(0), Dyadic(0)} ||
      points.back() != Breakpoint{Dyadic(1), Dyadic(1)}) {
    throw Error(ErrorCode::BadEndpoints, "breakpoints must start at 0->0 and end at 1->1");
  }
  PLBuilder builder;
  builder.reserve(points.size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Dyadic dx = points[i].x - points[i - 1].x;
    const Dyadic dy = points[i].y - points[i - 1].y;
    if (dx.sign() <= 0 || dy.sign() <= 0) {
      throw Error(ErrorCode::NotMonotone, "breakpoints must be strictly increasing in both coordinates (at " +
                                              points[i].x.to_string() + "->" + points[i].y.to_string() + ")");
    }
    if (dx.odd_part() != dy.odd_part()) {
      throw Error(ErrorCode::SlopeNotPowerOfTwo, "slope between " + points[i - 1].x.to_string() + " and " +
                                                     points[i].x.to_string() + " is not a power of two");
    }
    builder.push(points[i], static_cast<int>(dy.valuation() - dx.valuation()));
  }
  return std::move(builder).finish();
}

std::size_t PLHomeo::segment_index(const Dyadic& t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](const Dyadic& v, const Breakpoint& p) { return v < p.x; });
  auto idx = static_cast<std::size_t>(it - points_.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, slopes_.size() - 1);
}

Dyadic PLHomeo::operator()(const Dyadic& t) const {
  if (t < Dyadic(0) || t > Dyadic(1)) throw Error(ErrorCode::OutOfDomain, t.to_string() + " is outside [0,1]");
  const std::size_t i = segment_index(t);
  const Breakpoint& p = points_[i];
  return p.y + (t - p.x).scaled(slopes_[i]);
}

Dyadic PLHomeo::preimage(const Dyadic& y) const {
  if (y < Dyadic(0) || y > Dyadic(1)) throw Error(ErrorCode::OutOfDomain, y.to_string() + " is outside [0,1]");
  auto it = std::upper_bound(points_.begin(), points_.end(), y,
                             [](const Dyadic& v, const Breakpoint& p) { return v < p.y; });
  auto idx = static_cast<std::size_t>(it - points_.begin());
  std::size_t i = idx == 0 ? 0 : std::min(idx - 1, slopes_.size() - 1);
  const Breakpoint& p = points_[i];
  return p.x + (y - p.y).scaled(-slopes_[i]);
}

int PLHomeo::slope_right_of(const Dyadic& t) const {
  if (t < Dyadic(0) || t >= Dyadic(1)) throw Error(ErrorCode::OutOfDomain, "no right slope at " + t.to_string());
  return slopes_[segment_index(t)];
}

int PLHomeo::slope_left_of(const Dyadic& t) const {
  if (t <= Dyadic(0) || t > Dyadic(1)) throw Error(ErrorCode::OutOfDomain, "no left slope at " + t.to_string());
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Breakpoint& p, const Dyadic& v) { return p.x < v; });
  auto idx = static_cast<std::size_t>(it - points_.begin());
  return slopes_[idx - 1];
}

PLHomeo PLHomeo::inverse() const {
  PLHomeo out;
  out.points_.clear();
  out.points_.reserve(points_.size());
  for (const auto& p : points_) out.points_.push_back({p.y, p.x});
  out.slopes_.resize(slopes_.size());
  std::transform(slopes_.begin(), slopes_.end(), out.slopes_.begin(), [](int s) { return -s; });
  return out;
}

PLHomeo PLHomeo::pow(long long k) const {
  if (k < 0) return inverse().pow(-k);
  PLHomeo result;
  PLHomeo base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

PLHomeo operator*(const PLHomeo& f, const PLHomeo& g) {
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  // Merge g's breakpoints (pushed forward) with f's breakpoints (pulled back).
  PLBuilder builder;
  builder.reserve(f.points_.size() + g.points_.size());
  std::size_t i = 1;
  std::size_t j = 1;
  const std::size_t last_i = g.points_.size() - 1;
  const std::size_t last_j = f.points_.size() - 1;
  for (;;) {
    const Breakpoint& gp = g.points_[i];
    const Breakpoint& fp = f.points_[j];
    const int slope = g.slopes_[i - 1] + f.slopes_[j - 1];
    auto c = gp.y <=> fp.x;
    if (c == 0) {
      builder.push({gp.x, fp.y}, slope);
      if (i == last_i && j == last_j) break;
      ++i;
      ++j;
    } else if (c < 0) {
      const Breakpoint& fq = f.points_[j - 1];
      builder.push({gp.x, fq.y + (gp.y - fq.x).scaled(f.slopes_[j - 1])}, slope);
      ++i;
    } else {
      const Breakpoint& gq = g.points_[i - 1];
      builder.push({gq.x + (fp.x - gq.y).scaled(-g.slopes_[i - 1]), fp.y}, slope);
      ++j;
    }
  }
  return std::move(builder).finish();
}

std::size_t PLHomeo::hash() const noexcept {
  std::size_t h = points_.size();
  for (const auto& p : points_) {
    h ^= p.x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= p.y.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string PLHomeo::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i) out += ',';
    out += points_[i].x.to_string();
    out += "->";
    out += points_[i].y.to_string();
  }
  return out;
}

PLHomeo plf_make(std::vector<Breakpoint> points) { return PLHomeo::make(std::move(points)); }
PLHomeo plf_compose(const PLHomeo& f, const PLHomeo& g) { return f * g; }
PLHomeo plf_invert(const PLHomeo& f) { return f.inverse(); }
Dyadic plf_eval(const PLHomeo& f, const Dyadic& t) { return f(t); }

PLHomeo generator(std::uint32_t n) {
  // x_n fixes [0, a], halves slope on [a, b], translates on [b, c], doubles on [c, 1].
  const Dyadic one(1);
  const Dyadic a = one - pow2(-static_cast<long long>(n));
  const Dyadic b = one - pow2(-static_cast<long long>(n) - 1);
  const Dyadic c = one - pow2(-static_cast<long long>(n) - 2);
  PLBuilder builder;
  if (n > 0) builder.push({a, a}, 0);
  builder.push({b, b.halved() + (a.halved())}, -1);
  builder.push({c, c - pow2(-static_cast<long long>(n) - 2)}, 0);
  builder.push({one, one}, 1);
  return std::move(builder).finish();
}

PLHomeo embed(const PLHomeo& f, const DyadicInterval& iv) {
  if (iv == DyadicInterval::unit()) return f;
  if (f.is_identity()) return f;
  // Affine conjugation preserves every slope, so the image always lies in F.
  const Dyadic& lo = iv.lo();
  const Dyadic scale = iv.length();
  PLBuilder builder;
  builder.reserve(f.breakpoints().size() + 2);
  if (lo.sign() > 0) builder.push({lo, lo}, 0);
  const auto& pts = f.breakpoints();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    builder.push({lo + scale * pts[i].x, lo + scale * pts[i].y}, f.slopes()[i - 1]);
  }
  if (iv.hi() < Dyadic(1)) builder.push({Dyadic(1), Dyadic(1)}, 0);
  return std::move(builder).finish();
}

PLHomeo parse_plf(std::string_view text) {
  std::vector<Breakpoint> points;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    std::size_t arrow = item.find("->");
    if (arrow == std::string_view::npos) throw SyntaxError(pos, "expected `x->y`");
    auto coord = [&](std::string_view part, std::size_t offset) {
      try {
        return Dyadic::parse(part);
      } catch (const SyntaxError& e) {
        throw SyntaxError(offset + e.offset(), "malformed coordinate `" + std::string(part) + "`");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotDyadic) throw;
        throw Error(ErrorCode::SlopeNotPowerOfTwo,
                    "coordinate " + std::string(part) + " is not dyadic, so no power-of-two slope reaches it");
      }
    };
    Dyadic x = coord(item.substr(0, arrow), pos);
    Dyadic y = coord(item.substr(arrow + 2), pos + arrow + 2);
    points.push_back({std::move(x), std::move(y)});
    pos = comma + 1;
  }
  return PLHomeo::make(std::move(points));
}

namespace {

// Fixed-point decimal rendering with 4 fractional digits, exact integer math.
std::string pixel(const Dyadic& v) {
  const BigInt scale = 10000;
  BigInt scaled = v.numerator() * scale;
  BigInt den = BigInt(1) << v.exponent();
  BigInt q = (scaled * 2 + den) / (den * 2);
  BigInt whole = q / scale;
  BigInt frac = q % scale;
  if (frac < 0) frac = -frac;
  std::string f = frac.str();
  while (f.size() < 4) f.insert(f.begin(), '0');
  return whole.str() + "." + f;
}

}  // namespace

std::string to_svg(const PLHomeo& f, int pixels) {
  const Dyadic size(pixels);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
     << "\" viewBox=\"0 0 " << pixels << ' ' << pixels << "\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << pixels << "\" height=\"" << pixels
     << "\" fill=\"white\" stroke=\"black\"/>\n";
  os << "  <line x1=\"0\" y1=\"" << pixels << "\" x2=\"" << pixels
     << "\" y2=\"0\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  os << "  <polyline fill=\"none\" stroke=\"blue\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& p : f.breakpoints()) {
    if (!first) os << ' ';
    first = false;
    os << pixel(p.x * size) << ',' << pixel(size - p.y * size);
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace thompson
