// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "centralizer_oracle.hpp"
#include "helpers.hpp"
#include "thompson/error.hpp"
#include "thompson/structure.hpp"
#include "thompson/tree_pair.hpp"

using namespace thompson;
using thompson::testing::D;
using thompson::testing::I;
using thompson::testing::in_decomposition;
using thompson::testing::P;
using thompson::testing::W;

namespace {

Rational Q(long long n, long long d) { return Rational(n, d); }

const PLHomeo& two_bumps() {
  static const PLHomeo g = embed(generator(0), I("0", "1/2")) * embed(generator(0), I("1/2", "1"));
  return g;
}

// Crosses the diagonal at 1/3 and fixes [3/4, 1].
const PLHomeo& third_crossing() {
  static const PLHomeo g = P("0->0,1/8->1/4,1/4->5/16,1/2->3/8,5/8->1/2,3/4->3/4,1->1");
  return g;
}

}  // namespace

TEST_CASE("support") {
  auto id = support(PLHomeo());
  CHECK(id.moved_intervals.empty());
  CHECK(id.dividing_points.empty());

  auto x0 = support(generator(0));
  REQUIRE(x0.moved_intervals.size() == 1);
  CHECK(x0.moved_intervals[0].lo == 0);
  CHECK(x0.moved_intervals[0].hi == 1);
  CHECK_FALSE(x0.moved_intervals[0].moves_up);
  CHECK(x0.dividing_points == std::vector<Dyadic>{D("0"), D("1")});

  auto two = support(two_bumps());
  REQUIRE(two.moved_intervals.size() == 2);
  CHECK(two.moved_intervals[0].hi == Q(1, 2));
  CHECK(two.moved_intervals[1].lo == Q(1, 2));
  CHECK(two.dividing_points == std::vector<Dyadic>{D("0"), D("1/2"), D("1")});

  auto x1 = support(generator(1));
  REQUIRE(x1.moved_intervals.size() == 1);
  CHECK(x1.moved_intervals[0].lo == Q(1, 2));
  CHECK(x1.dividing_points == std::vector<Dyadic>{D("1/2"), D("1")});
}

TEST_CASE("non-dyadic fixed points are not dividing points") {
  auto rep = support(third_crossing());
  REQUIRE(rep.moved_intervals.size() == 2);
  CHECK(rep.moved_intervals[0].hi == Q(1, 3));
  CHECK(rep.moved_intervals[0].moves_up);
  CHECK(rep.moved_intervals[1].lo == Q(1, 3));
  CHECK(rep.moved_intervals[1].hi == Q(3, 4));
  CHECK_FALSE(rep.moved_intervals[1].moves_up);
  CHECK(rep.dividing_points == std::vector<Dyadic>{D("0"), D("3/4")});
  auto dec = defragment(third_crossing());
  REQUIRE(dec.fragments.size() == 1);
  CHECK(dec.fragments[0].interval == I("0", "3/4"));
  CHECK(dec.fragments[0].piece == third_crossing());
}

TEST_CASE("defragment") {
  CHECK(defragment(PLHomeo()).fragments.empty());
  auto one = defragment(generator(0));
  REQUIRE(one.fragments.size() == 1);
  CHECK(one.fragments[0].interval == DyadicInterval::unit());
  CHECK(one.fragments[0].piece == generator(0));

  const PLHomeo a = embed(generator(0), I("0", "1/2"));
  const PLHomeo b = embed(generator(0).pow(2), I("1/2", "1"));
  auto two = defragment(a * b);
  REQUIRE(two.fragments.size() == 2);
  CHECK(two.fragments[0].interval == I("0", "1/2"));
  CHECK(two.fragments[0].piece == a);
  CHECK(two.fragments[1].interval == I("1/2", "1"));
  CHECK(two.fragments[1].piece == b);
}

TEST_CASE("defragmentation reconstructs g and fragments commute") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const PLHomeo g = random_element(10, s);
    auto dec = defragment(g);
    PLHomeo product;
    for (const auto& f : dec.fragments) {
      product = product * f.piece;
      CHECK_FALSE(f.piece.is_identity());
      CHECK(restrict_to(f.piece, f.interval) == f.piece);
    }
    CHECK(product == g);
    for (std::size_t i = 0; i < dec.fragments.size(); ++i)
      for (std::size_t j = i + 1; j < dec.fragments.size(); ++j)
        CHECK(commutes(dec.fragments[i].piece, dec.fragments[j].piece));
  }
}

TEST_CASE("restrict_to rejects cuts that are not fixed") {
  CHECK_THROWS_AS(restrict_to(generator(0), I("1/4", "1")), Error);
}

TEST_CASE("commutes") {
  CHECK(commutes(generator(0), generator(0).pow(5)));
  CHECK_FALSE(commutes(generator(0), generator(1)));
  CHECK(commutes(embed(generator(0), I("0", "1/2")), embed(generator(3), I("1/2", "1"))));
}

TEST_CASE("max_root") {
  auto r = max_root(generator(0).pow(4), 3);
  CHECK(r.root == generator(0));
  CHECK(r.power == 4);
  CHECK(r.certified);
  CHECK(r.root.pow(4) == generator(0).pow(4));

  auto one = max_root(generator(0), 1);
  CHECK(one.root == generator(0));
  CHECK(one.power == 1);
  CHECK(one.certified);

  CHECK_THROWS_AS(max_root(PLHomeo(), 4), Error);

  // The root lives on the support hull.
  const PLHomeo g = embed(generator(1).pow(-3), I("1/4", "1/2"));
  auto sub = max_root(g, 4);
  CHECK(sub.power == 3);
  CHECK(sub.root == embed(generator(1).inverse(), I("1/4", "1/2")));
}

TEST_CASE("root certificate on random powers") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const PLHomeo base = random_element(4, s);
    if (base.is_identity()) continue;
    const PLHomeo g = base.pow(static_cast<long long>(s % 3) + 1);
    auto r = max_root(g, 4);
    CHECK(r.root.pow(r.power) == g);
    CHECK(r.power_bound % r.power == 0);
    // When the base itself is a candidate the search must reach its power.
    const auto rep = support(base);
    if (rep.moved_intervals.front().lo == 0 && rep.moved_intervals.back().hi == 1) CHECK(r.power >= s % 3 + 1);
  }
}

TEST_CASE("centralizer of x_0 is cyclic") {
  auto dec = centralizer(generator(0), 6);
  REQUIRE(dec.cyclic_factors.size() == 1);
  CHECK(dec.cyclic_factors[0].generator == generator(0));
  CHECK(dec.thompson_factors.empty());
  CHECK_FALSE(dec.partial);
  for (const auto& c : enumerate_elements(6)) {
    if (commutes(c, generator(0))) CHECK(thompson::testing::brute_power(c, generator(0), 64));
  }
}

TEST_CASE("centralizer with a fixed interval") {
  const PLHomeo g = embed(generator(0), I("0", "1/2"));
  auto dec = centralizer(g, 6);
  REQUIRE(dec.cyclic_factors.size() == 1);
  CHECK(dec.cyclic_factors[0].generator == g);
  REQUIRE(dec.thompson_factors.size() == 1);
  CHECK(dec.thompson_factors[0] == I("1/2", "1"));
  std::size_t commuting = 0;
  for (const auto& c : enumerate_elements(6)) {
    if (!commutes(c, g)) continue;
    ++commuting;
    CHECK(in_decomposition(dec, c));
  }
  CHECK(commuting > 1);
  for (const auto& c : dec.cyclic_factors) CHECK(commutes(c.generator, g));
  CHECK(commutes(embed(generator(2), I("1/2", "1")), g));
}

TEST_CASE("centralizer of two bumps has two cyclic factors") {
  auto dec = centralizer(two_bumps(), 6);
  CHECK(dec.cyclic_factors.size() == 2);
  CHECK(dec.thompson_factors.empty());
  CHECK_FALSE(dec.partial);
  for (const auto& c : enumerate_elements(6))
    if (commutes(c, two_bumps())) CHECK(in_decomposition(dec, c));
  CHECK_THROWS_AS(centralizer(PLHomeo(), 6), Error);
}

TEST_CASE("conj_shift examples") {
  auto x0 = conj_shift(generator(0));
  CHECK(x0.shift == 1);
  CHECK(x0.threshold == 0);
  CHECK(x0.direction == ConjDirection::ConjByG);

  auto u = conj_shift(W("x0 x1^-1"));
  CHECK(u.shift == 0);

  auto x1 = conj_shift(generator(1));
  CHECK(x1.shift == 1);
  CHECK(x1.threshold == 1);
  for (std::uint32_t m = 2; m <= 12; ++m)
    CHECK(conjugate(generator(m), generator(1), x1.direction) == generator(m + 1));

  auto inv = conj_shift(generator(0).pow(-2));
  CHECK(inv.shift == 2);
  CHECK(inv.direction == ConjDirection::ConjByGInverse);
}

TEST_CASE("conjugation shift power version on random elements") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const PLHomeo g = random_element(6, s);
    auto cs = conj_shift(g);
    // t is the abelianization image, read off the slope at 1.
    CHECK(static_cast<long long>(cs.shift) == std::llabs(g.slope_left_of(D("1"))));
    for (long long k = 1; k <= 3; ++k)
      for (std::uint32_t m = cs.threshold + 1; m <= cs.threshold + 3; ++m)
        CHECK(conjugate(generator(m), g, cs.direction, k) ==
              generator(m + static_cast<std::uint32_t>(k) * cs.shift));
  }
}

TEST_CASE("transfer and charts") {
  const DyadicInterval from(Dyadic(0), Dyadic(3, 2));
  const DyadicInterval to(Dyadic(0), Dyadic(1, 1));
  const PLHomeo psi = transfer(from, to);
  CHECK(psi(Dyadic(3, 2)) == Dyadic(1, 1));
  CHECK_THROWS_AS(transfer(from, DyadicInterval(Dyadic(1, 2), Dyadic(1, 1))), Error);
  const DyadicInterval mid(Dyadic(1, 3), Dyadic(7, 3));
  const PLHomeo psi2 = transfer(mid, DyadicInterval(Dyadic(1, 2), Dyadic(1, 1)));
  CHECK(psi2(Dyadic(1, 3)) == Dyadic(1, 2));
  CHECK(psi2(Dyadic(7, 3)) == Dyadic(1, 1));
  // A chart element lives on its interval; charts are injective on the enumeration.
  std::set<std::string> seen;
  for (const PLHomeo& e : enumerate_elements(5)) {
    const PLHomeo c = chart_element(e, from);
    if (!e.is_identity()) {
      const auto s = support(c);
      CHECK(s.moved_intervals.front().lo >= Rational(0));
      CHECK(s.moved_intervals.back().hi <= Rational(3, 4));
    }
    CHECK(seen.insert(c.to_string()).second);
  }
}
