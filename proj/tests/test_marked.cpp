// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "thompson/error.hpp"
#include "thompson/marked.hpp"

using namespace thompson;
using thompson::testing::W;

namespace {

Marking mark(std::vector<PLHomeo> g) { return Marking{std::move(g)}; }

const Marking& standard() {
  static const Marking m = mark({generator(0), generator(1)});
  return m;
}

AbstractWord A(std::string_view s) { return parse_abstract_word(s); }

// Independent oracle: every reduced word by brute force.
std::set<AbstractWord> brute_relations(const Marking& m, std::uint32_t radius) {
  std::set<AbstractWord> out;
  std::vector<AbstractWord> frontier{AbstractWord{}};
  for (std::uint32_t l = 1; l <= radius; ++l) {
    std::vector<AbstractWord> next;
    for (const auto& w : frontier) {
      for (int i = 1; i <= static_cast<int>(m.arity()); ++i) {
        for (int letter : {i, -i}) {
          if (!w.letters.empty() && w.letters.back() == -letter) continue;
          AbstractWord x = w;
          x.letters.push_back(letter);
          if (evaluate(x, m).is_identity()) out.insert(x);
          next.push_back(std::move(x));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("abstract words") {
  auto w = A("s1 s2^-1 s3^2");
  CHECK(w.letters == std::vector<int>{1, -2, 3, 3});
  CHECK(w.to_string() == "s1 s2^-1 s3^2");
  CHECK(w.inverse().to_string() == "s3^-2 s2 s1^-1");
  CHECK(A("[s1 s2^-1, s3]").length() == 6);
  CHECK(A("s1 s1^-1").length() == 0);
  CHECK_THROWS_AS(A("s0"), SyntaxError);
}

TEST_CASE("relation_set examples") {
  CHECK(relation_set(standard(), 1).relations.empty());
  auto trivial = relation_set(mark({generator(0), generator(1), PLHomeo()}), 1);
  CHECK(trivial.relations == std::set<AbstractWord>{A("s3"), A("s3^-1")});
  auto ten = relation_set(standard(), 10);
  CHECK(ten.relations.count(A("[s1 s2^-1, s1^-1 s2 s1]")));
  CHECK(A("[s1 s2^-1, s1^-1 s2 s1]").length() == 10);
}

TEST_CASE("relation_set matches brute force") {
  const std::vector<Marking> pool = {
      standard(),
      mark({generator(0), generator(1), generator(2)}),
      mark({generator(0), generator(1), generator(1)}),
      mark({generator(0), generator(0).pow(2)}),
      mark({generator(1), W("x1 x0^-1")}),
  };
  for (const auto& m : pool) {
    const std::uint32_t r = m.arity() == 2 ? 8 : 6;
    for (unsigned workers : {1u, 3u}) {
      RelationBudget budget;
      budget.workers = workers;
      CHECK(relation_set(m, r, budget).relations == brute_relations(m, r));
    }
  }
}

TEST_CASE("relation set invariants") {
  const Marking m = mark({generator(0), generator(1), generator(2)});
  const RelationSet big = relation_set(m, 7);
  for (std::uint32_t r = 0; r <= 7; ++r) {
    const RelationSet small = relation_set(m, r);
    CHECK(small.relations == big.truncated(r).relations);
    CHECK(std::includes(big.relations.begin(), big.relations.end(), small.relations.begin(), small.relations.end()));
  }
  for (const auto& w : big.relations) {
    CHECK(big.relations.count(w.inverse()));
    CHECK(evaluate(w, m).is_identity());
    GenWord g;
    for (int l : w.letters) g.append({static_cast<std::uint32_t>(std::abs(l) - 1), l > 0 ? 1 : -1});
    CHECK(is_identity(g));
  }
  // Swapping positions 1 and 2 permutes the letters of every relation.
  const Marking swapped = mark({generator(1), generator(0), generator(2)});
  std::set<AbstractWord> mapped;
  for (const auto& w : big.relations) {
    AbstractWord x = w;
    for (int& l : x.letters) {
      const int a = std::abs(l);
      const int b = a == 1 ? 2 : a == 2 ? 1 : a;
      l = l > 0 ? b : -b;
    }
    mapped.insert(x);
  }
  CHECK(relation_set(swapped, 7).relations == mapped);
}

TEST_CASE("budget") {
  RelationBudget tiny;
  tiny.max_words = 100;
  CHECK_THROWS_AS(relation_set(standard(), 10, tiny), Error);
  try {
    relation_set(standard(), 10, tiny);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("marked_distance examples") {
  auto same = marked_distance(standard(), standard(), 6);
  CHECK(same.saturated);
  CHECK(same.agreement_radius == 6);

  auto d0 = marked_distance(mark({generator(0), generator(1), PLHomeo()}),
                            mark({generator(0), generator(1), generator(0)}), 3);
  CHECK_FALSE(d0.saturated);
  CHECK(d0.agreement_radius == 0);

  auto d1 = marked_distance(mark({generator(0), generator(1), generator(1)}),
                            mark({generator(0), generator(1), generator(2)}), 2);
  CHECK(d1.agreement_radius == 1);
  REQUIRE(d1.witness);
  CHECK(d1.witness->length() == 2);
  CHECK(d1.to_string() == "agreement_radius: 1\ndistance: e^-1\nwitness: s3^-1 s2");

  try {
    marked_distance(standard(), mark({generator(0)}), 2);
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
}

TEST_CASE("ultrametric on a small pool") {
  std::vector<Marking> pool;
  for (const PLHomeo& g : {PLHomeo(), generator(0), generator(1), generator(2), generator(3), W("x0 x1^-1")})
    pool.push_back(mark({generator(0), generator(1), g}));
  std::vector<std::vector<std::uint32_t>> r(pool.size(), std::vector<std::uint32_t>(pool.size()));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) r[i][j] = marked_distance(pool[i], pool[j], 5).agreement_radius;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j)
      for (std::size_t k = 0; k < pool.size(); ++k) CHECK(r[i][k] >= std::min(r[i][j], r[j][k]));
}

TEST_CASE("convergence probe") {
  auto constant = convergence_probe(parse_sequence("const:x1"), 1, 5, 6);
  REQUIRE(constant.stabilization);
  CHECK(*constant.stabilization == 1);

  // At n = 1 the third letter equals the first.
  auto pow = convergence_probe(parse_sequence("pow:x0"), 1, 6, 2);
  CHECK(pow.sets[0].relations.count(A("s1^-1 s3")));
  for (std::size_t i = 1; i < pow.sets.size(); ++i)
    for (const auto& w : pow.sets[i].relations)
      CHECK(std::none_of(w.letters.begin(), w.letters.end(), [](int l) { return std::abs(l) == 3; }));
  REQUIRE(pow.stabilization);
  CHECK(*pow.stabilization == 2);

  auto xn = convergence_probe(parse_sequence("xn"), 1, 8, 8);
  const AbstractWord dagger = A("[s1 s2^-1, s3]");
  CHECK_FALSE(xn.sets[0].relations.count(dagger));
  for (std::size_t i = 1; i < xn.sets.size(); ++i) CHECK(xn.sets[i].relations.count(dagger));
  // s3 = s1^-(n-1) s2 s1^(n-1) has length 2n, so the set settles once 2n > 8.
  REQUIRE(xn.stabilization);
  CHECK(*xn.stabilization == 5);
  CHECK(xn.entries[3].shortest_new->length() == 8);
  CHECK(xn.to_string().find("not a proof") != std::string::npos);

  auto moving = convergence_probe(parse_sequence("xn"), 1, 3, 8);
  CHECK_FALSE(moving.stabilization);
  CHECK(moving.to_string().find("not stabilized within range") != std::string::npos);

  CHECK_THROWS_AS(parse_sequence("bogus"), Error);
}
