// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/plf.hpp"

namespace thompson {

/// Ordered generating tuple; entries may repeat or be the identity.
struct Marking {
  std::vector<PLHomeo> generators;

  std::size_t arity() const noexcept { return generators.size(); }
};

/// Freely reduced word over s_1..s_k. Letter +i is s_i, -i is s_i^-1.
struct AbstractWord {
  std::vector<int> letters;

  std::size_t length() const noexcept { return letters.size(); }
  AbstractWord inverse() const;
  /// `s1 s2^-1 s3`; the empty word is `1`.
  std::string to_string() const;

  /// Shorter words first, then lexicographic on letters.
  friend bool operator<(const AbstractWord& a, const AbstractWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  }
  friend bool operator==(const AbstractWord&, const AbstractWord&) = default;
};

AbstractWord parse_abstract_word(std::string_view text);

/// Image of w under s_i -> generators[i-1].
PLHomeo evaluate(const AbstractWord& w, const Marking& m);

struct RelationSet {
  std::uint32_t radius = 0;
  std::set<AbstractWord> relations;

  /// Relations of length at most r (r <= radius).
  RelationSet truncated(std::uint32_t r) const;
  std::string to_string() const;
  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

struct RelationBudget {
  /// Cap on words materialised (half-words evaluated plus relations found).
  std::uint64_t max_words = 20'000'000;
  unsigned workers = 1;
};

/// Every freely reduced non-empty word of length <= R that evaluates to the
/// identity. A word of length L is split as u v with |u| = ceil(L/2), and is
/// a relation iff eval(u) = eval(v)^-1. Throws BudgetExceeded.
RelationSet relation_set(const Marking& m, std::uint32_t radius, const RelationBudget& budget = {});

struct DistanceReport {
  /// Largest R <= R_max on which the relation sets agree.
  std::uint32_t agreement_radius = 0;
  /// Agreement reaches R_max, so only "distance <= e^-R_max" is known.
  bool saturated = false;
  std::optional<AbstractWord> witness;  // a shortest relation of one but not the other

  std::string to_string() const;
};

/// Throws ArityMismatch.
DistanceReport marked_distance(const Marking& m1, const Marking& m2, std::uint32_t r_max,
                               const RelationBudget& budget = {});

using MarkingSequence = std::function<Marking(std::uint32_t)>;

/// `const:<element>`, `xn`, or `pow:<element>`; each marks (x_0, x_1, g_n).
MarkingSequence parse_sequence(std::string_view text);

struct ProbeEntry {
  std::uint32_t n = 0;
  std::size_t relation_count = 0;
  std::optional<AbstractWord> shortest_new;  // shortest relation absent at n - 1
};

struct ProbeReport {
  std::uint32_t radius = 0;
  std::uint32_t first = 0;
  std::uint32_t last = 0;
  std::vector<ProbeEntry> entries;
  std::vector<RelationSet> sets;
  /// Least n0 such that the relation set is constant on [n0, last]; empty
  /// when only the final index qualifies.
  std::optional<std::uint32_t> stabilization;

  std::string to_string() const;
};

/// Throws ArityMismatch when the markings in the range differ in arity.
ProbeReport convergence_probe(const MarkingSequence& seq, std::uint32_t first, std::uint32_t last,
                              std::uint32_t radius, const RelationBudget& budget = {});

}  // namespace thompson
