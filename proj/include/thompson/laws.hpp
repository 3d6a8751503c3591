// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thompson/plf.hpp"

namespace thompson {

struct Variable {
  std::uint32_t index = 0;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Variable&, const Variable&) = default;
};

using ConstLetter = std::variant<Variable, PLHomeo>;

enum class ConstWordShape { Empty, Constant, HasVariable };

/// Word over variables y_i and constants from F, kept reduced in the free
/// product: adjacent constants are multiplied (identity dropped) and
/// adjacent y_i y_i^-1 cancel. Evaluation composes left to right with
/// (a * b)(t) = a(b(t)).
class ConstWord {
 public:
  ConstWord() = default;

  void push(ConstLetter l);

  const std::vector<ConstLetter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  ConstWordShape shape() const;
  /// Distinct variable indices, increasing.
  std::vector<std::uint32_t> variables() const;

  ConstWord inverse() const;
  ConstWord pow(long long k) const;
  friend ConstWord operator*(const ConstWord& a, const ConstWord& b);
  friend bool operator==(const ConstWord&, const ConstWord&) = default;

  /// `y0^-1 {x0} y0 {0->0,1/2->1/4,3/4->1/2,1->1}`
  std::string to_string() const;

 private:
  std::vector<ConstLetter> letters_;
};

ConstWord reduce_const_word(const std::vector<ConstLetter>& raw);

ConstWord var(std::uint32_t index, int exponent = 1);
ConstWord constant(const PLHomeo& h);

/// Word syntax with variables `yN`, constants `xN` and braced constants
/// holding word or breakpoint text.
ConstWord parse_const_word(std::string_view text);

using Assignment = std::map<std::uint32_t, PLHomeo>;

/// Throws UnboundVariable.
PLHomeo eval_const_word(const ConstWord& w, const Assignment& assignment);

struct LawSpec {
  std::array<DyadicInterval, 4> intervals;
  std::array<PLHomeo, 4> constants;

  /// I_i = [p_i, q_i] with q_i < p_{i+1}; h_i non-trivial and supported in I_i.
  void validate() const;

  /// h_i = embed(x_0, I_i) on the given intervals.
  static LawSpec with_standard_constants(const std::array<DyadicInterval, 4>& intervals);
  /// [0,1/8], [1/4,3/8], [1/2,5/8], [3/4,7/8].
  static LawSpec canonical();
};

/// One variable y0; w_14 = y^-1 h1^-1 y h4^-1 y^-1 h1 y h4, and w_23 likewise.
ConstWord law_word_14(const LawSpec& spec);
ConstWord law_word_23(const LawSpec& spec);

/// reduce([w_14, w_23]). Throws BadIntervals, TrivialConstant, ConstantNotSupported.
ConstWord build_law(const LawSpec& spec);

enum class LawCase {
  A,  // g(q1) < p4 and g(p4) > q1
  B,  // g(q1) >= p4
  C,  // g(p4) <= q1
};

LawCase classify_law_case(const LawSpec& spec, const PLHomeo& g);

struct LawBudget {
  std::uint32_t leaf_bound = 6;
  std::uint64_t random_count = 0;
  std::uint32_t random_size = 12;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct LawReport {
  bool holds = true;
  std::size_t variable_count = 0;
  std::uint64_t exhaustive_checked = 0;
  std::uint64_t random_checked = 0;
  /// Values of y0, y1, ... for the first failing assignment.
  std::optional<std::vector<PLHomeo>> counterexample;
  /// Filled when a LawSpec is supplied and w has one variable.
  std::array<std::uint64_t, 3> case_counts{0, 0, 0};
  std::uint64_t seed = 0;

  std::string to_string() const;
};

/// Evaluates w on every tuple from the enumeration up to the leaf bound and
/// on `random_count` seeded random tuples. A counterexample stops the search;
/// the one reported is the first in stream order.
LawReport verify_law(const ConstWord& w, const LawBudget& budget, const LawSpec* spec = nullptr);

/// d with u = h^d, or nullopt. Throws TrivialH.
std::optional<long long> cyclic_member(const PLHomeo& u, const PLHomeo& h);

struct StableLetter {
  int exponent = 1;  // +1 or -1

  friend bool operator==(const StableLetter&, const StableLetter&) = default;
};

using HNNLetter = std::variant<StableLetter, PLHomeo>;

/// Associated cyclic subgroups of t h t^-1 = h'.
struct HNNEdge {
  PLHomeo h;
  PLHomeo h_prime;

  void validate() const;  // throws BadEdge
};

class HNNWord {
 public:
  HNNWord() = default;

  void push(HNNLetter l);

  const std::vector<HNNLetter>& letters() const noexcept { return letters_; }
  std::size_t stable_count() const;
  bool empty() const noexcept { return letters_.empty(); }

  HNNWord inverse() const;
  HNNWord pow(long long k) const;
  friend HNNWord operator*(const HNNWord& a, const HNNWord& b);
  friend bool operator==(const HNNWord&, const HNNWord&) = default;

  /// `{x1 x0^-1} t^-1 {x2^-1} t`
  std::string to_string() const;

 private:
  std::vector<HNNLetter> letters_;
};

HNNWord stable(int exponent = 1);
HNNWord hnn_constant(const PLHomeo& c);

/// Tokens `t`, `xN`, braced constants, with the usual grouping syntax.
HNNWord parse_hnn_word(std::string_view text);

enum class BrittonOutcome { Irreducible, TrivialInHNN, Reduced };

struct BrittonResult {
  BrittonOutcome outcome = BrittonOutcome::Irreducible;
  HNNWord word;
  std::size_t pinches = 0;

  std::string to_string() const;
};

/// Replaces pinches t c t^-1 (c = h^d) by h'^d and t^-1 c t (c = h'^d) by h^d
/// until none remain. Irreducible when no pinch was found at all, Reduced
/// when some were removed and the result is non-empty.
BrittonResult britton_reduce(const HNNWord& w, const HNNEdge& edge);

/// Constant-only image of a stable-letter-free word.
PLHomeo hnn_constant_value(const HNNWord& w);

/// x_{[a,b],m} = embed(generator(m), [a,b]).
PLHomeo interval_generator(const DyadicInterval& iv, std::uint32_t m);

struct HNNWitness {
  std::uint32_t m = 0;
  std::uint32_t attempts = 0;
  HNNWord word;
};

/// w = x_1 x_0^-1 t^-1 x_M^-1 t x_0 x_1^-1 t^-1 x_M t over [a,b]. M starts at
/// `m_start` and is raised while x_{[a,b],M} is a power of h, at most
/// `max_attempts` times (BudgetExceeded beyond that).
HNNWitness hnn_witness(const DyadicInterval& iv, const PLHomeo& h, std::uint32_t m_start,
                       std::uint32_t max_attempts = 64);

}  // namespace thompson
