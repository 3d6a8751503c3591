// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/plf.hpp"

namespace thompson {

/// x_index^exponent
struct GenLetter {
  std::uint32_t index = 0;
  long long exponent = 1;
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};

/// Freely reduced word over x_0, x_1, x_2, ... Adjacent letters with equal
/// index are merged and zero exponents dropped on every append.
class GenWord {
 public:
  GenWord() = default;
  GenWord(std::initializer_list<GenLetter> letters);

  const std::vector<GenLetter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  /// Number of letters counted with multiplicity.
  long long length() const;
  long long exponent_sum() const;

  void append(GenLetter l);
  GenWord inverse() const;
  GenWord pow(long long k) const;
  friend GenWord operator*(const GenWord& a, const GenWord& b);
  friend bool operator==(const GenWord&, const GenWord&) = default;

  std::string to_string() const;

 private:
  std::vector<GenLetter> letters_;
};

/// u v u^-1 v^-1
GenWord commutator(const GenWord& u, const GenWord& v);

/*
 * x_0^{b_0} ... x_n^{b_n} x_n^{-a_n} ... x_0^{-a_0}.
 *
 * `positive` holds (i, b_i) with b_i > 0 in increasing index order; `negative`
 * holds (i, a_i) with a_i > 0 in decreasing index order, exponents positive.
 * The constructor rejects anything violating the two uniqueness conditions:
 * (i) exactly one of a_n, b_n is nonzero at the top index n, and (ii) if
 * a_k > 0 and b_k > 0 for k < n then a_{k+1} > 0 or b_{k+1} > 0.
 */
class NormalWord {
 public:
  NormalWord() = default;
  NormalWord(std::vector<GenLetter> positive, std::vector<GenLetter> negative);

  const std::vector<GenLetter>& positive() const noexcept { return positive_; }
  const std::vector<GenLetter>& negative() const noexcept { return negative_; }
  bool empty() const noexcept { return positive_.empty() && negative_.empty(); }

  /// Highest generator index present, 0 for the empty word.
  std::uint32_t degree() const;
  /// Σ b_i − Σ a_i: the image under the abelianization x_n ↦ 1.
  long long exponent_sum() const;

  GenWord to_word() const;
  std::string to_string() const;
  friend bool operator==(const NormalWord&, const NormalWord&) = default;

 private:
  std::vector<GenLetter> positive_;
  std::vector<GenLetter> negative_;
};

/// True when the exponent lists satisfy both normal-form conditions.
bool satisfies_normal_form_conditions(const std::vector<GenLetter>& positive,
                                      const std::vector<GenLetter>& negative);

/// Tokens `xN` with optional `^k`, groups `( ... )^k`, commutators `[u, v]`;
/// the single token `1` is the empty word.
GenWord parse_word(std::string_view text);

/// Rewriting route to the normal form; independent of the tree-pair route.
NormalWord normalize(const GenWord& w);

PLHomeo word_to_plf(const GenWord& w);
bool is_identity(const GenWord& w);

/// Breakpoint text when `text` contains `->`, word syntax otherwise.
PLHomeo parse_element(std::string_view text);

}  // namespace thompson
