// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "thompson/plf.hpp"
#include "thompson/words.hpp"

namespace thompson {

/// Finite rooted binary tree, stored as the depths of its leaves from left to
/// right. Leaf i is the standard dyadic interval of length 2^-depth[i]
/// starting where leaf i-1 ends.
class BinaryTree {
 public:
  BinaryTree() : depths_{0} {}
  explicit BinaryTree(std::vector<std::uint32_t> leaf_depths);  // throws InvalidArgument

  const std::vector<std::uint32_t>& depths() const noexcept { return depths_; }
  std::size_t leaf_count() const noexcept { return depths_.size(); }

  /// Left endpoints of the leaf intervals, plus a final 1.
  std::vector<Dyadic> leaf_boundaries() const;
  /// flags[i] is set when leaves i and i+1 are the two children of one caret.
  std::vector<bool> carets() const;

  /// Leaf-exponent sequence: the length of the longest run of left edges
  /// upwards from each leaf that stays off the right spine.
  std::vector<long long> leaf_exponents() const;

  /// `*` is a leaf, `(L R)` a caret.
  std::string to_string() const;

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  std::vector<std::uint32_t> depths_;
};

/// Domain and range trees with equal leaf counts; leaf i of the domain maps
/// affinely onto leaf i of the range.
class TreePair {
 public:
  TreePair() = default;
  TreePair(BinaryTree domain, BinaryTree range);  // throws InvalidArgument

  /// The unique reduced pair of f.
  static TreePair from_plf(const PLHomeo& f);

  const BinaryTree& domain() const noexcept { return domain_; }
  const BinaryTree& range() const noexcept { return range_; }
  std::size_t leaf_count() const noexcept { return domain_.leaf_count(); }

  bool is_reduced() const;
  TreePair reduced() const;

  PLHomeo to_plf() const;
  NormalWord normal_form() const;

  /// `(* (* *)) -> ((* *) *)`
  std::string to_string() const;

  friend bool operator==(const TreePair&, const TreePair&) = default;

 private:
  BinaryTree domain_;
  BinaryTree range_;
};

/// Tree-pair route to the normal form.
NormalWord plf_to_word(const PLHomeo& f);

/// Every tree with `leaves` leaves, in a fixed deterministic order.
std::vector<BinaryTree> all_trees(std::uint32_t leaves);

/// Streams every element whose reduced tree pair has at most `max_leaves`
/// leaves, each exactly once: by leaf count, then domain tree, then range tree.
/// The stream stops early when `visit` returns false.
void for_each_element(std::uint32_t max_leaves, const std::function<bool(const PLHomeo&)>& visit);
std::vector<PLHomeo> enumerate_elements(std::uint32_t max_leaves);

TreePair random_tree_pair(std::uint32_t size, std::uint64_t seed);
/// Deterministic in (size, seed); the reduced pair has at most `size` leaves.
PLHomeo random_element(std::uint32_t size, std::uint64_t seed);

}  // namespace thompson
