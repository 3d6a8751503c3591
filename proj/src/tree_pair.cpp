// SPDX-License-Identifier: Apache-2.0

#include "thompson/tree_pair.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <utility>

#include "thompson/error.hpp"

namespace thompson {

namespace {

// p is a multiple of 2^-k
bool aligned(const Dyadic& p, long long k) { return p.is_zero() || p.valuation() >= -k; }

void render(const std::vector<std::uint32_t>& depths, std::size_t& i, std::uint32_t depth, std::string& out) {
  if (depths[i] == depth) {
    out += '*';
    ++i;
    return;
  }
  out += '(';
  render(depths, i, depth + 1, out);
  out += ' ';
  render(depths, i, depth + 1, out);
  out += ')';
}

}  // namespace

BinaryTree::BinaryTree(std::vector<std::uint32_t> leaf_depths) : depths_(std::move(leaf_depths)) {
  if (depths_.empty()) throw Error(ErrorCode::InvalidArgument, "a tree has at least one leaf");
  Dyadic pos(0);
  for (auto d : depths_) {
    if (!aligned(pos, d)) throw Error(ErrorCode::InvalidArgument, "leaf depths do not describe a binary tree");
    pos += pow2(-static_cast<long long>(d));
  }
  if (pos != Dyadic(1)) throw Error(ErrorCode::InvalidArgument, "leaf intervals do not cover [0,1]");
}

std::vector<Dyadic> BinaryTree::leaf_boundaries() const {
  std::vector<Dyadic> out;
  out.reserve(depths_.size() + 1);
  Dyadic pos(0);
  out.push_back(pos);
  for (auto d : depths_) {
    pos += pow2(-static_cast<long long>(d));
    out.push_back(pos);
  }
  return out;
}

std::vector<bool> BinaryTree::carets() const {
  std::vector<bool> flags(depths_.size() > 0 ? depths_.size() - 1 : 0, false);
  auto starts = leaf_boundaries();
  for (std::size_t i = 0; i + 1 < depths_.size(); ++i) {
    const auto d = depths_[i];
    flags[i] = d > 0 && d == depths_[i + 1] && aligned(starts[i], static_cast<long long>(d) - 1);
  }
  return flags;
}

std::vector<long long> BinaryTree::leaf_exponents() const {
  std::vector<long long> out(depths_.size(), 0);
  auto starts = leaf_boundaries();
  const Dyadic one(1);
  for (std::size_t i = 0; i < depths_.size(); ++i) {
    const Dyadic& p = starts[i];
    long long d = depths_[i];
    long long count = 0;
    // Climb while the node is a left child whose parent is off the right spine.
    while (d > 0 && aligned(p, d - 1) && p + pow2(-(d - 1)) != one) {
      ++count;
      --d;
    }
    out[i] = count;
  }
  return out;
}

std::string BinaryTree::to_string() const {
  std::string out;
  std::size_t i = 0;
  render(depths_, i, 0, out);
  return out;
}

TreePair::TreePair(BinaryTree domain, BinaryTree range) : domain_(std::move(domain)), range_(std::move(range)) {
  if (domain_.leaf_count() != range_.leaf_count()) {
    throw Error(ErrorCode::InvalidArgument, "tree pair needs equal leaf counts");
  }
}

namespace {

struct GreedySplitter {
  const PLHomeo& f;
  std::vector<std::uint32_t> dom;
  std::vector<std::uint32_t> ran;

  void split(const Dyadic& start, std::uint32_t depth) {
    const Dyadic end = start + pow2(-static_cast<long long>(depth));
    const auto& pts = f.breakpoints();
    auto it = std::upper_bound(pts.begin(), pts.end(), start,
                               [](const Dyadic& v, const Breakpoint& p) { return v < p.x; });
    const bool linear = it == pts.end() || !(it->x < end);
    if (linear) {
      const int s = f.slope_right_of(start);
      const Dyadic image = f(start);
      const long long image_depth = static_cast<long long>(depth) - s;
      if (image_depth >= 0 && aligned(image, image_depth)) {
        dom.push_back(depth);
        ran.push_back(static_cast<std::uint32_t>(image_depth));
        return;
      }
    }
    split(start, depth + 1);
    split(start + pow2(-static_cast<long long>(depth) - 1), depth + 1);
  }
};

}  // namespace

TreePair TreePair::from_plf(const PLHomeo& f) {
  // Top-down greedy: a standard interval becomes a leaf as soon as f is affine
  // on it with a standard image. Such a pair has no common caret.
  GreedySplitter splitter{f, {}, {}};
  splitter.split(Dyadic(0), 0);
  return TreePair(BinaryTree(std::move(splitter.dom)), BinaryTree(std::move(splitter.ran)));
}

bool TreePair::is_reduced() const {
  auto a = domain_.carets();
  auto b = range_.carets();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

TreePair TreePair::reduced() const {
  std::vector<std::uint32_t> dom = domain_.depths();
  std::vector<std::uint32_t> ran = range_.depths();
  for (;;) {
    auto a = BinaryTree(dom).carets();
    auto b = BinaryTree(ran).carets();
    std::size_t hit = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && b[i]) {
        hit = i;
        break;
      }
    }
    if (hit == a.size()) break;
    dom.erase(dom.begin() + static_cast<std::ptrdiff_t>(hit));
    --dom[hit];
    ran.erase(ran.begin() + static_cast<std::ptrdiff_t>(hit));
    --ran[hit];
  }
  return TreePair(BinaryTree(std::move(dom)), BinaryTree(std::move(ran)));
}

namespace {

PLHomeo pair_to_plf(const std::vector<Dyadic>& dom_bounds, const std::vector<std::uint32_t>& dom_depths,
                    const std::vector<Dyadic>& ran_bounds, const std::vector<std::uint32_t>& ran_depths) {
  PLBuilder builder;
  builder.reserve(dom_depths.size() + 1);
  for (std::size_t i = 0; i < dom_depths.size(); ++i) {
    const int slope = static_cast<int>(dom_depths[i]) - static_cast<int>(ran_depths[i]);
    builder.push({dom_bounds[i + 1], ran_bounds[i + 1]}, slope);
  }
  return std::move(builder).finish();
}

}  // namespace

PLHomeo TreePair::to_plf() const {
  return pair_to_plf(domain_.leaf_boundaries(), domain_.depths(), range_.leaf_boundaries(), range_.depths());
}

NormalWord TreePair::normal_form() const {
  const TreePair r = is_reduced() ? *this : reduced();
  const auto b = r.range_.leaf_exponents();
  const auto a = r.domain_.leaf_exponents();
  std::vector<GenLetter> positive;
  std::vector<GenLetter> negative;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] > 0) positive.push_back({static_cast<std::uint32_t>(i), b[i]});
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] > 0) negative.push_back({static_cast<std::uint32_t>(i), a[i]});
  return NormalWord(std::move(positive), std::move(negative));
}

std::string TreePair::to_string() const { return domain_.to_string() + " -> " + range_.to_string(); }

NormalWord plf_to_word(const PLHomeo& f) { return TreePair::from_plf(f).normal_form(); }

namespace {

struct TreeRecord {
  std::vector<std::uint32_t> depths;
  std::uint64_t carets = 0;  // bit i: leaves i, i+1 are siblings
};

// Trees with n leaves as depth lists, built from (left, right) subtree splits.
const std::vector<TreeRecord>& tree_records(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<TreeRecord>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto build = [&](auto&& self, std::uint32_t leaves) -> const std::vector<TreeRecord>& {
    auto it = cache.find(leaves);
    if (it != cache.end()) return it->second;
    std::vector<TreeRecord> out;
    if (leaves == 1) {
      out.push_back({{0}, 0});
    } else {
      for (std::uint32_t k = 1; k < leaves; ++k) {
        const auto left = self(self, k);
        const auto right = self(self, leaves - k);
        for (const auto& l : left) {
          for (const auto& r : right) {
            TreeRecord t;
            t.depths.reserve(leaves);
            for (auto d : l.depths) t.depths.push_back(d + 1);
            for (auto d : r.depths) t.depths.push_back(d + 1);
            t.carets = l.carets | (r.carets << k);
            if (leaves == 2) t.carets |= 1;
            out.push_back(std::move(t));
          }
        }
      }
    }
    return cache.emplace(leaves, std::move(out)).first->second;
  };
  return build(build, n);
}

}  // namespace

std::vector<BinaryTree> all_trees(std::uint32_t leaves) {
  if (leaves == 0) return {};
  std::vector<BinaryTree> out;
  for (const auto& t : tree_records(leaves)) out.emplace_back(t.depths);
  return out;
}

void for_each_element(std::uint32_t max_leaves, const std::function<bool(const PLHomeo&)>& visit) {
  if (max_leaves > 64) throw Error(ErrorCode::InvalidArgument, "enumeration supports at most 64 leaves");
  for (std::uint32_t n = 1; n <= max_leaves; ++n) {
    const auto& trees = tree_records(n);
    std::vector<std::vector<Dyadic>> bounds;
    bounds.reserve(trees.size());
    for (const auto& t : trees) bounds.push_back(BinaryTree(t.depths).leaf_boundaries());
    for (std::size_t a = 0; a < trees.size(); ++a) {
      for (std::size_t b = 0; b < trees.size(); ++b) {
        if (trees[a].carets & trees[b].carets) continue;
        if (!visit(pair_to_plf(bounds[a], trees[a].depths, bounds[b], trees[b].depths))) return;
      }
    }
  }
}

std::vector<PLHomeo> enumerate_elements(std::uint32_t max_leaves) {
  std::vector<PLHomeo> out;
  for_each_element(max_leaves, [&](const PLHomeo& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

namespace {

void random_depths(std::mt19937_64& rng, std::uint32_t leaves, std::uint32_t depth, std::vector<std::uint32_t>& out) {
  if (leaves == 1) {
    out.push_back(depth);
    return;
  }
  std::uniform_int_distribution<std::uint32_t> split(1, leaves - 1);
  const std::uint32_t k = split(rng);
  random_depths(rng, k, depth + 1, out);
  random_depths(rng, leaves - k, depth + 1, out);
}

}  // namespace

TreePair random_tree_pair(std::uint32_t size, std::uint64_t seed) {
  if (size == 0) throw Error(ErrorCode::InvalidArgument, "size must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> count((size + 1) / 2, size);
  const std::uint32_t n = count(rng);
  std::vector<std::uint32_t> dom;
  std::vector<std::uint32_t> ran;
  random_depths(rng, n, 0, dom);
  random_depths(rng, n, 0, ran);
  return TreePair(BinaryTree(std::move(dom)), BinaryTree(std::move(ran))).reduced();
}

PLHomeo random_element(std::uint32_t size, std::uint64_t seed) { return random_tree_pair(size, seed).to_plf(); }

}  // namespace thompson
