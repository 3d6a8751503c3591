// SPDX-License-Identifier: Apache-2.0

#include "thompson/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "thompson/error.hpp"
#include "word_parser.hpp"

namespace thompson {

GenWord::GenWord(std::initializer_list<GenLetter> letters) {
  for (const auto& l : letters) append(l);
}

long long GenWord::length() const {
  long long n = 0;
  for (const auto& l : letters_) n += std::llabs(l.exponent);
  return n;
}

long long GenWord::exponent_sum() const {
  long long n = 0;
  for (const auto& l : letters_) n += l.exponent;
  return n;
}

void GenWord::append(GenLetter l) {
  if (l.exponent == 0) return;
  if (!letters_.empty() && letters_.back().index == l.index) {
    letters_.back().exponent += l.exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

GenWord GenWord::inverse() const {
  GenWord out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.append({it->index, -it->exponent});
  return out;
}

GenWord GenWord::pow(long long k) const {
  GenWord base = k < 0 ? inverse() : *this;
  GenWord out;
  for (long long i = 0; i < std::llabs(k); ++i) out = out * base;
  return out;
}

GenWord operator*(const GenWord& a, const GenWord& b) {
  GenWord out = a;
  for (const auto& l : b.letters_) out.append(l);
  return out;
}

std::string GenWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(l.index);
    if (l.exponent != 1) out += '^' + std::to_string(l.exponent);
  }
  return out;
}

GenWord commutator(const GenWord& u, const GenWord& v) { return u * v * u.inverse() * v.inverse(); }

bool satisfies_normal_form_conditions(const std::vector<GenLetter>& positive,
                                      const std::vector<GenLetter>& negative) {
  std::map<std::uint32_t, std::pair<long long, long long>> ab;  // index -> (a, b)
  for (std::size_t i = 0; i < positive.size(); ++i) {
    if (positive[i].exponent <= 0) return false;
    if (i && positive[i].index <= positive[i - 1].index) return false;
    ab[positive[i].index].second = positive[i].exponent;
  }
  for (std::size_t i = 0; i < negative.size(); ++i) {
    if (negative[i].exponent <= 0) return false;
    if (i && negative[i].index >= negative[i - 1].index) return false;
    ab[negative[i].index].first = negative[i].exponent;
  }
  if (ab.empty()) return true;
  const std::uint32_t n = ab.rbegin()->first;
  auto [an, bn] = ab.rbegin()->second;
  if ((an > 0) == (bn > 0)) return false;
  for (const auto& [k, v] : ab) {
    if (k == n || v.first == 0 || v.second == 0) continue;
    auto next = ab.find(k + 1);
    if (next == ab.end() || (next->second.first == 0 && next->second.second == 0)) return false;
  }
  return true;
}

NormalWord::NormalWord(std::vector<GenLetter> positive, std::vector<GenLetter> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  if (!satisfies_normal_form_conditions(positive_, negative_)) {
    throw Error(ErrorCode::InvalidArgument, "exponents violate the normal-form conditions");
  }
}

std::uint32_t NormalWord::degree() const {
  std::uint32_t n = 0;
  if (!positive_.empty()) n = std::max(n, positive_.back().index);
  if (!negative_.empty()) n = std::max(n, negative_.front().index);
  return n;
}

long long NormalWord::exponent_sum() const {
  long long s = 0;
  for (const auto& l : positive_) s += l.exponent;
  for (const auto& l : negative_) s -= l.exponent;
  return s;
}

GenWord NormalWord::to_word() const {
  GenWord w;
  for (const auto& l : positive_) w.append(l);
  for (const auto& l : negative_) w.append({l.index, -l.exponent});
  return w;
}

std::string NormalWord::to_string() const { return to_word().to_string(); }

GenWord parse_word(std::string_view text) {
  auto atom = [](detail::Lexer& lex) -> std::optional<GenWord> {
    char c = lex.peek();
    if (c == 'x') {
      lex.advance(1);
      auto index = lex.unsigned_here();
      if (index > 1000000) throw SyntaxError(lex.offset(), "generator index too large");
      return GenWord{{static_cast<std::uint32_t>(index), 1}};
    }
    if (c == '1') {
      lex.advance(1);
      if (lex.digit_next()) throw SyntaxError(lex.offset(), "unexpected digit");
      return GenWord{};
    }
    return std::nullopt;
  };
  return detail::parse_with<GenWord>(text, atom);
}

namespace {

// Semi-normal form P * N: P is a nondecreasing list of positive letters,
// N a nonincreasing list of negative letters (left to right).
struct SemiNormal {
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;

  void push_positive(std::uint32_t idx) {
    // Slide x_idx leftwards through N.
    for (std::size_t k = neg.size(); k-- > 0;) {
      const std::uint32_t c = neg[k];
      if (c == idx) {
        neg.erase(neg.begin() + static_cast<std::ptrdiff_t>(k));
        return;
      }
      if (c < idx) {
        ++idx;  // x_c^-1 x_idx = x_{idx+1} x_c^-1
      } else {
        neg[k] = c + 1;  // x_c^-1 x_idx = x_idx x_{c+1}^-1
      }
    }
    // x_j x_idx = x_idx x_{j+1} for every j > idx at the tail of P.
    auto it = std::upper_bound(pos.begin(), pos.end(), idx);
    for (auto jt = it; jt != pos.end(); ++jt) ++*jt;
    pos.insert(it, idx);
  }

  void push_negative(std::uint32_t idx) {
    // x_c^-1 x_idx^-1 = x_{idx+1}^-1 x_c^-1 for c < idx.
    std::size_t k = neg.size();
    while (k > 0 && neg[k - 1] < idx) {
      --k;
      ++idx;
    }
    neg.insert(neg.begin() + static_cast<std::ptrdiff_t>(k), idx);
  }

  // Removes x_k ... x_k^-1 pairs that have no x_{k+1} on either side:
  // x_k u x_k^-1 = u with every index shifted down by one.
  void reduce() {
    for (;;) {
      std::map<std::uint32_t, int> in_pos;
      std::map<std::uint32_t, int> in_neg;
      for (auto i : pos) ++in_pos[i];
      for (auto i : neg) ++in_neg[i];
      std::optional<std::uint32_t> target;
      for (auto it = in_pos.rbegin(); it != in_pos.rend(); ++it) {
        const std::uint32_t k = it->first;
        if (in_neg.count(k) && !in_pos.count(k + 1) && !in_neg.count(k + 1)) {
          target = k;
          break;
        }
      }
      if (!target) return;
      const std::uint32_t k = *target;
      pos.erase(std::find(pos.begin(), pos.end(), k));
      neg.erase(std::find(neg.begin(), neg.end(), k));
      for (auto& i : pos)
        if (i > k) --i;
      for (auto& i : neg)
        if (i > k) --i;
    }
  }
};

std::vector<GenLetter> run_lengths(const std::vector<std::uint32_t>& idx) {
  std::vector<GenLetter> out;
  for (auto i : idx) {
    if (!out.empty() && out.back().index == i) {
      ++out.back().exponent;
    } else {
      out.push_back({i, 1});
    }
  }
  return out;
}

}  // namespace

NormalWord normalize(const GenWord& w) {
  SemiNormal sn;
  for (const auto& l : w.letters()) {
    for (long long e = 0; e < std::llabs(l.exponent); ++e) {
      if (l.exponent > 0) {
        sn.push_positive(l.index);
      } else {
        sn.push_negative(l.index);
      }
    }
  }
  sn.reduce();
  return NormalWord(run_lengths(sn.pos), run_lengths(sn.neg));
}

PLHomeo word_to_plf(const GenWord& w) {
  PLHomeo out;
  for (const auto& l : w.letters()) out = out * generator(l.index).pow(l.exponent);
  return out;
}

bool is_identity(const GenWord& w) { return word_to_plf(w).is_identity(); }

PLHomeo parse_element(std::string_view text) {
  if (text.find("->") != std::string_view::npos) return parse_plf(text);
  return word_to_plf(parse_word(text));
}

}  // namespace thompson
