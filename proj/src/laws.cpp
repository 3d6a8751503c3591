// SPDX-License-Identifier: Apache-2.0

#include "thompson/laws.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "thompson/error.hpp"
#include "thompson/structure.hpp"
#include "thompson/tree_pair.hpp"
#include "thompson/words.hpp"
#include "word_parser.hpp"

namespace thompson {

namespace {

// Free-product reduction shared by ConstWord and HNNWord: Sym is the free
// letter type (with exponent +-1), constants multiply.
template <class Sym>
void push_reduced(std::vector<std::variant<Sym, PLHomeo>>& out, std::variant<Sym, PLHomeo> l) {
  if (auto* c = std::get_if<PLHomeo>(&l)) {
    if (c->is_identity()) return;
    if (!out.empty()) {
      if (auto* prev = std::get_if<PLHomeo>(&out.back())) {
        PLHomeo merged = *prev * *c;
        out.pop_back();
        if (!merged.is_identity()) out.emplace_back(std::move(merged));
        return;
      }
    }
    out.push_back(std::move(l));
    return;
  }
  Sym s = std::get<Sym>(l);
  if (!out.empty()) {
    if (auto* prev = std::get_if<Sym>(&out.back())) {
      Sym inv = s;
      inv.exponent = -s.exponent;
      if (*prev == inv) {
        out.pop_back();
        return;
      }
    }
  }
  out.push_back(std::move(l));
}

std::string constant_text(const PLHomeo& c) { return "{" + plf_to_word(c).to_string() + "}"; }

std::string exponent_suffix(int e) { return e == 1 ? "" : "^" + std::to_string(e); }

// Braced constant: word text or breakpoint text, with error offsets made absolute.
PLHomeo braced_constant(detail::Lexer& lex) {
  lex.skip_space();
  const std::size_t start = lex.offset() + 1;
  std::string_view inner = lex.braced();
  try {
    return parse_element(inner);
  } catch (const SyntaxError& e) {
    throw SyntaxError(start + e.offset(), e.detail());
  }
}

std::optional<PLHomeo> generator_atom(detail::Lexer& lex) {
  const char c = lex.peek();
  if (c == 'x') {
    lex.advance(1);
    auto index = lex.unsigned_here();
    if (index > 1000000) throw SyntaxError(lex.offset(), "generator index too large");
    return generator(static_cast<std::uint32_t>(index));
  }
  if (c == '{') return braced_constant(lex);
  if (c == '1') {
    lex.advance(1);
    if (lex.digit_next()) throw SyntaxError(lex.offset(), "unexpected digit");
    return PLHomeo();
  }
  return std::nullopt;
}

}  // namespace

void ConstWord::push(ConstLetter l) { push_reduced(letters_, std::move(l)); }

ConstWordShape ConstWord::shape() const {
  if (letters_.empty()) return ConstWordShape::Empty;
  for (const auto& l : letters_)
    if (std::holds_alternative<Variable>(l)) return ConstWordShape::HasVariable;
  return ConstWordShape::Constant;
}

std::vector<std::uint32_t> ConstWord::variables() const {
  std::set<std::uint32_t> seen;
  for (const auto& l : letters_)
    if (auto* v = std::get_if<Variable>(&l)) seen.insert(v->index);
  return {seen.begin(), seen.end()};
}

ConstWord ConstWord::inverse() const {
  ConstWord out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    if (auto* v = std::get_if<Variable>(&*it)) {
      out.push(Variable{v->index, -v->exponent});
    } else {
      out.push(std::get<PLHomeo>(*it).inverse());
    }
  }
  return out;
}

ConstWord ConstWord::pow(long long k) const {
  const ConstWord base = k < 0 ? inverse() : *this;
  ConstWord out;
  for (long long i = 0; i < std::llabs(k); ++i) out = out * base;
  return out;
}

ConstWord operator*(const ConstWord& a, const ConstWord& b) {
  ConstWord out = a;
  for (const auto& l : b.letters_) out.push(l);
  return out;
}

std::string ConstWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    if (auto* v = std::get_if<Variable>(&l)) {
      out += 'y' + std::to_string(v->index) + exponent_suffix(v->exponent);
    } else {
      out += constant_text(std::get<PLHomeo>(l));
    }
  }
  return out;
}

ConstWord reduce_const_word(const std::vector<ConstLetter>& raw) {
  ConstWord out;
  for (const auto& l : raw) out.push(l);
  return out;
}

ConstWord var(std::uint32_t index, int exponent) {
  ConstWord w;
  w.push(Variable{index, exponent});
  return w;
}

ConstWord constant(const PLHomeo& h) {
  ConstWord w;
  w.push(h);
  return w;
}

ConstWord parse_const_word(std::string_view text) {
  auto atom = [](detail::Lexer& lex) -> std::optional<ConstWord> {
    if (lex.peek() == 'y') {
      lex.advance(1);
      auto index = lex.unsigned_here();
      if (index > 1000000) throw SyntaxError(lex.offset(), "variable index too large");
      return var(static_cast<std::uint32_t>(index));
    }
    if (auto c = generator_atom(lex)) return constant(*c);
    return std::nullopt;
  };
  return detail::parse_with<ConstWord>(text, atom);
}

PLHomeo eval_const_word(const ConstWord& w, const Assignment& assignment) {
  PLHomeo out;
  for (const auto& l : w.letters()) {
    if (auto* v = std::get_if<Variable>(&l)) {
      auto it = assignment.find(v->index);
      if (it == assignment.end()) {
        throw Error(ErrorCode::UnboundVariable, "no value for y" + std::to_string(v->index));
      }
      out = out * (v->exponent > 0 ? it->second : it->second.inverse());
    } else {
      out = out * std::get<PLHomeo>(l);
    }
  }
  return out;
}

void LawSpec::validate() const {
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    if (!(intervals[i].hi() < intervals[i + 1].lo())) {
      throw Error(ErrorCode::BadIntervals, "intervals must be disjoint and increasing: " + intervals[i].to_string() +
                                               " then " + intervals[i + 1].to_string());
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (constants[i].is_identity()) {
      throw Error(ErrorCode::TrivialConstant, "h" + std::to_string(i + 1) + " is the identity");
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& h = constants[i];
    const auto& iv = intervals[i];
    if (h(iv.lo()) != iv.lo() || h(iv.hi()) != iv.hi() || restrict_to(h, iv) != h) {
      throw Error(ErrorCode::ConstantNotSupported,
                  "h" + std::to_string(i + 1) + " is not supported in " + iv.to_string());
    }
  }
}

LawSpec LawSpec::with_standard_constants(const std::array<DyadicInterval, 4>& intervals) {
  LawSpec spec;
  spec.intervals = intervals;
  for (std::size_t i = 0; i < 4; ++i) spec.constants[i] = embed(generator(0), intervals[i]);
  return spec;
}

LawSpec LawSpec::canonical() {
  auto d = [](long long n) { return Dyadic(n, 3); };
  return with_standard_constants({DyadicInterval(d(0), d(1)), DyadicInterval(d(2), d(3)), DyadicInterval(d(4), d(5)),
                                  DyadicInterval(d(6), d(7))});
}

namespace {

ConstWord law_word(const PLHomeo& first, const PLHomeo& second) {
  const ConstWord y = var(0);
  const ConstWord yi = var(0, -1);
  return yi * constant(first.inverse()) * y * constant(second.inverse()) * yi * constant(first) * y *
         constant(second);
}

}  // namespace

ConstWord law_word_14(const LawSpec& spec) { return law_word(spec.constants[0], spec.constants[3]); }
ConstWord law_word_23(const LawSpec& spec) { return law_word(spec.constants[1], spec.constants[2]); }

ConstWord build_law(const LawSpec& spec) {
  spec.validate();
  const ConstWord a = law_word_14(spec);
  const ConstWord b = law_word_23(spec);
  return a * b * a.inverse() * b.inverse();
}

LawCase classify_law_case(const LawSpec& spec, const PLHomeo& g) {
  const Dyadic& q1 = spec.intervals[0].hi();
  const Dyadic& p4 = spec.intervals[3].lo();
  if (g(q1) >= p4) return LawCase::B;
  if (g(p4) <= q1) return LawCase::C;
  return LawCase::A;
}

std::string LawReport::to_string() const {
  std::ostringstream os;
  os << "law: " << (holds ? "holds on all samples" : "fails") << "\n";
  os << "variables: " << variable_count << "\n";
  os << "seed: " << seed << "\n";
  os << "exhaustive_checked: " << exhaustive_checked << "\n";
  os << "random_checked: " << random_checked << "\n";
  os << "case g(q1)<p4 and g(p4)>q1: " << case_counts[0] << "\n";
  os << "case g(q1)>=p4: " << case_counts[1] << "\n";
  os << "case g(p4)<=q1: " << case_counts[2];
  if (counterexample) {
    for (std::size_t i = 0; i < counterexample->size(); ++i)
      os << "\ncounterexample y" << i << ": " << plf_to_word((*counterexample)[i]).to_string() << "  ["
         << (*counterexample)[i].to_string() << "]";
  }
  return os.str();
}

LawReport verify_law(const ConstWord& w, const LawBudget& budget, const LawSpec* spec) {
  LawReport report;
  report.seed = budget.seed;
  const std::vector<std::uint32_t> vars = w.variables();
  report.variable_count = vars.size();
  const std::size_t k = vars.size();

  auto assign = [&](const std::vector<const PLHomeo*>& values) {
    Assignment a;
    for (std::size_t i = 0; i < k; ++i) a.emplace(vars[i], *values[i]);
    return a;
  };
  auto record_failure = [&](const std::vector<const PLHomeo*>& values) {
    report.holds = false;
    std::vector<PLHomeo> ce;
    for (auto* v : values) ce.push_back(*v);
    report.counterexample = std::move(ce);
  };
  auto count_case = [&](const PLHomeo& g) {
    if (spec && k == 1) ++report.case_counts[static_cast<std::size_t>(classify_law_case(*spec, g))];
  };

  if (k == 0) {
    report.holds = eval_const_word(w, {}).is_identity();
    if (!report.holds) report.counterexample = std::vector<PLHomeo>{};
    return report;
  }

  // Exhaustive: tuples over the enumeration in mixed-radix order.
  const std::vector<PLHomeo> pool = enumerate_elements(budget.leaf_bound);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > (std::uint64_t{1} << 40) / pool.size()) {
      throw Error(ErrorCode::BudgetExceeded, "too many exhaustive tuples for this leaf bound");
    }
    total *= pool.size();
  }
  auto tuple = [&](std::uint64_t index) {
    std::vector<const PLHomeo*> values(k);
    for (std::size_t i = k; i-- > 0;) {
      values[i] = &pool[index % pool.size()];
      index /= pool.size();
    }
    return values;
  };
  const std::uint64_t hit = detail::first_failure(total, budget.workers, [&](std::uint64_t i) {
    return !eval_const_word(w, assign(tuple(i))).is_identity();
  });
  report.exhaustive_checked = std::min(total, hit + 1);
  for (std::uint64_t i = 0; i < report.exhaustive_checked; ++i) count_case(*tuple(i)[0]);
  if (hit < total) {
    record_failure(tuple(hit));
    return report;
  }

  // Random tuples; per-sample seeds are drawn up front so workers agree.
  std::mt19937_64 rng(budget.seed);
  std::vector<PLHomeo> sample;
  sample.reserve(budget.random_count * k);
  for (std::uint64_t i = 0; i < budget.random_count * k; ++i) sample.push_back(random_element(budget.random_size, rng()));
  auto random_tuple = [&](std::uint64_t j) {
    std::vector<const PLHomeo*> values(k);
    for (std::size_t i = 0; i < k; ++i) values[i] = &sample[j * k + i];
    return values;
  };
  const std::uint64_t rhit = detail::first_failure(budget.random_count, budget.workers, [&](std::uint64_t j) {
    return !eval_const_word(w, assign(random_tuple(j))).is_identity();
  });
  report.random_checked = std::min(budget.random_count, rhit + 1);
  for (std::uint64_t j = 0; j < report.random_checked; ++j) count_case(*random_tuple(j)[0]);
  if (rhit < budget.random_count) record_failure(random_tuple(rhit));
  return report;
}

std::optional<long long> cyclic_member(const PLHomeo& u, const PLHomeo& h) {
  if (h.is_identity()) throw Error(ErrorCode::TrivialH, "h must be non-trivial");
  if (u.is_identity()) return 0;
  // h fixes a = inf supp(h), so the slope of h^d just right of a is d times
  // that of h, and it is never 1 there.
  const Rational a = support(h).moved_intervals.front().lo;
  const int s = slope_near(h, a, false);
  const int su = slope_near(u, a, false);
  if (su == 0 || su % s != 0) return std::nullopt;
  const long long d = su / s;
  if (h.pow(d) != u) return std::nullopt;
  return d;
}

void HNNEdge::validate() const {
  if (h.is_identity() || h_prime.is_identity()) {
    throw Error(ErrorCode::BadEdge, "the associated elements h and h' must be non-trivial");
  }
}

void HNNWord::push(HNNLetter l) { push_reduced(letters_, std::move(l)); }

std::size_t HNNWord::stable_count() const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [](const HNNLetter& l) { return std::holds_alternative<StableLetter>(l); }));
}

HNNWord HNNWord::inverse() const {
  HNNWord out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    if (auto* s = std::get_if<StableLetter>(&*it)) {
      out.push(StableLetter{-s->exponent});
    } else {
      out.push(std::get<PLHomeo>(*it).inverse());
    }
  }
  return out;
}

HNNWord HNNWord::pow(long long k) const {
  const HNNWord base = k < 0 ? inverse() : *this;
  HNNWord out;
  for (long long i = 0; i < std::llabs(k); ++i) out = out * base;
  return out;
}

HNNWord operator*(const HNNWord& a, const HNNWord& b) {
  HNNWord out = a;
  for (const auto& l : b.letters_) out.push(l);
  return out;
}

std::string HNNWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    if (auto* s = std::get_if<StableLetter>(&l)) {
      out += "t" + exponent_suffix(s->exponent);
    } else {
      out += constant_text(std::get<PLHomeo>(l));
    }
  }
  return out;
}

HNNWord stable(int exponent) {
  HNNWord w;
  w.push(StableLetter{exponent});
  return w;
}

HNNWord hnn_constant(const PLHomeo& c) {
  HNNWord w;
  w.push(c);
  return w;
}

HNNWord parse_hnn_word(std::string_view text) {
  auto atom = [](detail::Lexer& lex) -> std::optional<HNNWord> {
    if (lex.peek() == 't') {
      lex.advance(1);
      return stable();
    }
    if (auto c = generator_atom(lex)) return hnn_constant(*c);
    return std::nullopt;
  };
  return detail::parse_with<HNNWord>(text, atom);
}

std::string BrittonResult::to_string() const {
  std::ostringstream os;
  switch (outcome) {
    case BrittonOutcome::Irreducible: os << "Irreducible"; break;
    case BrittonOutcome::TrivialInHNN: os << "TrivialInHNN"; break;
    case BrittonOutcome::Reduced: os << "Reduced"; break;
  }
  os << "\nword: " << word.to_string() << "\npinches: " << pinches;
  return os.str();
}

BrittonResult britton_reduce(const HNNWord& w, const HNNEdge& edge) {
  edge.validate();
  BrittonResult result;
  HNNWord out;
  for (const auto& l : w.letters()) {
    out.push(l);
    const auto& top = out.letters();
    const std::size_t n = top.size();
    if (n < 3 || !std::holds_alternative<StableLetter>(top[n - 1])) continue;
    const auto* open = std::get_if<StableLetter>(&top[n - 3]);
    const auto* middle = std::get_if<PLHomeo>(&top[n - 2]);
    const int close = std::get<StableLetter>(top[n - 1]).exponent;
    if (!open || !middle || open->exponent != -close) continue;
    // t h^d t^-1 = h'^d and t^-1 h'^d t = h^d.
    const bool forward = open->exponent > 0;
    const auto d = cyclic_member(*middle, forward ? edge.h : edge.h_prime);
    if (!d) continue;
    const PLHomeo replacement = (forward ? edge.h_prime : edge.h).pow(*d);
    std::vector<HNNLetter> keep(top.begin(), top.end() - 3);
    out = HNNWord();
    for (auto& k : keep) out.push(std::move(k));
    out.push(replacement);
    ++result.pinches;
  }
  result.word = std::move(out);
  if (result.word.empty()) {
    result.outcome = BrittonOutcome::TrivialInHNN;
  } else if (result.pinches == 0) {
    result.outcome = BrittonOutcome::Irreducible;
  } else {
    result.outcome = BrittonOutcome::Reduced;
  }
  return result;
}

PLHomeo hnn_constant_value(const HNNWord& w) {
  PLHomeo out;
  for (const auto& l : w.letters()) {
    if (std::holds_alternative<StableLetter>(l)) {
      throw Error(ErrorCode::InvalidArgument, "word still contains the stable letter");
    }
    out = out * std::get<PLHomeo>(l);
  }
  return out;
}

PLHomeo interval_generator(const DyadicInterval& iv, std::uint32_t m) { return embed(generator(m), iv); }

HNNWitness hnn_witness(const DyadicInterval& iv, const PLHomeo& h, std::uint32_t m_start, std::uint32_t max_attempts) {
  const PLHomeo x0 = interval_generator(iv, 0);
  const PLHomeo x1 = interval_generator(iv, 1);
  HNNWitness out;
  for (out.m = m_start; out.attempts < max_attempts; ++out.m) {
    ++out.attempts;
    const PLHomeo xm = interval_generator(iv, out.m);
    if (cyclic_member(xm, h)) continue;
    const HNNWord t = stable();
    const HNNWord ti = stable(-1);
    out.word = hnn_constant(x1 * x0.inverse()) * ti * hnn_constant(xm.inverse()) * t *
               hnn_constant(x0 * x1.inverse()) * ti * hnn_constant(xm) * t;
    return out;
  }
  throw Error(ErrorCode::BudgetExceeded, "every tried x_M is a power of h");
}

}  // namespace thompson
