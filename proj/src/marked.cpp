// SPDX-License-Identifier: Apache-2.0

#include "thompson/marked.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "thompson/error.hpp"
#include "thompson/words.hpp"
#include "word_parser.hpp"

namespace thompson {

AbstractWord AbstractWord::inverse() const {
  AbstractWord out;
  out.letters.assign(letters.rbegin(), letters.rend());
  for (auto& l : out.letters) l = -l;
  return out;
}

std::string AbstractWord::to_string() const {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size();) {
    // Runs of one letter print as a power.
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const long long run = static_cast<long long>(j - i) * (letters[i] > 0 ? 1 : -1);
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(std::abs(letters[i]));
    if (run != 1) out += '^' + std::to_string(run);
    i = j;
  }
  return out;
}

namespace {

// Parser adaptor: words are free-reduced as they are multiplied.
struct FreeWord {
  std::vector<int> letters;

  void push(int l) {
    if (!letters.empty() && letters.back() == -l) {
      letters.pop_back();
    } else {
      letters.push_back(l);
    }
  }
  FreeWord inverse() const {
    FreeWord out;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
    return out;
  }
  FreeWord pow(long long k) const {
    const FreeWord base = k < 0 ? inverse() : *this;
    FreeWord out;
    for (long long i = 0; i < std::llabs(k); ++i) out = out * base;
    return out;
  }
  friend FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    FreeWord out = a;
    for (int l : b.letters) out.push(l);
    return out;
  }
};

}  // namespace

AbstractWord parse_abstract_word(std::string_view text) {
  auto atom = [](detail::Lexer& lex) -> std::optional<FreeWord> {
    const char c = lex.peek();
    if (c == 's') {
      lex.advance(1);
      auto index = lex.unsigned_here();
      if (index == 0 || index > 1000) throw SyntaxError(lex.offset(), "letter index must be in 1..1000");
      FreeWord w;
      w.push(static_cast<int>(index));
      return w;
    }
    if (c == '1') {
      lex.advance(1);
      if (lex.digit_next()) throw SyntaxError(lex.offset(), "unexpected digit");
      return FreeWord{};
    }
    return std::nullopt;
  };
  return AbstractWord{detail::parse_with<FreeWord>(text, atom).letters};
}

PLHomeo evaluate(const AbstractWord& w, const Marking& m) {
  PLHomeo out;
  for (int l : w.letters) {
    const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    if (i >= m.arity()) throw Error(ErrorCode::ArityMismatch, "letter s" + std::to_string(i + 1) + " is out of range");
    out = out * (l > 0 ? m.generators[i] : m.generators[i].inverse());
  }
  return out;
}

RelationSet RelationSet::truncated(std::uint32_t r) const {
  RelationSet out;
  out.radius = std::min(r, radius);
  for (const auto& w : relations)
    if (w.length() <= out.radius) out.relations.insert(w);
  return out;
}

std::string RelationSet::to_string() const {
  std::ostringstream os;
  os << "radius: " << radius << "\nrelations: " << relations.size();
  for (const auto& w : relations) os << "\n  " << w.to_string();
  return os.str();
}

namespace {

struct Node {
  std::vector<int> letters;
  PLHomeo value;
};

// Runs task(i) for i in [0, n) on up to `workers` threads.
void run_tasks(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<int> alphabet(std::size_t arity) {
  std::vector<int> out;
  for (std::size_t i = 1; i <= arity; ++i) {
    out.push_back(static_cast<int>(i));
    out.push_back(-static_cast<int>(i));
  }
  return out;
}

// levels[l][f]: reduced words of length l starting with alphabet letter f.
using Levels = std::vector<std::vector<std::vector<Node>>>;

Levels half_words(const Marking& m, std::uint32_t depth, unsigned workers) {
  const std::vector<int> letters = alphabet(m.arity());
  std::vector<PLHomeo> images;
  for (int l : letters) {
    const auto& g = m.generators[static_cast<std::size_t>(std::abs(l)) - 1];
    images.push_back(l > 0 ? g : g.inverse());
  }
  Levels levels(depth + 1, std::vector<std::vector<Node>>(letters.size()));
  run_tasks(letters.size(), workers, [&](std::size_t f) {
    if (depth == 0) return;
    levels[1][f].push_back({{letters[f]}, images[f]});
    for (std::uint32_t l = 1; l < depth; ++l) {
      for (const auto& node : levels[l][f]) {
        for (std::size_t a = 0; a < letters.size(); ++a) {
          if (letters[a] == -node.letters.back()) continue;
          Node next{node.letters, node.value * images[a]};
          next.letters.push_back(letters[a]);
          levels[l + 1][f].push_back(std::move(next));
        }
      }
    }
  });
  return levels;
}

std::uint64_t reduced_word_count(std::size_t arity, std::uint32_t max_length, std::uint64_t cap) {
  const std::uint64_t k = 2 * arity;
  std::uint64_t total = 1;
  std::uint64_t level = 1;
  for (std::uint32_t l = 1; l <= max_length; ++l) {
    level = l == 1 ? k : level * (k - 1);
    total += level;
    if (total > cap || (k > 1 && level > cap)) return cap + 1;
  }
  return total;
}

}  // namespace

RelationSet relation_set(const Marking& m, std::uint32_t radius, const RelationBudget& budget) {
  if (m.arity() == 0) throw Error(ErrorCode::ArityMismatch, "a marking needs at least one generator");
  RelationSet out;
  out.radius = radius;
  if (radius == 0) return out;
  const std::uint32_t depth = (radius + 1) / 2;
  const std::uint64_t halves = reduced_word_count(m.arity(), depth, budget.max_words);
  if (halves > budget.max_words) {
    throw Error(ErrorCode::BudgetExceeded, "radius " + std::to_string(radius) + " with arity " +
                                               std::to_string(m.arity()) + " exceeds the word budget");
  }
  const Levels levels = half_words(m, depth, budget.workers);
  const std::size_t letters = 2 * m.arity();

  // Right halves of each length, indexed by their value.
  std::vector<std::unordered_map<PLHomeo, std::vector<const Node*>>> by_value(radius / 2 + 1);
  const Node empty{{}, PLHomeo()};
  by_value[0][empty.value].push_back(&empty);
  for (std::uint32_t b = 1; b <= radius / 2; ++b)
    for (const auto& bucket : levels[b])
      for (const auto& node : bucket) by_value[b][node.value].push_back(&node);

  std::atomic<std::uint64_t> used{halves};
  std::vector<std::vector<AbstractWord>> found(letters);
  run_tasks(letters, budget.workers, [&](std::size_t f) {
    for (std::uint32_t length = 1; length <= radius; ++length) {
      const std::uint32_t a = (length + 1) / 2;
      const std::uint32_t b = length - a;
      for (const auto& u : levels[a][f]) {
        auto it = by_value[b].find(u.value.inverse());
        if (it == by_value[b].end()) continue;
        for (const Node* v : it->second) {
          if (!v->letters.empty() && v->letters.front() == -u.letters.back()) continue;
          if (++used > budget.max_words) throw Error(ErrorCode::BudgetExceeded, "too many relations for the budget");
          AbstractWord w{u.letters};
          w.letters.insert(w.letters.end(), v->letters.begin(), v->letters.end());
          found[f].push_back(std::move(w));
        }
      }
    }
  });
  for (auto& bucket : found)
    for (auto& w : bucket) out.relations.insert(std::move(w));
  return out;
}

std::string DistanceReport::to_string() const {
  std::ostringstream os;
  os << "agreement_radius: " << agreement_radius << "\n";
  if (saturated) {
    os << "distance: <= e^-" << agreement_radius;
  } else {
    os << "distance: e^-" << agreement_radius;
  }
  if (witness) os << "\nwitness: " << witness->to_string();
  return os.str();
}

namespace {

DistanceReport compare(const RelationSet& a, const RelationSet& b, std::uint32_t r_max) {
  DistanceReport out;
  std::optional<AbstractWord> first;
  for (const auto* side : {&a, &b}) {
    const auto& other = side == &a ? b : a;
    for (const auto& w : side->relations) {
      if (other.relations.count(w)) continue;
      if (!first || w < *first) first = w;
      break;  // sets are ordered, so the first miss is the shortest
    }
  }
  if (!first) {
    out.agreement_radius = r_max;
    out.saturated = true;
    return out;
  }
  out.agreement_radius = static_cast<std::uint32_t>(first->length()) - 1;
  out.witness = first;
  return out;
}

}  // namespace

DistanceReport marked_distance(const Marking& m1, const Marking& m2, std::uint32_t r_max,
                               const RelationBudget& budget) {
  if (m1.arity() != m2.arity()) {
    throw Error(ErrorCode::ArityMismatch, "markings have arities " + std::to_string(m1.arity()) + " and " +
                                              std::to_string(m2.arity()));
  }
  return compare(relation_set(m1, r_max, budget), relation_set(m2, r_max, budget), r_max);
}

MarkingSequence parse_sequence(std::string_view text) {
  auto mark = [](PLHomeo g) { return Marking{{generator(0), generator(1), std::move(g)}}; };
  if (text == "xn") return [mark](std::uint32_t n) { return mark(generator(n)); };
  if (text.rfind("const:", 0) == 0) {
    const PLHomeo g = parse_element(text.substr(6));
    return [mark, g](std::uint32_t) { return mark(g); };
  }
  if (text.rfind("pow:", 0) == 0) {
    const PLHomeo g = parse_element(text.substr(4));
    return [mark, g](std::uint32_t n) { return mark(g.pow(n)); };
  }
  throw Error(ErrorCode::InvalidArgument, "sequence must be const:<element>, xn or pow:<element>");
}

std::string ProbeReport::to_string() const {
  std::ostringstream os;
  os << "# convergence probe: finite witness only, not a proof of convergence\n";
  os << "radius: " << radius << "\nrange: " << first << ".." << last << "\n";
  for (const auto& e : entries) {
    os << "n=" << e.n << " relations=" << e.relation_count;
    if (e.shortest_new) os << " shortest_new=" << e.shortest_new->to_string();
    os << "\n";
  }
  os << "stabilization: ";
  if (stabilization) {
    os << *stabilization;
  } else {
    os << "not stabilized within range";
  }
  return os.str();
}

ProbeReport convergence_probe(const MarkingSequence& seq, std::uint32_t first, std::uint32_t last,
                              std::uint32_t radius, const RelationBudget& budget) {
  if (first > last) throw Error(ErrorCode::InvalidArgument, "empty range");
  ProbeReport report;
  report.radius = radius;
  report.first = first;
  report.last = last;
  std::size_t arity = 0;
  for (std::uint32_t n = first; n <= last; ++n) {
    const Marking m = seq(n);
    if (n == first) arity = m.arity();
    if (m.arity() != arity) throw Error(ErrorCode::ArityMismatch, "markings in the sequence differ in arity");
    report.sets.push_back(relation_set(m, radius, budget));
    ProbeEntry entry{n, report.sets.back().relations.size(), std::nullopt};
    if (n > first) {
      const auto& prev = report.sets[report.sets.size() - 2].relations;
      for (const auto& w : report.sets.back().relations) {
        if (!prev.count(w)) {
          entry.shortest_new = w;
          break;
        }
      }
    }
    report.entries.push_back(std::move(entry));
  }
  std::size_t i = report.sets.size() - 1;
  while (i > 0 && report.sets[i - 1] == report.sets.back()) --i;
  if (i + 1 < report.sets.size()) report.stabilization = first + static_cast<std::uint32_t>(i);
  return report;
}

}  // namespace thompson
