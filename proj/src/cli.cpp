// SPDX-License-Identifier: Apache-2.0

#include "thompson/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "thompson/error.hpp"
#include "thompson/laws.hpp"
#include "thompson/marked.hpp"
#include "thompson/structure.hpp"
#include "thompson/tree_pair.hpp"
#include "thompson/words.hpp"

namespace thompson::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t budget = 20'000'000;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_breakpoint_text(const std::string& s) { return s.find("->") != std::string::npos; }

std::string word_of(const PLHomeo& g) {
  const std::string w = plf_to_word(g).to_string();
  return w.empty() ? "1" : w;
}

// Elements separated by `;`, e.g. "x0; x1; 1".
Marking parse_marking(const std::string& text) {
  Marking m;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) m.generators.push_back(parse_element(part));
  return m;
}

std::vector<Dyadic> parse_dyadic_list(const std::string& text) {
  std::vector<Dyadic> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(Dyadic::parse(part));
  return out;
}

DyadicInterval parse_interval(const std::string& text) {
  const auto v = parse_dyadic_list(text);
  if (v.size() != 2) throw Usage("an interval is `lo,hi`");
  return {v[0], v[1]};
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Usage("a range is `a..b`");
  try {
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, dots))),
            static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw Usage("a range is `a..b` with non-negative integers");
  }
}

LawSpec law_spec(const std::string& intervals, const std::vector<std::string>& constants) {
  LawSpec spec = LawSpec::canonical();
  if (!intervals.empty()) {
    const auto p = parse_dyadic_list(intervals);
    if (p.size() != 8) throw Usage("--intervals takes eight dyadics p1,q1,...,p4,q4");
    std::array<DyadicInterval, 4> iv;
    for (std::size_t i = 0; i < 4; ++i) iv[i] = DyadicInterval(p[2 * i], p[2 * i + 1]);
    spec = LawSpec::with_standard_constants(iv);
  }
  if (!constants.empty()) {
    if (constants.size() != 4) throw Usage("--constants takes four elements");
    for (std::size_t i = 0; i < 4; ++i) spec.constants[i] = parse_element(constants[i]);
  }
  return spec;
}

const char* outcome_name(BrittonOutcome o) {
  switch (o) {
    case BrittonOutcome::Irreducible: return "Irreducible";
    case BrittonOutcome::TrivialInHNN: return "TrivialInHNN";
    case BrittonOutcome::Reduced: return "Reduced";
  }
  return "";
}

// Subcommand registration. Each handler runs after a successful parse.
class Builder {
 public:
  Builder(CLI::App& app, const Globals& g, std::ostream& out) : app_(app), g_(g), out_(out) {}

  std::function<void()>& handler() { return handler_; }

  CLI::App* add(const std::string& name, const std::string& help) {
    CLI::App* sub = app_.add_subcommand(name, help);
    return sub;
  }

  template <class F>
  void on(CLI::App* sub, F f) {
    sub->callback([this, f] { handler_ = f; });
  }

  void install();

 private:
  CLI::App& app_;
  const Globals& g_;
  std::ostream& out_;
  std::function<void()> handler_;
  // Option storage lives as long as the builder.
  std::vector<std::shared_ptr<void>> store_;

  template <class T>
  T& slot(T init = T{}) {
    auto p = std::make_shared<T>(std::move(init));
    store_.push_back(p);
    return *p;
  }
};

void Builder::install() {
  std::ostream& out = out_;
  const Globals& g = g_;

  {
    auto* c = add("normalize", "Normal form of a word (rewriting) or of breakpoint text (tree pair)");
    auto& in = slot<std::string>();
    c->add_option("element", in, "word or breakpoint text")->required();
    on(c, [&] {
      if (is_breakpoint_text(in)) {
        out << word_of(parse_plf(in)) << "\n";
      } else {
        const std::string s = normalize(parse_word(in)).to_string();
        out << (s.empty() ? "1" : s) << "\n";
      }
    });
  }
  {
    auto* c = add("eval", "Evaluate an element at a dyadic point");
    auto& in = slot<std::string>();
    auto& at = slot<std::string>();
    c->add_option("element", in)->required();
    c->add_option("--at", at, "dyadic point in [0,1]")->required();
    on(c, [&] { out << parse_element(in)(Dyadic::parse(at)).to_string() << "\n"; });
  }
  {
    auto* c = add("compose", "Product f1 * f2 * ... where (f * g)(t) = f(g(t))");
    auto& in = slot<std::vector<std::string>>();
    c->add_option("elements", in)->required();
    on(c, [&] {
      PLHomeo p;
      for (const auto& s : in) p = p * parse_element(s);
      out << p.to_string() << "\n";
    });
  }
  {
    auto* c = add("invert", "Inverse element");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << parse_element(in).inverse().to_string() << "\n"; });
  }
  {
    auto* c = add("to-plf", "Breakpoint text of an element");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << parse_element(in).to_string() << "\n"; });
  }
  {
    auto* c = add("to-word", "Normal form through the reduced tree pair");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << word_of(parse_element(in)) << "\n"; });
  }
  {
    auto* c = add("tree-pair", "Reduced tree pair of an element");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] {
      const TreePair tp = TreePair::from_plf(parse_element(in));
      out << tp.to_string() << "\nleaves: " << tp.leaf_count() << "\n";
    });
  }
  {
    auto* c = add("is-identity", "Word problem: exit status 0 and `yes` or `no`");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << (parse_element(in).is_identity() ? "yes" : "no") << "\n"; });
  }
  {
    auto* c = add("generator", "Breakpoint text of x_n");
    auto& n = slot<std::uint32_t>();
    c->add_option("n", n)->required();
    on(c, [&] { out << generator(n).to_string() << "\n"; });
  }
  {
    auto* c = add("embed", "Affine copy of an element on a dyadic interval");
    auto& in = slot<std::string>();
    auto& iv = slot<std::string>();
    c->add_option("element", in)->required();
    c->add_option("--interval", iv, "lo,hi")->required();
    on(c, [&] { out << embed(parse_element(in), parse_interval(iv)).to_string() << "\n"; });
  }
  {
    auto* c = add("plot", "SVG graph of an element");
    auto& in = slot<std::string>();
    auto& file = slot<std::string>();
    auto& pixels = slot<int>(400);
    c->add_option("element", in)->required();
    c->add_option("--out", file, "output file (default: standard output)");
    c->add_option("--pixels", pixels, "image size")->check(CLI::Range(16, 8192));
    on(c, [&] {
      const std::string svg = to_svg(parse_element(in), pixels);
      if (file.empty()) {
        out << svg;
        return;
      }
      std::ofstream f(file);
      if (!f) throw Usage("cannot open " + file);
      f << svg;
      out << "wrote " << file << "\n";
    });
  }
  {
    auto* c = add("enumerate", "Elements with reduced tree pairs of at most N leaves");
    auto& n = slot<std::uint32_t>(4);
    auto& list = slot<bool>(false);
    c->add_option("--leaves", n)->check(CLI::Range(1, 12));
    c->add_flag("--list", list, "print every element");
    on(c, [&] {
      std::uint64_t count = 0;
      for_each_element(n, [&](const PLHomeo& e) {
        ++count;
        if (list) out << word_of(e) << "\n";
        return true;
      });
      out << "count: " << count << "\n";
    });
  }
  {
    auto* c = add("random", "Seeded random element (uses --seed)");
    auto& size = slot<std::uint32_t>(12);
    c->add_option("--size", size, "maximum leaf count")->check(CLI::Range(1, 64));
    on(c, [&] {
      const PLHomeo e = random_element(size, g.seed);
      out << "seed: " << g.seed << "\n" << e.to_string() << "\n" << word_of(e) << "\n";
    });
  }
  {
    auto* c = add("support", "Moved intervals and dividing points");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << support(parse_element(in)).to_string() << "\n"; });
  }
  {
    auto* c = add("defrag", "Factorization into disjointly supported fragments");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << defragment(parse_element(in)).to_string() << "\n"; });
  }
  {
    auto* c = add("commutes", "Whether two elements commute");
    auto& a = slot<std::string>();
    auto& b = slot<std::string>();
    c->add_option("f", a)->required();
    c->add_option("g", b)->required();
    on(c, [&] { out << (commutes(parse_element(a), parse_element(b)) ? "yes" : "no") << "\n"; });
  }
  {
    auto* c = add("root", "Largest root found within the enumeration bound");
    auto& in = slot<std::string>();
    auto& bound = slot<std::uint32_t>(6);
    c->add_option("element", in)->required();
    c->add_option("--leaf-bound", bound)->check(CLI::Range(1, 12));
    on(c, [&] {
      const RootResult r = max_root(parse_element(in), bound);
      out << "root: " << word_of(r.root) << "\npower: " << r.power << "\npower_bound: " << r.power_bound
          << "\ncertified: " << (r.certified ? "yes" : "no (Unknown beyond the search bound)") << "\n";
    });
  }
  {
    auto* c = add("centralizer", "Centralizer decomposition");
    auto& in = slot<std::string>();
    auto& bound = slot<std::uint32_t>(6);
    c->add_option("element", in)->required();
    c->add_option("--leaf-bound", bound)->check(CLI::Range(1, 12));
    on(c, [&] { out << centralizer(parse_element(in), bound).to_string() << "\n"; });
  }
  {
    auto* c = add("conj-shift", "Threshold M, shift t and direction of conjugation on x_m");
    auto& in = slot<std::string>();
    c->add_option("element", in)->required();
    on(c, [&] { out << conj_shift(parse_element(in)).to_string() << "\n"; });
  }
  {
    auto* c = add("reduce-const", "Free-product reduction of a word with constants");
    auto& in = slot<std::string>();
    c->add_option("word", in, "e.g. \"y0^-1 {x0} y0 {x1^-1}\"")->required();
    on(c, [&] {
      const ConstWord w = parse_const_word(in);
      static const char* shapes[] = {"empty", "constant", "has variable"};
      out << w.to_string() << "\nlength: " << w.length() << "\nshape: " << shapes[static_cast<int>(w.shape())]
          << "\n";
    });
  }
  {
    auto* c = add("eval-const", "Evaluate a word with constants");
    auto& in = slot<std::string>();
    auto& assign = slot<std::vector<std::string>>();
    c->add_option("word", in)->required();
    c->add_option("--assign", assign, "yN=element, repeatable");
    on(c, [&] {
      Assignment a;
      for (const auto& s : assign) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || s.size() < 2 || s[0] != 'y') throw Usage("--assign takes yN=element");
        std::uint32_t idx = 0;
        try {
          idx = static_cast<std::uint32_t>(std::stoul(s.substr(1, eq - 1)));
        } catch (const std::exception&) {
          throw Usage("--assign takes yN=element");
        }
        a[idx] = parse_element(s.substr(eq + 1));
      }
      const PLHomeo v = eval_const_word(parse_const_word(in), a);
      out << v.to_string() << "\n" << word_of(v) << "\n";
    });
  }
  {
    auto* c = add("build-law", "The four-interval law with constants");
    auto& iv = slot<std::string>();
    auto& consts = slot<std::vector<std::string>>();
    c->add_option("--intervals", iv, "p1,q1,p2,q2,p3,q3,p4,q4 (default 0,1/8,1/4,3/8,1/2,5/8,3/4,7/8)");
    c->add_option("--constants", consts, "h1 h2 h3 h4 (default: x_0 embedded in each interval)")->expected(4);
    on(c, [&] {
      const ConstWord w = build_law(law_spec(iv, consts));
      out << w.to_string() << "\nlength: " << w.length() << "\n";
    });
  }
  {
    auto* c = add("verify-law", "Check a law on an enumeration plus seeded random elements");
    auto& word = slot<std::string>();
    auto& iv = slot<std::string>();
    auto& consts = slot<std::vector<std::string>>();
    auto& exhaustive = slot<std::uint32_t>(6);
    auto& random = slot<std::uint64_t>(0);
    auto& size = slot<std::uint32_t>(12);
    c->add_option("--word", word, "word with constants (default: the four-interval law)");
    c->add_option("--intervals", iv, "p1,q1,...,p4,q4");
    c->add_option("--constants", consts, "h1 h2 h3 h4")->expected(4);
    c->add_option("--exhaustive", exhaustive, "leaf bound of the exhaustive pass")->check(CLI::Range(1, 12));
    c->add_option("--random", random, "number of random samples");
    c->add_option("--size", size, "leaf bound of random samples")->check(CLI::Range(1, 64));
    on(c, [&] {
      LawBudget budget{exhaustive, random, size, g.seed, g.workers};
      if (word.empty()) {
        const LawSpec spec = law_spec(iv, consts);
        out << verify_law(build_law(spec), budget, &spec).to_string() << "\n";
      } else if (!iv.empty() || !consts.empty()) {
        const LawSpec spec = law_spec(iv, consts);
        out << verify_law(parse_const_word(word), budget, &spec).to_string() << "\n";
      } else {
        out << verify_law(parse_const_word(word), budget).to_string() << "\n";
      }
    });
  }
  {
    auto* c = add("cyclic-member", "d with u = h^d, if any");
    auto& u = slot<std::string>();
    auto& h = slot<std::string>();
    c->add_option("u", u)->required();
    c->add_option("base", h, "element h")->required();
    on(c, [&] {
      const auto d = cyclic_member(parse_element(u), parse_element(h));
      if (d) {
        out << "member: " << *d << "\n";
      } else {
        out << "NotMember\n";
      }
    });
  }
  {
    auto* c = add("britton", "Britton reduction for one stable letter t with t h t^-1 = h'");
    auto& in = slot<std::string>();
    auto& h = slot<std::string>();
    auto& hp = slot<std::string>();
    c->add_option("word", in, "e.g. \"t^-1 {x1^2} t\"")->required();
    c->add_option("--edge-h", h, "element h")->required();
    c->add_option("--edge-h-prime", hp, "element h' (default: h)");
    on(c, [&] {
      const PLHomeo hh = parse_element(h);
      const HNNEdge edge{hh, hp.empty() ? hh : parse_element(hp)};
      out << britton_reduce(parse_hnn_word(in), edge).to_string() << "\n";
    });
  }
  {
    auto* c = add("witness", "HNN witness word over [a,b] and its Britton classification");
    auto& iv = slot<std::string>("0,1/2");
    auto& h = slot<std::string>();
    auto& start = slot<std::uint32_t>(2);
    auto& attempts = slot<std::uint32_t>(64);
    c->add_option("--interval", iv, "a,b");
    c->add_option("--edge-h", h, "element h = h'")->required();
    c->add_option("--m-start", start, "first M to try");
    c->add_option("--max-attempts", attempts, "cap on raising M");
    on(c, [&] {
      const DyadicInterval ab = parse_interval(iv);
      const PLHomeo hh = parse_element(h);
      const HNNWitness w = hnn_witness(ab, hh, start, attempts);
      const BrittonResult r = britton_reduce(w.word, HNNEdge{hh, hh});
      out << "M: " << w.m << "\nattempts: " << w.attempts << "\nword: " << w.word.to_string()
          << "\noutcome: " << outcome_name(r.outcome) << "\n";
    });
  }
  {
    auto* c = add("relations", "Relation set of a marking up to a radius");
    auto& m = slot<std::string>();
    auto& radius = slot<std::uint32_t>(4);
    c->add_option("marking", m, "elements separated by `;`")->required();
    c->add_option("--radius", radius)->required();
    on(c, [&] {
      out << relation_set(parse_marking(m), radius, RelationBudget{g.budget, g.workers}).to_string() << "\n";
    });
  }
  {
    auto* c = add("distance", "Agreement radius of two markings");
    auto& a = slot<std::string>();
    auto& b = slot<std::string>();
    auto& rmax = slot<std::uint32_t>(4);
    c->add_option("m1", a, "elements separated by `;`")->required();
    c->add_option("m2", b)->required();
    c->add_option("--rmax", rmax)->required();
    on(c, [&] {
      out << marked_distance(parse_marking(a), parse_marking(b), rmax, RelationBudget{g.budget, g.workers})
                 .to_string()
          << "\n";
    });
  }
  {
    auto* c = add("probe", "Relation sets along a sequence of markings (x_0, x_1, g_n)");
    auto& seq = slot<std::string>();
    auto& range = slot<std::string>();
    auto& radius = slot<std::uint32_t>(4);
    c->add_option("--seq", seq, "const:<element>, xn, or pow:<element>")->required();
    c->add_option("--range", range, "a..b")->required();
    c->add_option("--radius", radius)->required();
    on(c, [&] {
      const auto [lo, hi] = parse_range(range);
      out << convergence_probe(parse_sequence(seq), lo, hi, radius, RelationBudget{g.budget, g.workers}).to_string()
          << "\n";
    });
  }
}

}  // namespace

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table = {
      {"normalize", {"parse_word", "normalize", "plf_to_word"}},
      {"eval", {"plf_eval"}},
      {"compose", {"plf_compose"}},
      {"invert", {"plf_invert"}},
      {"to-plf", {"word_to_plf", "parse_plf"}},
      {"to-word", {"plf_to_word"}},
      {"tree-pair", {"tree_pair"}},
      {"is-identity", {"is_identity"}},
      {"generator", {"generator"}},
      {"embed", {"embed"}},
      {"plot", {"to_svg"}},
      {"enumerate", {"enumerate_elements"}},
      {"random", {"random_element"}},
      {"support", {"support"}},
      {"defrag", {"defragment"}},
      {"commutes", {"commutes"}},
      {"root", {"max_root"}},
      {"centralizer", {"centralizer"}},
      {"conj-shift", {"conj_shift"}},
      {"reduce-const", {"reduce_const_word"}},
      {"eval-const", {"eval_const_word"}},
      {"build-law", {"build_law"}},
      {"verify-law", {"verify_law"}},
      {"cyclic-member", {"cyclic_member"}},
      {"britton", {"britton_reduce"}},
      {"witness", {"hnn_witness", "britton_reduce"}},
      {"relations", {"relation_set"}},
      {"distance", {"marked_distance"}},
      {"probe", {"convergence_probe"}},
  };
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Exact computations in Thompson's group F", "thompson");
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "seed for random sampling (printed in reports)");
  app.add_option("--workers", globals.workers, "worker threads for enumerations")->check(CLI::Range(1, 256));
  app.add_option("--budget", globals.budget, "cap on words materialised by relation enumeration");

  Builder builder(app, globals, out);
  builder.install();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run `thompson --help` for the command list\n";
    return 2;
  }

  try {
    if (builder.handler()) builder.handler()();
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace thompson::cli
