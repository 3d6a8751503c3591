// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "thompson/cli.hpp"

using namespace thompson;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented examples") {
  auto n = run({"normalize", "x1 x0"});
  CHECK(n.code == 0);
  CHECK(n.out == "x0 x2\n");
  auto e = run({"eval", "x0", "--at", "1/2"});
  CHECK(e.code == 0);
  CHECK(e.out == "1/4\n");
  auto v = run({"verify-law", "--intervals", "0,1/8,1/4,3/8,1/2,5/8,3/4,7/8", "--exhaustive", "8", "--random", "1000",
                "--seed", "1"});
  CHECK(v.code == 0);
  CHECK(v.out.find("law: holds on all samples") != std::string::npos);
  CHECK(v.out.find("seed: 1") != std::string::npos);
  CHECK(v.out.find("case g(q1)>=p4: 0") == std::string::npos);
}

TEST_CASE("exit codes") {
  auto domain = run({"eval", "x0", "--at", "1/3"});
  CHECK(domain.code == 1);
  CHECK(domain.err.rfind("NotDyadic", 0) == 0);
  CHECK(run({"normalize", "x0 $"}).code == 1);
  CHECK(run({"normalize", "x0 $"}).err.rfind("SyntaxError", 0) == 0);
  CHECK(run({"root", "1"}).err.rfind("IdentityInput", 0) == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"eval", "x0"}).code == 2);
  CHECK(run({"probe", "--seq", "xn", "--range", "1-3", "--radius", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("help lists every command and the table covers every operation") {
  const std::string help = run({"--help"}).out;
  std::set<std::string> ops;
  for (const auto& c : cli::command_table()) {
    CHECK_MESSAGE(help.find(c.name) != std::string::npos, c.name);
    ops.insert(c.operations.begin(), c.operations.end());
  }
  for (const char* op : {"plf_make",     "plf_compose",   "plf_invert",    "plf_eval",          "generator",
                         "embed",        "to_svg",        "parse_word",    "normalize",         "word_to_plf",
                         "plf_to_word",  "is_identity",   "enumerate_elements", "random_element", "support",
                         "defragment",   "commutes",      "max_root",      "centralizer",       "conj_shift",
                         "reduce_const_word", "build_law", "eval_const_word", "verify_law",     "cyclic_member",
                         "britton_reduce", "relation_set", "marked_distance", "convergence_probe"}) {
    // Breakpoint input goes through plf_make.
    if (std::string(op) == "plf_make") {
      CHECK(ops.count("parse_plf"));
      continue;
    }
    CHECK_MESSAGE(ops.count(op), op);
  }
  for (const char* name : {"normalize", "eval", "compose", "invert", "to-plf", "to-word", "plot", "support", "defrag",
                           "centralizer", "conj-shift", "build-law", "verify-law", "cyclic-member", "britton",
                           "relations", "distance", "probe"}) {
    CHECK_MESSAGE(help.find(name) != std::string::npos, name);
  }
}

TEST_CASE("round trip through to-plf and to-word") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const GenWord w = thompson::testing::random_word(rng, 1 + i % 9, 4);
    const std::string text = w.letters().empty() ? "1" : w.to_string();
    auto plf = run({"to-plf", text});
    REQUIRE(plf.code == 0);
    auto word = run({"to-word", plf.out.substr(0, plf.out.size() - 1)});
    REQUIRE(word.code == 0);
    const std::string nf = normalize(w).to_string();
    CHECK(word.out == (nf.empty() ? "1" : nf) + "\n");
    CHECK(run({"normalize", text}).out == word.out);
  }
}

TEST_CASE("every subcommand runs") {
  const auto tmp = std::filesystem::temp_directory_path() / "thompson_cli_plot.svg";
  const std::vector<std::vector<std::string>> lines = {
      {"compose", "x0", "x1"},
      {"invert", "0->0,1/2->1/4,3/4->1/2,1->1"},
      {"tree-pair", "x0"},
      {"is-identity", "[x0 x1^-1, x0^-1 x1 x0]"},
      {"generator", "3"},
      {"embed", "x0", "--interval", "1/2,1"},
      {"plot", "x0 x1", "--out", tmp.string()},
      {"plot", "x0"},
      {"enumerate", "--leaves", "4"},
      {"--seed", "9", "random", "--size", "6"},
      {"support", "x1"},
      {"defrag", "x1"},
      {"commutes", "x0", "x0^3"},
      {"root", "x0^4", "--leaf-bound", "3"},
      {"centralizer", "x1", "--leaf-bound", "4"},
      {"conj-shift", "x0"},
      {"reduce-const", "y0^-1 {x0} y0 {x1^-1}"},
      {"eval-const", "y0 {x1} y0^-1", "--assign", "y0=x0"},
      {"build-law"},
      {"verify-law", "--word", "[y0, y1]", "--exhaustive", "4"},
      {"cyclic-member", "x1^3", "x1"},
      {"britton", "t^-1 {x1^2} t", "--edge-h", "x1"},
      {"witness", "--edge-h", "x0"},
      {"relations", "x0; x1; 1", "--radius", "2"},
      {"distance", "x0; x1; x1", "x0; x1; x2", "--rmax", "2"},
      {"probe", "--seq", "xn", "--range", "1..4", "--radius", "4"},
      {"--workers", "2", "relations", "x0; x1", "--radius", "6"},
  };
  for (const auto& l : lines) {
    auto r = run(l);
    CHECK_MESSAGE(r.code == 0, l[0] << " " << r.err);
    CHECK_FALSE(r.out.empty());
  }
  std::ifstream svg(tmp);
  std::string head;
  std::getline(svg, head);
  CHECK(head.find("<svg") != std::string::npos);
  std::filesystem::remove(tmp);

  CHECK(run({"compose", "x0", "x1"}).out == run({"to-plf", "x0 x1"}).out);
  CHECK(run({"is-identity", "[x0 x1^-1, x0^-1 x1 x0]"}).out == "yes\n");
  CHECK(run({"cyclic-member", "x1^3", "x1"}).out == "member: 3\n");
  CHECK(run({"cyclic-member", "x0", "x1"}).out == "NotMember\n");
  CHECK(run({"distance", "x0; x1; x1", "x0; x1; x2", "--rmax", "2"}).out.find("agreement_radius: 1") == 0);
  CHECK(run({"witness", "--edge-h", "x0"}).out.find("outcome: Irreducible") != std::string::npos);
  CHECK(run({"britton", "t^-1 {x1^2} t", "--edge-h", "x1"}).out.rfind("Reduced", 0) == 0);
  CHECK(run({"verify-law", "--word", "[y0, y1]", "--exhaustive", "4"}).out.find("law: fails") == 0);
  CHECK(run({"conj-shift", "x0"}).out.find("t: 1\nM: 0") == 0);
  CHECK(run({"--seed", "9", "random", "--size", "6"}).out == run({"random", "--size", "6", "--seed", "9"}).out);
}
