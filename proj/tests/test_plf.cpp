// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "thompson/error.hpp"
#include "thompson/tree_pair.hpp"

using namespace thompson;
using thompson::testing::D;
using thompson::testing::I;
using thompson::testing::P;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("plf_make validation") {
  CHECK(plf_make({{D("0"), D("0")}, {D("1/2"), D("1/4")}, {D("3/4"), D("1/2")}, {D("1"), D("1")}}) == generator(0));
  CHECK(plf_make({{D("0"), D("0")}, {D("1"), D("1")}}).is_identity());
  // Collinear breakpoints are removed.
  CHECK(plf_make({{D("0"), D("0")}, {D("1/2"), D("1/2")}, {D("1"), D("1")}}).breakpoints().size() == 2);
  CHECK(code_of([] { P("0->0,1/2->1/3,1->1"); }) == ErrorCode::SlopeNotPowerOfTwo);
  CHECK(code_of([] { P("0->0,1/4->3/4,1->1"); }) == ErrorCode::SlopeNotPowerOfTwo);
  CHECK(code_of([] { P("0->0,1/2->1/4,1/4->1/2,1->1"); }) == ErrorCode::NotMonotone);
  CHECK(code_of([] { P("0->1/4,1->1"); }) == ErrorCode::BadEndpoints);
  CHECK(code_of([] { P("0->0,1/2->1/2"); }) == ErrorCode::BadEndpoints);
  CHECK_THROWS_AS(P("0->0;1->1"), SyntaxError);
}

TEST_CASE("generators match the explicit formula") {
  CHECK(generator(0).to_string() == "0->0,1/2->1/4,3/4->1/2,1->1");
  CHECK(generator(1).to_string() == "0->0,1/2->1/2,3/4->5/8,7/8->3/4,1->1");
  CHECK(generator(2).to_string() == "0->0,3/4->3/4,7/8->13/16,15/16->7/8,1->1");
  CHECK(generator(0).slopes() == std::vector<int>{-1, 0, 1});
}

TEST_CASE("eval") {
  CHECK(plf_eval(generator(0), D("1/2")) == D("1/4"));
  CHECK(plf_eval(generator(1), D("1/4")) == D("1/4"));
  CHECK(plf_eval(generator(2), D("15/16")) == D("7/8"));
  CHECK(code_of([] { plf_eval(generator(0), D("3/2")); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([] { plf_eval(generator(0), D("-1/2")); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("compose and invert") {
  const PLHomeo x0 = generator(0);
  const PLHomeo x1 = generator(1);
  CHECK(plf_compose(x0, plf_invert(x0)).is_identity());
  CHECK(plf_compose(plf_invert(x0), plf_compose(x1, x0)) == generator(2));
  CHECK(plf_invert(x0).to_string() == "0->0,1/4->1/2,1/2->3/4,1->1");
  CHECK(plf_invert(PLHomeo()).is_identity());
  CHECK(plf_invert(plf_invert(x1)) == x1);
  const PLHomeo a = embed(x0, I("0", "1/2"));
  const PLHomeo b = embed(x0, I("1/2", "1"));
  CHECK(a * b == b * a);
}

TEST_CASE("composition order is forced by conjugation of x_1") {
  // With the opposite order x_0^-1 x_1 x_0 would not be x_2; pin the witness at t = 3/4.
  const PLHomeo x0 = generator(0);
  const PLHomeo x1 = generator(1);
  const PLHomeo conj = x0.inverse() * x1 * x0;
  CHECK(conj(D("3/4")) == generator(2)(D("3/4")));
  const PLHomeo reversed = x0 * x1 * x0.inverse();
  CHECK(reversed != generator(2));
}

TEST_CASE("embed") {
  CHECK(embed(generator(0), I("0", "1/2")).to_string() == "0->0,1/4->1/8,3/8->1/4,1/2->1/2,1->1");
  CHECK(embed(PLHomeo(), I("1/4", "3/8")).is_identity());
  CHECK(embed(generator(0), DyadicInterval::unit()) == generator(0));
  // Non-power-of-two length still gives an element of F.
  const PLHomeo odd = embed(generator(0), I("0", "3/4"));
  CHECK(PLHomeo::make(odd.breakpoints()) == odd);
  CHECK_THROWS_AS(I("1/2", "1/4"), Error);
  CHECK_THROWS_AS(I("0", "3/2"), Error);
}

TEST_CASE("group axioms on random samples") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const PLHomeo f = random_element(8, s);
    const PLHomeo g = random_element(8, s + 1000);
    const PLHomeo h = random_element(8, s + 2000);
    CHECK((f * g) * h == f * (g * h));
    CHECK((f * f.inverse()).is_identity());
    CHECK((f.inverse() * f).is_identity());
    CHECK(f * PLHomeo() == f);
    CHECK(PLHomeo() * f == f);
    CHECK(PLHomeo::make(f.breakpoints()) == f);
    for (const auto& p : g.breakpoints()) CHECK((f * g)(p.x) == f(g(p.x)));
    const Dyadic t(BigInt(static_cast<long long>(s * 37 % 1024)), 10);
    CHECK((f * g)(t) == f(g(t)));
    CHECK(f.preimage(f(t)) == t);
  }
}

TEST_CASE("finite presentation relators vanish") {
  const PLHomeo x0 = generator(0);
  const PLHomeo x1 = generator(1);
  const PLHomeo u = x0 * x1.inverse();
  for (int i = 1; i <= 10; ++i) {
    const PLHomeo v = x0.pow(-i) * x1 * x0.pow(i);
    CHECK((u * v * u.inverse() * v.inverse()).is_identity());
    CHECK(v == generator(static_cast<std::uint32_t>(i + 1)));
  }
}

TEST_CASE("infinite presentation x_j x_i = x_i x_{j+1}") {
  for (std::uint32_t i = 0; i <= 8; ++i)
    for (std::uint32_t j = i + 1; j <= 8; ++j) CHECK(generator(j) * generator(i) == generator(i) * generator(j + 1));
}

TEST_CASE("embed is a homomorphism") {
  const DyadicInterval ivs[] = {I("0", "1/2"), I("1/4", "1/2"), I("3/8", "7/8"), I("1/8", "1")};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const PLHomeo f = random_element(7, s);
    const PLHomeo g = random_element(7, s + 77);
    const auto& iv = ivs[s % 4];
    CHECK(embed(f * g, iv) == embed(f, iv) * embed(g, iv));
    CHECK(embed(f.inverse(), iv) == embed(f, iv).inverse());
  }
}

TEST_CASE("svg output") {
  const std::string svg = to_svg(generator(0), 400);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("200.0000,300.0000") != std::string::npos);  // (1/2, 1/4)
}
