#include <doctest.h>

#include <algorithm>
#include <unordered_map>

#include "alink/error.hpp"
#include "alink/ring.hpp"
#include "support.hpp"

using namespace alink;
using alink::testing::random_nontrivial;
using alink::testing::random_word;

namespace {

using alink::testing::BallOracle;

void check_against_oracle(const ContextPtr& ctx, int radius, int max_len) {
  const Group& G = ctx->group();
  const bool inversion = ctx->has_inversion();
  BallOracle oracle(to_letters(ctx->gamma()), to_letters(ctx->delta()), inversion, radius);
  REQUIRE(oracle.ranks_consistent());
  for (const Word& w : alink::testing::all_free_words(2, max_len)) {
    const Word expect = oracle.min_of(to_letters(w));
    auto key = ctx->canonicalize(w);
    if (ctx->kills_trivial() && expect.is_identity()) {
      INFO(ctx->describe() << " word " << G.format(w));
      REQUIRE_FALSE(key.has_value());
      continue;
    }
    INFO(ctx->describe() << " word " << G.format(w) << " oracle " << G.format(expect));
    REQUIRE(key.has_value());
    REQUIRE(G.format(*key) == G.format(expect));
  }
}

std::vector<std::pair<std::int64_t, std::int64_t>> magnitudes(const RingElement& y) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [k, c] : y.terms()) out.emplace_back(c < 0 ? -c : c, 0);
  std::sort(out.begin(), out.end());
  return out;
}

RingElement random_element(const ContextPtr& ctx, std::mt19937_64& rng, int terms, int len) {
  RingElement y(ctx);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int i = 0; i < terms; ++i) y.add_term(random_word(ctx->group(), rng, len), coeff(rng));
  return y;
}

}  // namespace

TEST_CASE("canonicalize examples") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  auto xy = RingContext::tilde_gamma(f, w("x y"));
  CHECK(xy->canonicalize(w("y^2 x^-1")) == xy->canonicalize(w("y^3")));
  CHECK_FALSE(xy->canonicalize(w("x y x y x y x y x y")).has_value());
  auto pi = RingContext::tilde_pi(f);
  CHECK(pi->canonicalize(w("y x y^-1")) == pi->canonicalize(w("x^-1")));
  CHECK(*pi->canonicalize(w("y x y^-1")) == w("x"));
  auto f3 = alink::testing::free3();
  auto two = RingContext::two_sided(f3, f3->parse("x y"), f3->parse("y z"));
  CHECK(two->canonicalize(f3->parse("x y z")) == two->canonicalize(f3->parse("x")));
  CHECK(*two->canonicalize(f3->parse("x y")) == Word{});
  auto deg = RingContext::tilde_gamma(f, Word{});
  CHECK(deg->flavor() == Flavor::Tilde);
  CHECK(RingContext::two_sided(f, Word{}, Word{})->flavor() == Flavor::Plain);
  CHECK(RingContext::gamma_cosets(f, Word{})->flavor() == Flavor::Plain);
  auto other = alink::testing::free3();
  try {
    xy->canonicalize(normalize(other, "x"));
    FAIL("expected SpecMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecMismatch);
  }
}

TEST_CASE("section-one trace class of x y equals the class of z") {
  auto g = alink::testing::fxs1();
  auto ctx = RingContext::tilde_gamma(g, g->parse("x y z"));
  CHECK(ctx->canonicalize(g->parse("x y")) == ctx->canonicalize(g->parse("z")));
  CHECK(g->format(*ctx->canonicalize(g->parse("x y"))) == "z");
  CHECK(g->format(*ctx->canonicalize(g->parse("x t^5"))) == "x t^5");
}

TEST_CASE("orbit oracle: tilde gamma xy" * doctest::test_suite("properties")) {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::tilde_gamma(f, w("x y")), 11, 8);
}

TEST_CASE("orbit oracle: tilde gamma x^2 y") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::tilde_gamma(f, w("x^2 y")), 11, 8);
}

TEST_CASE("orbit oracle: tilde gamma commutator") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::tilde_gamma(f, w("x y x^-1 y^-1")), 11, 7);
}

TEST_CASE("orbit oracle: tilde gamma x^2") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::tilde_gamma(f, w("x^2")), 11, 8);
}

TEST_CASE("orbit oracle: tilde gamma conjugated") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::tilde_gamma(f, w("y x^2 y^-1")), 11, 7);
}

TEST_CASE("orbit oracle: gamma cosets xy" * doctest::test_suite("properties")) {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::gamma_cosets(f, w("x y")), 11, 8);
}

TEST_CASE("orbit oracle: two-sided x, y" * doctest::test_suite("properties")) {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::two_sided(f, w("x"), w("y")), 11, 8);
}

TEST_CASE("orbit oracle: two-sided x^2, x^3") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::two_sided(f, w("x^2"), w("x^3")), 11, 8);
}

TEST_CASE("orbit oracle: two-sided xy, yx") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::two_sided(f, w("x y"), w("y x")), 11, 8);
}

TEST_CASE("orbit oracle: two-sided xy, 1") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::two_sided(f, w("x y"), Word{}), 11, 8);
}

TEST_CASE("orbit oracle: two-sided x y^-1, y x^-1 y") {
  auto f = alink::testing::free2();
  auto w = [&](const char* s) { return f->parse(s); };
  check_against_oracle(RingContext::two_sided(f, w("x y^-1"), w("y x^-1 y")), 11, 7);
}

TEST_CASE("free and free-product-of-cyclics canonicalize identically") {
  auto f = alink::testing::free2();
  auto p = make_group(GroupSpec::free_product({GroupSpec::free({"x"}), GroupSpec::free({"y"})}));
  std::mt19937_64 rng(11);
  for (const char* gamma : {"x y", "x^2 y", "x y x^-1 y^-1"}) {
    auto cf = RingContext::tilde_gamma(f, f->parse(gamma));
    auto cp = RingContext::tilde_gamma(p, p->parse(gamma));
    auto pf = RingContext::tilde_pi(f);
    auto pp = RingContext::tilde_pi(p);
    for (int i = 0; i < 300; ++i) {
      const Word g = random_word(*f, rng, 7);
      const Word gp = p->parse(f->format(g));
      auto a = cf->canonicalize(g), b = cp->canonicalize(gp);
      REQUIRE(a.has_value() == b.has_value());
      if (a) REQUIRE(f->format(*a) == p->format(*b));
      auto c = pf->canonicalize(g), d = pp->canonicalize(gp);
      REQUIRE(c.has_value() == d.has_value());
      if (c) REQUIRE(f->format(*c) == p->format(*d));
    }
  }
}

namespace {

void check_relations(const GroupPtr& G, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> exp(-3, 3), coin(0, 1);
  for (int i = 0; i < cases; ++i) {
    const Word gamma = random_nontrivial(*G, rng, 4);
    const Word delta = random_nontrivial(*G, rng, 4);
    const Word g = random_word(*G, rng, 7);
    const int n = exp(rng), m = exp(rng);
    auto tg = RingContext::tilde_gamma(G, gamma);
    const Word gs = coin(rng) ? g : G->invert(g);
    const Word moved = G->multiply(G->multiply(G->power(gamma, n), gs), G->power(gamma, m));
    REQUIRE(tg->canonicalize(moved) == tg->canonicalize(g));
    auto ts = RingContext::two_sided(G, gamma, delta);
    const Word moved2 = G->multiply(G->multiply(G->power(gamma, n), g), G->power(delta, m));
    auto key = ts->canonicalize(moved2);
    REQUIRE(key == ts->canonicalize(g));
    REQUIRE(ts->canonicalize(*key) == key);
    auto pi = RingContext::tilde_pi(G);
    REQUIRE(pi->canonicalize(G->conjugate(gs, delta)) == pi->canonicalize(g));
  }
}

}  // namespace

TEST_CASE("relation invariance: free rank 2") { check_relations(alink::testing::free2(), 10000, 23); }
TEST_CASE("relation invariance: free rank 3") { check_relations(alink::testing::free3(), 10000, 24); }
TEST_CASE("relation invariance: free times Z") { check_relations(alink::testing::fxs1(), 10000, 25); }
TEST_CASE("relation invariance: free abelian") {
  check_relations(make_group(GroupSpec::free_abelian({"x", "y"})), 10000, 26);
  check_relations(make_group(GroupSpec::free_abelian({"x", "y", "z"})), 10000, 27);
}
TEST_CASE("relation invariance: free product") {
  check_relations(
      make_group(GroupSpec::free_product({GroupSpec::free_abelian({"a", "b"}), GroupSpec::free({"u"})})), 200, 28);
}

TEST_CASE("abelian coset canonical forms") {
  auto a = make_group(GroupSpec::free_abelian({"x"}));
  auto ctx = RingContext::tilde_gamma(a, a->parse("x^4"));
  RingElement s = add(RingElement::of(ctx, a->parse("x")), RingElement::of(ctx, a->parse("x^3")));
  CHECK(s.str() == "+2*[x]");
  CHECK(ctx->canonicalize(a->parse("x^2")) == a->parse("x^2"));
  CHECK_FALSE(ctx->canonicalize(a->parse("x^8")).has_value());
  auto a2 = make_group(GroupSpec::free_abelian({"x", "y"}));
  auto c2 = RingContext::tilde_gamma(a2, a2->parse("x y"));
  CHECK(a2->format(*c2->canonicalize(a2->parse("x^3 y"))) == "x^2");
  CHECK(a2->format(*c2->canonicalize(a2->parse("x^-1 y^3"))) == "x^4");
  auto c3 = RingContext::two_sided(a2, a2->parse("x^2"), a2->parse("y^3"));
  CHECK(a2->format(*c3->canonicalize(a2->parse("x^5 y^5"))) == "x y^-1");
}

TEST_CASE("ring arithmetic") {
  auto f = alink::testing::free2();
  auto plain = RingContext::plain(f);
  auto x = RingElement::of(plain, f->parse("x"));
  CHECK(add(x, negate(x)).is_zero());
  auto f1 = make_group(GroupSpec::free({"x"}));
  auto tl = RingContext::tilde(f1);
  CHECK(add(RingElement::of(tl, f1->parse("x")), RingElement::of(tl, f1->parse("x^-1"))).str() == "+2*[x]");
  CHECK(RingElement::of(tl, Word{}).is_zero());
  CHECK(RingElement::of(plain, Word{}).str() == "+1*[1]");

  std::mt19937_64 rng(3);
  auto ctx = RingContext::tilde_gamma(f, f->parse("x^2 y"));
  for (int i = 0; i < 2000; ++i) {
    auto a = random_element(ctx, rng, 4, 5), b = random_element(ctx, rng, 4, 5), c = random_element(ctx, rng, 4, 5);
    REQUIRE(add(add(a, b), c) == add(a, add(b, c)));
    REQUIRE(add(a, b) == add(b, a));
    REQUIRE(add(a, negate(a)).is_zero());
    REQUIRE(scale(3, a) == add(a, add(a, a)));
    REQUIRE(subtract(a, b) == add(a, negate(b)));
    REQUIRE(parse_ring_element(ctx, a.str()) == a);
  }
  auto other = RingContext::tilde_gamma(f, f->parse("x y"));
  CHECK_THROWS_AS(add(RingElement(ctx), RingElement(other)), Error);
  CHECK(parse_ring_element(ctx, "0").is_zero());
  CHECK(parse_ring_element(ctx, "[x] - 2*[y]").str() == "+1*[x] -2*[y]");
  CHECK_THROWS_AS(parse_ring_element(ctx, "+1*[x"), Error);
}

TEST_CASE("overflow is reported") {
  auto f = alink::testing::free2();
  auto plain = RingContext::plain(f);
  auto big = RingElement::of(plain, f->parse("x"), INT64_MAX);
  try {
    add(big, big);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("conjugation and two-sided actions") {
  auto g = alink::testing::fxs1();
  auto ctx = RingContext::tilde_gamma(g, g->parse("t"));
  auto x = RingElement::of(ctx, g->parse("x"));
  CHECK(conj_act(Word{}, x) == x);
  auto yx = conj_act(g->parse("y"), x);
  CHECK(yx.str() == "+1*[y x y^-1]");
  CHECK_FALSE(yx == x);

  auto a = make_group(GroupSpec::free_abelian({"x", "y"}));
  auto ca = RingContext::tilde_gamma(a, a->parse("x"));
  auto e = RingElement::of(ca, a->parse("x y^2"));
  CHECK(conj_act(a->parse("y"), e) == e);

  auto f = alink::testing::free2();
  auto cxy = RingContext::tilde_gamma(f, f->parse("x y"));
  try {
    conj_act(f->parse("x"), RingElement::of(cxy, f->parse("x")));
    FAIL("expected NotInCentralizer");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotInCentralizer);
  }

  auto two = RingContext::two_sided(f, f->parse("x"), f->parse("y"));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    auto y = random_element(two, rng, 3, 6);
    REQUIRE(biact(Word{}, Word{}, y) == y);
    REQUIRE(biact(f->parse("x"), f->parse("y"), y) == y);
    REQUIRE(biact(f->parse("x^2"), f->parse("y^-1"), biact(f->parse("x^-2"), f->parse("y"), y)) == y);
  }
  CHECK_THROWS_AS(biact(f->parse("y"), Word{}, RingElement(two)), Error);

  // Termwise bijection: coefficient magnitudes are preserved, and the action
  // composes.
  auto cp = RingContext::tilde_gamma(g, g->parse("x y z"));
  for (int i = 0; i < 1000; ++i) {
    auto y = random_element(cp, rng, 4, 6);
    const std::int64_t j = static_cast<std::int64_t>(i % 5) - 2;
    const Word phi = g->multiply(g->power(g->parse("x y z"), j), g->parse("t"));
    const Word psi = g->parse("t^-2 x y z");
    REQUIRE(magnitudes(conj_act(phi, y)) == magnitudes(y));
    REQUIRE(conj_act(g->multiply(phi, psi), y) == conj_act(phi, conj_act(psi, y)));
  }
}

TEST_CASE("projection to conjugacy classes") {
  auto f = alink::testing::free2();
  auto tl = RingContext::tilde(f);
  auto d = subtract(RingElement::of(tl, f->parse("x")), RingElement::of(tl, f->parse("y x y^-1")));
  CHECK(project_pi(d).is_zero());
  CHECK(project_pi(RingElement(tl)).is_zero());
  auto s = add(RingElement::of(tl, f->parse("x y")), RingElement::of(tl, f->parse("y x")));
  CHECK(project_pi(s).str() == "+2*[x y]");
  auto cg = RingContext::tilde_gamma(f, f->parse("x"));
  CHECK_THROWS_AS(project_pi(RingElement(cg)), Error);
}
