#include <doctest.h>

#include <random>

#include "alink/error.hpp"
#include "alink/indeterminacy.hpp"
#include "support.hpp"

using namespace alink;
using alink::testing::random_nontrivial;
using alink::testing::random_word;

namespace {

RingElement elem(const ContextPtr& ctx, std::initializer_list<std::pair<const char*, std::int64_t>> terms) {
  RingElement r(ctx);
  for (const auto& [w, c] : terms) r.add_term(ctx->group().parse(w), c);
  return r;
}

Trace self_trace(const Group& g, const Knot& k, const std::string& label, PointList points, const Word& lat) {
  return make_trace(g, label, k, k, std::move(points), lat);
}

// S^1 x S^2 with gamma = x^n: spherical family 1 + x + ... + x^(n-1).
PhiGroup s1xs2_phi(const GroupPtr& g, int n) {
  const Knot k{"k", g->generator(0, n)};
  PointList pts;
  for (int i = 0; i < n; ++i) pts.push_back({1, g->generator(0, i)});
  return build_phi(g, k, {self_trace(*g, k, "K_x", {}, g->generator(0))}, {{"sigma", pts}}, {});
}

// The two-component unlink complement with a knot of class gamma.
PhiGroup unlink_phi(const GroupPtr& g, const char* gamma) {
  const Knot k{"k", g->parse(gamma)};
  const Word root = g->maximal_root(k.gamma).first;
  return build_phi(g, k, {self_trace(*g, k, "K_rho", {}, root)}, {sphere_for_unlink_complement(*g, k.gamma)}, {});
}

// F x S^1 with gamma = t: generators (-x + a x a^-1, a) for a in x, y, z, t.
PhiGroup nonspherical_phi(const GroupPtr& g, bool with_clasps) {
  const Knot k{"k", g->parse("t")};
  std::vector<Trace> traces;
  for (const char* a : {"x", "y", "z", "t"}) {
    const Word alpha = g->parse(a);
    PointList pts;
    if (with_clasps) pts = {{-1, g->parse("x")}, {1, g->conjugate(g->parse("x"), alpha)}};
    traces.push_back(self_trace(*g, k, std::string("K_") + a, pts, alpha));
  }
  return build_phi(g, k, traces, {}, {});
}

void check_certificate(const PhiGroup& phi, const RingElement& y1, const RingElement& y2, const DecisionResult& r) {
  REQUIRE(r.verdict == Verdict::Equal);
  CHECK(replay(phi, r.certificate, y2) == y1);
}

}  // namespace

TEST_CASE("build_phi") {
  const GroupPtr g = alink::testing::fxs1();
  const Knot k{"k", g->parse("x y z")};
  SUBCASE("F x S^1 spherical knot: two generators with z = 0") {
    const PhiGroup phi = build_phi(g, k, {self_trace(*g, k, "K1", {}, g->parse("x y z")),
                                          self_trace(*g, k, "K2", {}, g->parse("t"))},
                                   {}, {g->parse("x y z"), g->parse("t")});
    REQUIRE(phi.gens.size() == 2);
    CHECK(phi.gens[0].z.is_zero());
    CHECK(phi.gens[1].phi == g->parse("t"));
    CHECK(is_spherical_presented(phi));
    CHECK(phi.families.empty());
  }
  SUBCASE("latitude mismatch") {
    try {
      build_phi(g, k, {self_trace(*g, k, "K1", {}, g->parse("t"))}, {}, {g->parse("x y z")});
      FAIL("expected LatitudeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LatitudeMismatch);
    }
    CHECK_THROWS_AS(build_phi(g, k, {self_trace(*g, k, "K1", {}, g->parse("t"))}, {}, {g->parse("t"), g->parse("t")}),
                    Error);
  }
  SUBCASE("not a self-trace") {
    const Knot j{"j", k.gamma};
    try {
      build_phi(g, k, {make_trace(*g, "H", k, j, {}, Word{})}, {}, {});
      FAIL("expected NotSelfTrace");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSelfTrace);
    }
  }
  SUBCASE("empty presentation acts by conjugation only") {
    const PhiGroup phi = build_phi(g, k, {}, {}, {});
    CHECK(phi.gens.empty());
    CHECK(is_spherical_presented(phi));
    CHECK(phi.conjugations.size() == 2);  // xyz and t
  }
  SUBCASE("S^1 x S^2 family") {
    const GroupPtr a = make_group(GroupSpec::free_abelian({"x"}));
    const PhiGroup phi = s1xs2_phi(a, 4);
    REQUIRE(phi.families.size() == 1);
    CHECK(family_translate(phi, 0, Word{}, {}).str() == "+2*[x] +1*[x^2]");
  }
  SUBCASE("unknot preset") {
    const PhiGroup phi = unknot_phi(alink::testing::free2());
    CHECK(phi.ctx->flavor() == Flavor::Tilde);
    CHECK(phi.conjugations.size() == 2);
    CHECK(phi.gens.empty());
  }
}

TEST_CASE("act") {
  const GroupPtr g = alink::testing::fxs1();
  const PhiGroup phi = nonspherical_phi(g, true);
  const RingElement zero(phi.ctx);
  CHECK(act(phi.gens[2], zero) == elem(phi.ctx, {{"x", -1}, {"z x z^-1", 1}}));
  CHECK(phi.gens[0].z.is_zero());  // -x + x x x^-1
  CHECK(phi.gens[3].z.is_zero());  // t is central
  CHECK_FALSE(is_spherical_presented(phi));
  // (0, phi) is conjugation and (z, 1) is translation.
  const RingElement y = elem(phi.ctx, {{"x y", 2}, {"z", -1}});
  CHECK(act(PhiGen{"c", zero, g->parse("y"), g->parse("y")}, y) == conj_act(g->parse("y"), y));
  const RingElement z = elem(phi.ctx, {{"x", 1}});
  CHECK(act(PhiGen{"t", z, Word{}, Word{}}, y) == add(z, y));
  CHECK_THROWS_AS(act(phi.gens[2], RingElement(RingContext::tilde(g))), Error);
}

TEST_CASE("act followed by its inverse is the identity") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
  struct Setup {
    GroupPtr g;
    const char* gamma;
  };
  const std::vector<Setup> setups{{alink::testing::free2(), "x^2 y"},
                                  {alink::testing::free2(), "x y x^-1 y^-1"},
                                  {alink::testing::fxs1(), "x y z"},
                                  {alink::testing::fxs1(), "t"},
                                  {make_group(GroupSpec::free_abelian({"x", "y"})), "x^3"}};
  int bad = 0, total = 0;
  for (const auto& s : setups) {
    const Word gamma = s.g->parse(s.gamma);
    const auto ctx = RingContext::tilde_gamma(s.g, gamma);
    const auto zeta = s.g->centralizer_generators(gamma);
    for (int i = 0; i < 2000; ++i) {
      RingElement z(ctx), y(ctx);
      for (int t = 0; t < 3; ++t) {
        z.add_term(random_word(*s.g, rng, 5), c(rng));
        y.add_term(random_word(*s.g, rng, 5), c(rng));
      }
      Word phi;
      for (const auto& w : zeta) phi = s.g->multiply(phi, s.g->power(w, e(rng)));
      const PhiGen gen{"g", z, phi, phi, PhiGen::Source::Toroidal};
      ++total;
      if (!(act(inverse(*s.g, gen), act(gen, y)) == y) || !(act(gen, act(inverse(*s.g, gen), y)) == y)) ++bad;
    }
  }
  CHECK(total >= 10000);
  CHECK(bad == 0);
}

TEST_CASE("decide: F x S^1 example") {
  const GroupPtr g = alink::testing::fxs1();
  const Knot k{"k", g->parse("x y z")};
  const PhiGroup phi = build_phi(g, k, {self_trace(*g, k, "K1", {}, g->parse("x y z")),
                                        self_trace(*g, k, "K2", {}, g->parse("t"))},
                                 {}, {});
  const Trace h = make_trace(*g, "H", k, k, {{1, g->parse("x")}, {-1, g->parse("x y")}}, Word{});
  const RingElement mu = mu_trace(g, h);
  CHECK(mu == elem(phi.ctx, {{"x", 1}, {"x y", -1}}));
  const auto r = decide_equal(mu, RingElement(phi.ctx), phi);
  CHECK(r.verdict == Verdict::Distinct);
  CHECK(r.separator == "abelianization");
  CHECK(r.value1 != r.value2);
}

TEST_CASE("decide: S^1 x S^2 is exact") {
  const GroupPtr g = make_group(GroupSpec::free_abelian({"x"}));
  SUBCASE("n = 3: Z_2") {
    const PhiGroup phi = s1xs2_phi(g, 3);
    const RingElement zero(phi.ctx);
    const auto eq = decide_equal(elem(phi.ctx, {{"x", 2}}), zero, phi);
    check_certificate(phi, elem(phi.ctx, {{"x", 2}}), zero, eq);
    CHECK(eq.exact);
    CHECK(eq.quotient == "Z_2");
    const auto ne = decide_equal(elem(phi.ctx, {{"x", 1}}), zero, phi);
    CHECK(ne.verdict == Verdict::Distinct);
    CHECK(ne.quotient == "Z_2");
  }
  SUBCASE("n = 4: Z") {
    const PhiGroup phi = s1xs2_phi(g, 4);
    const RingElement y = elem(phi.ctx, {{"x", 1}, {"x^3", 1}, {"x^2", 1}});
    CHECK(y.str() == "+2*[x] +1*[x^2]");
    const auto r = decide_equal(y, RingElement(phi.ctx), phi);
    check_certificate(phi, y, RingElement(phi.ctx), r);
    CHECK(r.quotient == "Z");
    CHECK(decide_equal(elem(phi.ctx, {{"x", 1}}), RingElement(phi.ctx), phi).verdict == Verdict::Distinct);
  }
  SUBCASE("n = 1, 2: trivial") {
    for (int n : {1, 2}) {
      const PhiGroup phi = s1xs2_phi(g, n);
      const RingElement y = elem(phi.ctx, {{"x", 5}, {"x^2", -3}});
      const auto r = decide_equal(y, RingElement(phi.ctx), phi);
      check_certificate(phi, y, RingElement(phi.ctx), r);
      CHECK(orbit_quotient(phi) == std::optional<std::string>("0"));
    }
  }
}

TEST_CASE("decide: non-spherical knot in F x S^1") {
  const GroupPtr g = alink::testing::fxs1();
  const PhiGroup phi = nonspherical_phi(g, true);
  const RingElement target = elem(phi.ctx, {{"y x y^-1", -1}, {"y z x z^-1 y^-1", 1}});
  const auto r = decide_equal(target, RingElement(phi.ctx), phi);
  check_certificate(phi, target, RingElement(phi.ctx), r);
  REQUIRE(r.certificate.size() == 2);
  CHECK(r.certificate[0].kind == CertificateStep::Kind::Generator);
  CHECK(phi.gens[r.certificate[0].index].label == "K_z");
  CHECK(r.certificate[1].kind == CertificateStep::Kind::Conjugate);
  CHECK(g->format(r.certificate[1].left) == "y");

  const PhiGroup phi0 = nonspherical_phi(g, false);
  CHECK(is_spherical_presented(phi0));
  const RingElement j0 = elem(phi0.ctx, {{"x", 1}, {"y x y^-1", 1}, {"y z x z^-1 y^-1", -1}});
  const auto d = decide_equal(j0, elem(phi0.ctx, {{"x", 1}}), phi0);
  CHECK(d.verdict == Verdict::Distinct);
  CHECK(d.separator == "support-multiset");
  CHECK(d.value1 == "{1,1,1}");
  CHECK(d.value2 == "{1}");
}

TEST_CASE("decide: unlink complement, gamma = xy") {
  const GroupPtr g = alink::testing::free2();
  const PhiGroup phi = unlink_phi(g, "x y");
  int checked = 0;
  for (const Word& w : alink::testing::all_free_words(2, 4)) {
    if (w.is_identity()) continue;
    RingElement y(phi.ctx);
    y.add_term(w, 1);
    if (y.is_zero()) continue;
    const auto r = decide_equal(y, RingElement(phi.ctx), phi);
    check_certificate(phi, y, RingElement(phi.ctx), r);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("decide: unlink complement, gamma = x^2 y") {
  const GroupPtr g = alink::testing::free2();
  const PhiGroup phi = unlink_phi(g, "x^2 y");
  const RingElement y = elem(phi.ctx, {{"x y x^-1", 1}});
  for (int d : {2, 4, 6}) {
    DecideOptions o;
    o.bounds.depth = d;
    o.bounds.translate_len = d;
    const auto r = decide_equal(y, RingElement(phi.ctx), phi, o);
    CHECK(r.verdict != Verdict::Equal);
    if (r.verdict == Verdict::Unknown) CHECK_FALSE(r.attempts.empty());
  }
}

TEST_CASE("decide: unlink complement, gamma = [x,y]") {
  const GroupPtr g = alink::testing::free2();
  const PhiGroup phi = unlink_phi(g, "x y x^-1 y^-1");
  const std::vector<RingElement> chain{
      elem(phi.ctx, {{"x y", 1}}),      elem(phi.ctx, {{"y^-1 x^-1", 1}}), elem(phi.ctx, {{"y x", 1}}),
      elem(phi.ctx, {{"x^-1 y^-1", 1}}), elem(phi.ctx, {{"x y^-1", 1}}),   elem(phi.ctx, {{"y x^-1", 1}}),
      elem(phi.ctx, {{"x", 1}, {"y", 1}})};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto r = decide_equal(chain[i], chain[i + 1], phi);
    INFO("pair " << i);
    check_certificate(phi, chain[i], chain[i + 1], r);
  }
}

TEST_CASE("decide: reflexive and mismatched inputs") {
  const GroupPtr g = alink::testing::free2();
  const PhiGroup phi = unlink_phi(g, "x^2 y");
  const RingElement y = elem(phi.ctx, {{"x y x^-1", 3}});
  const auto r = decide_equal(y, y, phi);
  CHECK(r.verdict == Verdict::Equal);
  CHECK(r.certificate.empty());
  CHECK_THROWS_AS(decide_equal(y, RingElement(RingContext::tilde(g)), phi), Error);
  CHECK_THROWS_AS(decide_equal(elem(RingContext::tilde(g), {{"x", 1}}), RingElement(RingContext::tilde(g)), phi),
                  Error);
}

TEST_CASE("decide: unknot preset reduces to conjugation") {
  const GroupPtr g = alink::testing::free2();
  const PhiGroup phi = unknot_phi(g);
  const RingElement a = elem(phi.ctx, {{"x y^2", 1}, {"y", -2}});
  const RingElement b = conj_act(g->parse("y x"), a);
  check_certificate(phi, b, a, decide_equal(b, a, phi));
  CHECK(decide_equal(a, elem(phi.ctx, {{"x y^2", 1}}), phi).verdict == Verdict::Distinct);
}

TEST_CASE("link indeterminacy") {
  const GroupPtr g = alink::testing::free3();
  const Knot k1{"k1", g->parse("x")}, k2{"k2", g->parse("y")};
  const LinkTrace lt{"L", self_trace(*g, k1, "L1", {}, g->parse("x")), self_trace(*g, k2, "L2", {}, g->parse("y")),
                     {{1, g->parse("z")}}};
  const SphereData sigma{"sigma", {{1, g->parse("z")}, {-1, g->parse("z x z^-1")}}};
  const PhiGroup phi = build_phi_link(g, k1, k2, {lt}, {sigma}, {}, {});
  REQUIRE(phi.link);
  REQUIRE(phi.gens.size() == 1);
  CHECK(phi.gens[0].z == elem(phi.ctx, {{"z", 1}}));
  CHECK(phi.families.size() == 1);
  CHECK_FALSE(phi.conjugations.empty());

  SUBCASE("inverse generator") {
    std::mt19937_64 rng(31);
    const PhiGen inv = inverse(*g, phi.gens[0]);
    for (int i = 0; i < 1000; ++i) {
      RingElement y(phi.ctx);
      for (int t = 0; t < 3; ++t) y.add_term(random_word(*g, rng, 5), 1 + i % 3);
      REQUIRE(act(inv, act(phi.gens[0], y)) == y);
      REQUIRE(act(phi.gens[0], act(inv, y)) == y);
    }
  }
  SUBCASE("generator and translate moves are Equal") {
    const RingElement y = elem(phi.ctx, {{"z y z", 2}, {"x z^-1", -1}});
    const RingElement moved = act(phi.gens[0], y);
    const auto r = decide_equal_link(moved, y, phi);
    check_certificate(phi, moved, y, r);
    CHECK_THROWS_AS(decide_equal_link(y, y, s1xs2_phi(make_group(GroupSpec::free_abelian({"x"})), 3)), Error);
    const RingElement shifted = add(y, scale(3, family_translate(phi, 0, g->parse("z y"), {})));
    check_certificate(phi, shifted, y, decide_equal(shifted, y, phi));
  }
  SUBCASE("abelianization separates without sphere families") {
    const PhiGroup bare = build_phi_link(g, k1, k2, {lt}, {}, {}, {});
    const auto r = decide_equal(elem(bare.ctx, {{"z^2", 1}}), RingElement(bare.ctx), bare);
    CHECK(r.verdict == Verdict::Distinct);
    CHECK(r.separator == "abelianization");
    CHECK(r.value1 != r.value2);
  }
  SUBCASE("validation") {
    const LinkTrace wrong{"W", self_trace(*g, k2, "W1", {}, g->parse("y")), lt.second, {}};
    CHECK_THROWS_AS(build_phi_link(g, k1, k2, {wrong}, {}, {}, {}), Error);
    CHECK_THROWS_AS(build_phi_link(g, k1, k2, {lt}, {}, {}, {{g->parse("x^2"), g->parse("y")}}), Error);
    try {
      build_phi_link(g, k1, k2, {lt}, {}, {}, {{g->parse("x^2"), g->parse("y")}});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LatitudeMismatch);
    }
  }
}

TEST_CASE("link decisions over an abelian group") {
  // Z^2 with gamma = x^2, delta = y^3: six double cosets, and the family
  // 1 - y identifies each class with its y-shift.
  const GroupPtr a = make_group(GroupSpec::free_abelian({"x", "y"}));
  const Knot k1{"k1", a->parse("x^2")}, k2{"k2", a->parse("y^3")};
  const SphereData left{"l", {{1, Word{}}, {-1, a->parse("y")}}};
  const PhiGroup phi = build_phi_link(a, k1, k2, {}, {left}, {}, {});
  CHECK(orbit_quotient(phi) == std::optional<std::string>("Z^2"));
  const auto e = decide_equal_link(elem(phi.ctx, {{"y", 1}}), elem(phi.ctx, {{"y^2", 1}}), phi);
  check_certificate(phi, elem(phi.ctx, {{"y", 1}}), elem(phi.ctx, {{"y^2", 1}}), e);
  const auto d = decide_equal_link(elem(phi.ctx, {{"x", 1}}), elem(phi.ctx, {{"y", 1}}), phi);
  CHECK(d.verdict == Verdict::Distinct);
  CHECK(d.exact);
}

TEST_CASE("support multiset separates pure biactions") {
  const GroupPtr g = alink::testing::free3();
  const PhiGroup phi = build_phi_link(g, {"k1", g->parse("x")}, {"k2", g->parse("y")}, {}, {}, {}, {});
  // Same abelian image, different coefficient multisets.
  const auto r = decide_equal_link(elem(phi.ctx, {{"z", 2}}), elem(phi.ctx, {{"z", 1}, {"z x", 1}}), phi);
  CHECK(r.verdict == Verdict::Distinct);
  CHECK(r.separator == "support-multiset");
}

TEST_CASE("verdicts are monotone in the bounds") {
  const GroupPtr g = alink::testing::free2();
  struct Query {
    const char* gamma;
    const char* y1;
  };
  const std::vector<Query> queries{{"x y", "x^2 y^-1"},           {"x y", "y x^-2"},
                                   {"x^2 y", "x y x^-1"},         {"x^2 y", "y"},
                                   {"x y x^-1 y^-1", "x y"},      {"x y x^-1 y^-1", "x y^-1"},
                                   {"x y x^-1 y^-1", "x^2 y^2"}};
  for (const auto& q : queries) {
    const PhiGroup phi = unlink_phi(g, q.gamma);
    const RingElement y = elem(phi.ctx, {{q.y1, 1}});
    bool seen_equal = false, seen_distinct = false;
    for (int d : {1, 2, 4, 6}) {
      DecideOptions opts;
      opts.bounds.depth = d;
      opts.bounds.translate_len = d;
      const auto r = decide_equal(y, RingElement(phi.ctx), phi, opts);
      if (r.verdict == Verdict::Equal) {
        CHECK(replay(phi, r.certificate, RingElement(phi.ctx)) == y);
        seen_equal = true;
      } else {
        CHECK_FALSE(seen_equal);  // an Equal never reverts
      }
      if (r.verdict == Verdict::Distinct) seen_distinct = true;
    }
    CHECK_FALSE((seen_equal && seen_distinct));
  }
}
