#include <doctest.h>

#include "alink/error.hpp"
#include "alink/linking.hpp"
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

PointList random_points(const Group& g, std::mt19937_64& rng, int max_points, int len) {
  std::uniform_int_distribution<int> count(0, max_points), sign(0, 1);
  PointList out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) out.push_back({sign(rng) ? 1 : -1, random_word(g, rng, len)});
  return out;
}

// A random element of the centralizer of gamma, as a product of powers of
// its generators.
Word random_centralizing(const Group& g, const Word& gamma, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2);
  Word out;
  for (const Word& z : g.centralizer_generators(gamma)) out = g.multiply(out, g.power(z, e(rng)));
  return out;
}

struct TraceFactory {
  GroupPtr group;
  Word gamma;
  std::mt19937_64 rng;

  Trace make(const std::string& from, const std::string& to) {
    const Word lat = random_centralizing(*group, gamma, rng);
    return make_trace(*group, from + "->" + to, Knot{from, gamma}, Knot{to, gamma},
                      random_points(*group, rng, 4, 6), lat);
  }
};

}  // namespace

TEST_CASE("mu of the F x S^1 trace") {
  auto g = alink::testing::fxs1();
  const Word gamma = g->parse("x y z");
  Trace h = make_trace(*g, "H", Knot{"k", gamma}, Knot{"j", gamma},
                       {{1, g->parse("x")}, {-1, g->parse("x y")}}, Word{});
  RingElement mu = mu_trace(g, h);
  auto ctx = RingContext::tilde_gamma(g, gamma);
  CHECK(mu == elem(ctx, {{"x", 1}, {"x y", -1}}));
  CHECK_FALSE(mu.is_zero());
  CHECK(mu.str() == "+1*[x] -1*[z]");
}

TEST_CASE("mu edge cases") {
  auto g = alink::testing::fxs1();
  const Word gamma = g->parse("x y z");
  Knot k{"k", gamma};
  CHECK(mu_trace(g, make_trace(*g, "E", k, k, {}, Word{})).is_zero());
  CHECK(mu_trace(g, make_trace(*g, "C", k, k, {{1, g->power(gamma, 3)}}, Word{})).is_zero());
  auto a = make_group(GroupSpec::free_abelian({"x"}));
  Knot k4{"k", a->parse("x^4")};
  Trace h = make_trace(*a, "H", k4, Knot{"j", k4.gamma},
                       {{1, a->parse("x")}, {1, a->parse("x")}, {1, a->parse("x^2")}}, Word{});
  CHECK(mu_trace(a, h).str() == "+2*[x] +1*[x^2]");

  auto f = alink::testing::free2();
  CHECK(mu_absolute(f, {{1, f->parse("x y")}}).str() == "+1*[x y]");
  CHECK(mu_absolute(f, {{1, Word{}}}).is_zero());
  CHECK(mu_absolute(f, {{1, f->parse("x y")}, {-1, f->parse("y^-1 x^-1")}}).is_zero());
  CHECK(mu_pi(f, {{1, f->parse("x")}, {-1, f->parse("y x y^-1")}}).is_zero());
  CHECK(mu_pi(f, {{1, f->parse("x")}}).str() == "+1*[x]");
  CHECK(mu_pi(f, {{1, f->parse("x y")}, {1, f->parse("y x")}}).str() == "+2*[x y]");
}

TEST_CASE("trace validation") {
  auto g = alink::testing::fxs1();
  const Word gamma = g->parse("x y z");
  try {
    make_trace(*g, "bad", Knot{"k", gamma}, Knot{"j", gamma}, {}, g->parse("x"));
    FAIL("expected NotInCentralizer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInCentralizer);
  }
  try {
    make_trace(*g, "bad", Knot{"k", gamma}, Knot{"j", g->parse("x")}, {}, Word{});
    FAIL("expected EndpointMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointMismatch);
  }
  Trace a = make_trace(*g, "A", Knot{"k", gamma}, Knot{"j", gamma}, {}, Word{});
  try {
    compose(*g, a, a);
    FAIL("expected EndpointMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointMismatch);
  }
  CHECK_THROWS_AS(rebase(*g, a, g->parse("x")), Error);
}

TEST_CASE("composition conjugates by the latitude") {
  auto g = alink::testing::fxs1();
  const Word t = g->parse("t");
  Knot k{"k", t}, j{"j", t};
  Trace h = make_trace(*g, "H", k, j, {}, g->parse("y"));
  Trace h2 = make_trace(*g, "K", j, j, {{1, g->parse("x")}}, Word{});
  Trace c = compose(*g, h, h2);
  REQUIRE(c.points.size() == 1);
  CHECK(g->format(c.points[0].g) == "y x y^-1");
  CHECK(c.latitude == g->parse("y"));

  Trace e = make_trace(*g, "E", j, j, {}, Word{});
  Trace he = compose(*g, h, e);
  CHECK(he.points == h.points);
  CHECK(he.latitude == h.latitude);

  Trace a = make_trace(*g, "A", k, k, {{1, g->parse("x")}}, Word{});
  Trace b = make_trace(*g, "B", k, k, {{1, g->parse("y")}}, Word{});
  CHECK(mu_trace(g, compose(*g, a, b)) == elem(RingContext::tilde_gamma(g, t), {{"x", 1}, {"y", 1}}));

  Trace single = make_trace(*g, "S", k, k, {{1, g->parse("x y")}}, Word{});
  Trace inv = invert_trace(*g, single);
  REQUIRE(inv.points.size() == 1);
  CHECK(inv.points[0].sign == -1);
  CHECK(inv.points[0].g == g->parse("x y"));
  CHECK(invert_trace(*g, e).points.empty());
}

TEST_CASE("composition, inverse and whisker laws on random traces" * doctest::test_suite("properties")) {
  std::vector<std::pair<GroupPtr, const char*>> setups{
      {alink::testing::fxs1(), "x y z"}, {alink::testing::fxs1(), "t"},
      {alink::testing::free2(), "x^2 y"}, {alink::testing::free2(), "x y x^-1 y^-1"},
      {make_group(GroupSpec::free_abelian({"x", "y"})), "x^2"},
  };
  std::uint64_t seed = 1;
  for (const auto& [group, gamma_text] : setups) {
    TraceFactory tf{group, group->parse(gamma_text), std::mt19937_64(seed++)};
    const Group& g = *group;
    for (int i = 0; i < 2000; ++i) {
      Trace h = tf.make("k", "j");
      Trace h2 = tf.make("j", "l");
      Trace c = compose(g, h, h2);
      REQUIRE(mu_trace(group, c) == add(mu_trace(group, h), conj_act(h.latitude, mu_trace(group, h2))));
      REQUIRE(c.latitude == g.multiply(h.latitude, h2.latitude));
      Trace inv = invert_trace(g, h);
      REQUIRE(inv.latitude == g.invert(h.latitude));
      REQUIRE(mu_trace(group, inv) == negate(conj_act(g.invert(h.latitude), mu_trace(group, h))));
      REQUIRE(mu_trace(group, compose(g, h, inv)).is_zero());
      const Word alpha = random_centralizing(g, tf.gamma, tf.rng);
      REQUIRE(mu_trace(group, rebase(g, h, alpha)) == conj_act(alpha, mu_trace(group, h)));
      REQUIRE(rebase(g, rebase(g, h, alpha), g.invert(alpha)).points == h.points);
      const RingElement mu = mu_trace(group, h);
      REQUIRE(mu_trace(group, realize_trace(mu, h.from)) == mu);
    }
  }
}

TEST_CASE("sphere pairings") {
  auto a = make_group(GroupSpec::free_abelian({"x"}));
  Knot k{"k", a->parse("x^4")};
  SphereData sigma{"s", {{1, Word{}}, {1, a->parse("x")}, {1, a->parse("x^2")}, {1, a->parse("x^3")}}};
  SpherePairing p = lambda_sphere(a, sigma, k);
  CHECK(p.unreduced == elem(RingContext::gamma_cosets(a, k.gamma), {{"1", 1}, {"x", 1}, {"x^2", 1}, {"x^3", 1}}));
  CHECK(p.unreduced.support_size() == 4);
  CHECK(p.reduced.str() == "+2*[x] +1*[x^2]");
  CHECK(lambda_sphere(a, SphereData{"e", {}}, k).unreduced.is_zero());

  auto f = alink::testing::free2();
  const Word comm = f->parse("x y x^-1 y^-1");
  SphereData u = sphere_for_unlink_complement(*f, comm);
  REQUIRE(u.points.size() == 4);
  CHECK(u.points[0].g.is_identity());
  CHECK(f->format(u.points[1].g) == "x^-1");
  CHECK(u.points[1].sign == -1);
  CHECK(f->format(u.points[2].g) == "y^-1 x^-1");
  CHECK(f->format(u.points[3].g) == "x y^-1 x^-1");
  SpherePairing up = lambda_sphere(f, u, Knot{"k", comm});
  CHECK(up.reduced == elem(RingContext::tilde_gamma(f, comm), {{"x", -1}, {"x y", 1}, {"y", -1}}));

  SphereData xy = sphere_for_unlink_complement(*f, f->parse("x y"));
  REQUIRE(xy.points.size() == 2);
  CHECK(lambda_sphere(f, xy, Knot{"k", f->parse("x y")}).reduced.str() == "-1*[x]");
  SphereData x2y = sphere_for_unlink_complement(*f, f->parse("x^2 y"));
  CHECK(lambda_sphere_combo(f, {{f->parse("y"), &x2y}}, Knot{"k", f->parse("x^2 y")}).reduced ==
        elem(RingContext::tilde_gamma(f, f->parse("x^2 y")), {{"y", 1}, {"y x^-2", -1}}));
  CHECK_THROWS_AS(sphere_for_unlink_complement(*alink::testing::fxs1(), f->parse("x")), Error);
}

TEST_CASE("sphere pairing linearity on random combinations" * doctest::test_suite("properties")) {
  auto f = alink::testing::free2();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    Knot k{"k", random_nontrivial(*f, rng, 4)};
    SphereData s1{"a", random_points(*f, rng, 4, 4)}, s2{"b", random_points(*f, rng, 4, 4)};
    const Word g1 = random_word(*f, rng, 4), g2 = random_word(*f, rng, 4);
    SpherePairing combo = lambda_sphere_combo(f, {{g1, &s1}, {g2, &s2}}, k);
    // Direct expansion: sum of sign * [g_i p].
    RingElement direct(RingContext::gamma_cosets(f, k.gamma));
    for (const auto& p : s1.points) direct.add_term(f->multiply(g1, p.g), p.sign);
    for (const auto& p : s2.points) direct.add_term(f->multiply(g2, p.g), p.sign);
    REQUIRE(combo.unreduced == direct);
    REQUIRE(combo.reduced == change_context(direct, RingContext::tilde_gamma(f, k.gamma)));
    REQUIRE(combo.unreduced == add(lambda_sphere(f, translate_sphere(*f, s1, g1), k).unreduced,
                                   lambda_sphere(f, translate_sphere(*f, s2, g2), k).unreduced));
  }
}

TEST_CASE("link pairings") {
  auto f = alink::testing::free2();
  const Word gx = f->parse("x"), gy = f->parse("y");
  Trace h1 = make_trace(*f, "H1", Knot{"k1", gx}, Knot{"j1", gx}, {}, Word{});
  Trace h2 = make_trace(*f, "H2", Knot{"k2", gy}, Knot{"j2", gy}, {}, Word{});
  CHECK(lambda_link(f, LinkTrace{"L", h1, h2, {}}).is_zero());
  RingElement one = lambda_link(f, LinkTrace{"L", h1, h2, {{1, f->parse("x")}}});
  CHECK(one.str() == "+1*[1]");
  const Word g = f->parse("y x y");
  CHECK(lambda_link(f, LinkTrace{"L", h1, h2, {{1, g}, {-1, f->multiply({&gx, &g, &gy})}}}).is_zero());
  CHECK(lambda_absolute(f, {}).is_zero());
  CHECK(lambda_absolute(f, {{1, g}}).str() == "+1*[y x y]");
  CHECK(lambda_absolute(f, {{1, g}, {1, g}}).str() == "+2*[y x y]");
}

TEST_CASE("connected sums" * doctest::test_suite("properties")) {
  auto f = alink::testing::free2();
  const Word g = f->parse("x y"), h = f->parse("y^2");
  PointList d1{{1, g}};
  CHECK(connect_sum(f, d1, {}, Word{}, {}, true) == d1);
  PointList expect{{1, g}, {1, h}};
  CHECK(connect_sum(f, d1, {{1, h}}, Word{}, {}, true) == expect);
  try {
    connect_sum(f, d1, {}, Word{}, {{1, g}}, true);
    FAIL("expected NonVanishingLinking");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonVanishingLinking);
  }
  CHECK(connect_sum(f, d1, {}, Word{}, {{1, g}}, false).size() == 2);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    PointList a = random_points(*f, rng, 4, 5), b = random_points(*f, rng, 4, 5);
    PointList cross;
    for (int k = 0; k < i % 3; ++k) {
      const Word c = random_word(*f, rng, 5);
      cross.push_back({1, c});
      cross.push_back({-1, c});
    }
    const Word beta = random_word(*f, rng, 4);
    PointList sum = connect_sum(f, a, b, beta, cross, true);
    REQUIRE(mu_pi(f, sum) == add(mu_pi(f, a), mu_pi(f, b)));
    // The displayed formula, expanded in the unreduced ring.
    RingElement lhs = mu_absolute(f, sum);
    RingElement rhs = add(mu_absolute(f, a), conj_act(beta, mu_absolute(f, b)));
    for (const auto& p : cross) rhs.add_term(f->multiply(p.g, f->invert(beta)), p.sign);
    REQUIRE(lhs == rhs);
  }
}
