#include "alink/linking.hpp"

#include "alink/error.hpp"

namespace alink {

namespace {

RingElement signed_sum(const ContextPtr& ctx, const PointList& points) {
  RingElement r(ctx);
  for (const auto& p : points) r.add_term(p.g, p.sign);
  return r;
}

PointList conjugate_points(const Group& group, const PointList& points, const Word& by) {
  if (by.is_identity()) return points;
  PointList out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p.sign, group.conjugate(p.g, by)});
  return out;
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "double point signs must be +1 or -1");
}

}  // namespace

Trace make_trace(const Group& group, std::string label, Knot from, Knot to, PointList points, Word latitude) {
  if (from.gamma != to.gamma)
    fail(ErrorCode::EndpointMismatch, "trace '" + label + "' joins knots of different classes (" +
                                          group.format(from.gamma) + " vs " + group.format(to.gamma) + ")");
  if (!group.commutes(latitude, from.gamma))
    fail(ErrorCode::NotInCentralizer, "latitude " + group.format(latitude) + " of trace '" + label +
                                          "' does not commute with " + group.format(from.gamma));
  for (const auto& p : points) check_sign(p.sign);
  return Trace{std::move(label), std::move(from), std::move(to), std::move(points), std::move(latitude)};
}

RingElement mu_trace(const GroupPtr& group, const Trace& t) {
  return signed_sum(RingContext::tilde_gamma(group, t.from.gamma), t.points);
}

RingElement mu_absolute(const GroupPtr& group, const PointList& points) {
  return signed_sum(RingContext::tilde(group), points);
}

RingElement mu_pi(const GroupPtr& group, const PointList& points) {
  return project_pi(mu_absolute(group, points));
}

Trace compose(const Group& group, const Trace& h, const Trace& h2) {
  if (h.to.label != h2.from.label || h.to.gamma != h2.from.gamma)
    fail(ErrorCode::EndpointMismatch,
         "cannot compose '" + h.label + "' (ends at " + h.to.label + ") with '" + h2.label + "' (starts at " +
             h2.from.label + ")");
  Trace out;
  out.label = h.label + "+" + h2.label;
  out.from = h.from;
  out.to = h2.to;
  out.points = h.points;
  for (const auto& p : conjugate_points(group, h2.points, h.latitude)) out.points.push_back(p);
  out.latitude = group.multiply(h.latitude, h2.latitude);
  return out;
}

Trace invert_trace(const Group& group, const Trace& h) {
  Trace out;
  out.label = "-" + h.label;
  out.from = h.to;
  out.to = h.from;
  const Word inv = group.invert(h.latitude);
  for (const auto& p : conjugate_points(group, h.points, inv)) out.points.push_back({-p.sign, p.g});
  out.latitude = inv;
  return out;
}

Trace rebase(const Group& group, const Trace& h, const Word& alpha) {
  if (!group.commutes(alpha, h.from.gamma))
    fail(ErrorCode::NotInCentralizer,
         "whisker change " + group.format(alpha) + " does not commute with " + group.format(h.from.gamma));
  Trace out = h;
  out.points = conjugate_points(group, h.points, alpha);
  out.latitude = group.conjugate(h.latitude, alpha);
  return out;
}

SpherePairing lambda_sphere(const GroupPtr& group, const SphereData& sigma, const Knot& k) {
  return {signed_sum(RingContext::gamma_cosets(group, k.gamma), sigma.points),
          signed_sum(RingContext::tilde_gamma(group, k.gamma), sigma.points)};
}

SpherePairing lambda_sphere_combo(const GroupPtr& group,
                                  const std::vector<std::pair<Word, const SphereData*>>& terms, const Knot& k) {
  SpherePairing out{RingElement(RingContext::gamma_cosets(group, k.gamma)),
                    RingElement(RingContext::tilde_gamma(group, k.gamma))};
  for (const auto& [g, sigma] : terms) {
    const SphereData moved = translate_sphere(*group, *sigma, g);
    for (const auto& p : moved.points) {
      out.unreduced.add_term(p.g, p.sign);
      out.reduced.add_term(p.g, p.sign);
    }
  }
  return out;
}

SphereData translate_sphere(const Group& group, const SphereData& sigma, const Word& g) {
  SphereData out{sigma.label, {}};
  for (const auto& p : sigma.points) out.points.push_back({p.sign, group.multiply(g, p.g)});
  return out;
}

SphereData translate_sphere_right(const Group& group, const SphereData& sigma, const Word& g) {
  SphereData out{sigma.label, {}};
  for (const auto& p : sigma.points) out.points.push_back({p.sign, group.multiply(p.g, g)});
  return out;
}

SphereData sphere_for_unlink_complement(const Group& group, const Word& gamma) {
  if (group.kind() != GroupKind::Free || group.rank() < 2)
    fail(ErrorCode::InvalidArgument, "unlink-complement sphere needs a free group of rank >= 2");
  // Syllable pairs (x^m_i, y^n_i), either end may be empty.
  std::vector<Syllable> syl;
  for (const auto& s : gamma.syl) {
    if (s.gen > 1) fail(ErrorCode::InvalidArgument, "class must be a word in the first two generators");
    syl.push_back(s);
  }
  std::vector<Word> pieces;
  std::size_t i = 0;
  while (i < syl.size()) {
    Word xs, ys;
    if (syl[i].gen == 0) xs.syl.push_back(syl[i++]);
    if (i < syl.size() && syl[i].gen == 1) ys.syl.push_back(syl[i++]);
    pieces.push_back(std::move(xs));
    pieces.push_back(std::move(ys));
  }
  SphereData out{"unlink-sphere", {}};
  Word prefix;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    out.points.push_back({k % 2 == 0 ? 1 : -1, group.invert(prefix)});
    prefix = group.multiply(prefix, pieces[k]);
  }
  return out;
}

RingElement lambda_link(const GroupPtr& group, const LinkTrace& lt) {
  return signed_sum(RingContext::two_sided(group, lt.first.from.gamma, lt.second.from.gamma), lt.cross);
}

RingElement lambda_absolute(const GroupPtr& group, const PointList& cross) {
  return signed_sum(RingContext::plain(group), cross);
}

PointList connect_sum(const GroupPtr& group, const PointList& d1, const PointList& d2, const Word& beta,
                      const PointList& cross, bool strict) {
  if (strict && !lambda_absolute(group, cross).is_zero())
    fail(ErrorCode::NonVanishingLinking, "the components' linking number does not vanish in Z[pi]");
  PointList out = d1;
  const Word bi = group->invert(beta);
  for (const auto& p : d2) out.push_back({p.sign, group->multiply({&beta, &p.g, &bi})});
  for (const auto& p : cross) out.push_back({p.sign, group->multiply(p.g, bi)});
  return out;
}

Trace realize_trace(const RingElement& target, const Knot& k) {
  const RingContext& ctx = *target.context();
  const bool ok = (ctx.flavor() == Flavor::TildeGamma && ctx.gamma() == k.gamma) ||
                  (ctx.flavor() == Flavor::Tilde && k.gamma.is_identity());
  if (!ok) fail(ErrorCode::SpecMismatch, "target does not live in the reduced ring of " + k.label);
  Trace t;
  t.label = "realize(" + k.label + ")";
  t.from = k;
  t.to = k;
  for (const auto& [key, c] : target.terms()) {
    const int sign = c > 0 ? 1 : -1;
    for (std::int64_t n = 0; n < (c > 0 ? c : -c); ++n) t.points.push_back({sign, key});
  }
  return t;
}

}  // namespace alink
