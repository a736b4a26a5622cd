#include "alink/indeterminacy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "alink/error.hpp"
#include "alink/lattice.hpp"

namespace alink {

namespace {

RingElement biact_raw(const Group& group, const Word& l, const Word& r, const RingElement& y) {
  if (l.is_identity() && r.is_identity()) return y;
  const Word ri = group.invert(r);
  RingElement out(y.context());
  for (const auto& [key, c] : y.terms()) out.add_term(group.multiply({&l, &key, &ri}), c);
  return out;
}

void require_context(const PhiGroup& phi, const RingElement& y) {
  if (!phi.ctx || !y.context() || !phi.ctx->same_as(*y.context()))
    fail(ErrorCode::SpecMismatch, "element does not live in the ring of the indeterminacy group");
}

void add_conj(std::vector<ConjMove>& out, const Group& group, ConjMove m) {
  if (m.left.is_identity() && m.right.is_identity()) return;
  for (const auto& e : out)
    if (e.left == m.left && e.right == m.right) return;
  (void)group;
  out.push_back(std::move(m));
}

std::vector<Word> centralizer_or_empty(const Group& group, const Word& gamma) {
  try {
    return group.centralizer_generators(gamma);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    return {};
  }
}

bool same_knot(const Knot& a, const Knot& b) { return a.label == b.label && a.gamma == b.gamma; }

}  // namespace

PhiGroup build_phi(const GroupPtr& group, const Knot& k, const std::vector<Trace>& toroidal,
                   const std::vector<SphereData>& spheres, const std::vector<Word>& zeta) {
  PhiGroup phi;
  phi.ctx = RingContext::tilde_gamma(group, k.gamma);
  if (!zeta.empty() && zeta.size() != toroidal.size())
    fail(ErrorCode::LatitudeMismatch, "expected one toroidal trace per centralizer generator of " + k.label);
  for (std::size_t i = 0; i < toroidal.size(); ++i) {
    const Trace& t = toroidal[i];
    if (!same_knot(t.from, k) || !same_knot(t.to, k))
      fail(ErrorCode::NotSelfTrace, "trace '" + t.label + "' is not a self-trace of " + k.label);
    if (!zeta.empty() && t.latitude != zeta[i])
      fail(ErrorCode::LatitudeMismatch, "trace '" + t.label + "' has latitude " + group->format(t.latitude) +
                                            " but generator " + std::to_string(i + 1) + " is " +
                                            group->format(zeta[i]));
    if (!group->commutes(t.latitude, k.gamma))
      fail(ErrorCode::NotInCentralizer, "latitude of '" + t.label + "' does not commute with " + k.label);
    phi.gens.push_back({t.label, mu_trace(group, t), t.latitude, t.latitude, PhiGen::Source::Toroidal});
  }
  std::vector<Word> conj = zeta;
  if (conj.empty()) {
    for (const auto& t : toroidal) conj.push_back(t.latitude);
    for (const auto& c : centralizer_or_empty(*group, k.gamma)) conj.push_back(c);
  }
  for (const auto& c : conj) {
    if (!group->commutes(c, k.gamma))
      fail(ErrorCode::NotInCentralizer, group->format(c) + " does not commute with " + group->format(k.gamma));
    add_conj(phi.conjugations, *group, {c, c});
  }
  for (const auto& s : spheres) phi.families.push_back({s.label, s.points, SphereFamily::Side::Left});
  return phi;
}

PhiGroup unknot_phi(const GroupPtr& group) {
  PhiGroup phi;
  phi.ctx = RingContext::tilde(group);
  for (std::size_t g = 0; g < group->rank(); ++g) {
    const Word w = group->generator(static_cast<int>(g));
    add_conj(phi.conjugations, *group, {w, w});
  }
  return phi;
}

PhiGroup build_phi_link(const GroupPtr& group, const Knot& k1, const Knot& k2, const std::vector<LinkTrace>& toroidal,
                        const std::vector<SphereData>& left_spheres, const std::vector<SphereData>& right_spheres,
                        const std::vector<std::pair<Word, Word>>& zeta) {
  PhiGroup phi;
  phi.link = true;
  phi.ctx = RingContext::two_sided(group, k1.gamma, k2.gamma);
  if (!zeta.empty() && zeta.size() != toroidal.size())
    fail(ErrorCode::LatitudeMismatch, "expected one toroidal link trace per declared centralizer pair");
  for (std::size_t i = 0; i < toroidal.size(); ++i) {
    const LinkTrace& lt = toroidal[i];
    if (!same_knot(lt.first.from, k1) || !same_knot(lt.first.to, k1) || !same_knot(lt.second.from, k2) ||
        !same_knot(lt.second.to, k2))
      fail(ErrorCode::NotSelfTrace, "link trace '" + lt.label + "' is not a self-trace of " + k1.label + " u " +
                                        k2.label);
    const Word& a = lt.first.latitude;
    const Word& b = lt.second.latitude;
    if (!zeta.empty() && (a != zeta[i].first || b != zeta[i].second))
      fail(ErrorCode::LatitudeMismatch, "link trace '" + lt.label + "' latitudes differ from declared pair " +
                                            std::to_string(i + 1));
    if (!group->commutes(a, k1.gamma) || !group->commutes(b, k2.gamma))
      fail(ErrorCode::NotInCentralizer, "latitudes of '" + lt.label + "' are not in the centralizers");
    phi.gens.push_back({lt.label, lambda_link(group, lt), a, b, PhiGen::Source::Toroidal});
  }
  std::vector<Word> left, right;
  if (zeta.empty()) {
    for (const auto& lt : toroidal) {
      left.push_back(lt.first.latitude);
      right.push_back(lt.second.latitude);
    }
    for (const auto& c : centralizer_or_empty(*group, k1.gamma)) left.push_back(c);
    for (const auto& c : centralizer_or_empty(*group, k2.gamma)) right.push_back(c);
  } else {
    for (const auto& [a, b] : zeta) {
      left.push_back(a);
      right.push_back(b);
    }
  }
  for (const auto& a : left) {
    if (!group->commutes(a, k1.gamma))
      fail(ErrorCode::NotInCentralizer, group->format(a) + " does not commute with " + group->format(k1.gamma));
    add_conj(phi.conjugations, *group, {a, Word{}});
  }
  for (const auto& b : right) {
    if (!group->commutes(b, k2.gamma))
      fail(ErrorCode::NotInCentralizer, group->format(b) + " does not commute with " + group->format(k2.gamma));
    add_conj(phi.conjugations, *group, {Word{}, b});
  }
  for (const auto& s : left_spheres) phi.families.push_back({s.label, s.points, SphereFamily::Side::Left});
  for (const auto& s : right_spheres) phi.families.push_back({s.label, s.points, SphereFamily::Side::Right});
  return phi;
}

RingElement act(const PhiGen& gen, const RingElement& y) {
  require_same_context(gen.z, y);
  return add(gen.z, biact_raw(y.context()->group(), gen.phi, gen.psi, y));
}

PhiGen inverse(const Group& group, const PhiGen& gen) {
  const Word pi = group.invert(gen.phi), si = group.invert(gen.psi);
  PhiGen out = gen;
  out.label = gen.label + "^-1";
  out.z = negate(biact_raw(group, pi, si, gen.z));
  out.phi = pi;
  out.psi = si;
  return out;
}

RingElement apply_conj(const ConjMove& move, const RingElement& y) {
  return biact_raw(y.context()->group(), move.left, move.right, y);
}

RingElement family_translate(const PhiGroup& phi, std::size_t family, const Word& g, const ConjMove& conj) {
  const SphereFamily& f = phi.families.at(family);
  const Group& group = phi.ctx->group();
  const Word ri = group.invert(conj.right);
  RingElement out(phi.ctx);
  for (const auto& p : f.points) {
    const Word moved = f.side == SphereFamily::Side::Left ? group.multiply(g, p.g) : group.multiply(p.g, g);
    out.add_term(group.multiply({&conj.left, &moved, &ri}), p.sign);
  }
  return out;
}

bool is_spherical_presented(const PhiGroup& phi) {
  return std::all_of(phi.gens.begin(), phi.gens.end(), [](const PhiGen& g) { return g.z.is_zero(); });
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Equal:
      return "equal";
    case Verdict::Distinct:
      return "distinct";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

std::vector<Word> group_ball(const Group& group, int len, std::size_t cap) {
  std::vector<Word> out{Word{}};
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> layer{Word{}};
  for (int l = 1; l <= len && out.size() < cap; ++l) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t g = 0; g < group.rank(); ++g)
        for (int e : {1, -1}) {
          Word v = group.multiply(w, group.generator(static_cast<int>(g), e));
          if (v.length() != l) continue;
          if (seen.insert(v).second) next.push_back(std::move(v));
        }
    std::sort(next.begin(), next.end(), ShortlexLess{});
    for (auto& w : next) {
      if (out.size() >= cap) break;
      out.push_back(w);
    }
    layer = std::move(next);
  }
  return out;
}

RingElement replay(const PhiGroup& phi, const std::vector<CertificateStep>& certificate, const RingElement& y) {
  require_context(phi, y);
  const Group& group = phi.ctx->group();
  RingElement cur = y;
  for (const auto& s : certificate) {
    switch (s.kind) {
      case CertificateStep::Kind::Generator: {
        const PhiGen& g = phi.gens.at(s.index);
        const bool central = g.phi == g.psi && (g.phi.is_identity() || group.is_abelian() ||
                                                (group.kind() == GroupKind::Free && group.rank() == 1));
        if (central) {
          cur = add(cur, scale(s.power, g.z));
          break;
        }
        const PhiGen gi = inverse(group, g);
        const std::int64_t n = s.power < 0 ? -s.power : s.power;
        for (std::int64_t i = 0; i < n; ++i) cur = act(s.power < 0 ? gi : g, cur);
        break;
      }
      case CertificateStep::Kind::Conjugate:
        cur = apply_conj({s.left, s.right}, cur);
        break;
      case CertificateStep::Kind::Translate:
        cur = add(cur, scale(s.power, family_translate(phi, s.index, s.left, {s.conj_left, s.conj_right})));
        break;
    }
  }
  return cur;
}

std::string describe_step(const PhiGroup& phi, const CertificateStep& s) {
  const Group& group = phi.ctx->group();
  std::ostringstream os;
  switch (s.kind) {
    case CertificateStep::Kind::Generator:
      os << "apply " << phi.gens.at(s.index).label;
      if (s.power != 1) os << '^' << s.power;
      break;
    case CertificateStep::Kind::Conjugate:
      if (phi.link)
        os << "conjugate by (" << group.format(s.left) << ", " << group.format(s.right) << ')';
      else
        os << "conjugate by " << group.format(s.left);
      break;
    case CertificateStep::Kind::Translate: {
      const SphereFamily& f = phi.families.at(s.index);
      os << "add " << s.power << " * ";
      if (f.side == SphereFamily::Side::Left)
        os << '(' << group.format(s.left) << ")." << f.label;
      else
        os << f.label << ".(" << group.format(s.left) << ')';
      if (!s.conj_left.is_identity() || !s.conj_right.is_identity())
        os << " conjugated by (" << group.format(s.conj_left) << ", " << group.format(s.conj_right) << ')';
      break;
    }
  }
  return os.str();
}

namespace {

struct TranslateRel {
  std::size_t family;
  Word g;
  ConjMove conj;
};

// Sphere translate relations materialized as a lattice over canonical keys.
struct TranslateLattice {
  KeyLattice lattice;
  std::vector<TranslateRel> rels;
  std::vector<RingElement> values;
  std::unordered_set<std::string> seen;

  void add(const PhiGroup& phi, std::size_t f, const Word& g, const ConjMove& conj) {
    RingElement v = family_translate(phi, f, g, conj);
    if (v.is_zero()) return;
    // A translate and its negative span the same line.
    std::string key = v.str();
    if (seen.count(key) || seen.count(negate(v).str())) return;
    seen.insert(std::move(key));
    lattice.add_generator(to_sparse(v), static_cast<int>(rels.size()));
    rels.push_back({f, g, conj});
    values.push_back(std::move(v));
  }
};

void materialize_ball(TranslateLattice& tl, const PhiGroup& phi, const Bounds& b) {
  if (phi.families.empty()) return;
  const Group& group = phi.ctx->group();
  const std::size_t per_family = std::max<std::size_t>(1, b.max_translates / phi.families.size());
  const std::vector<Word> ball = group_ball(group, b.translate_len, per_family);
  std::vector<ConjMove> conjs{{Word{}, Word{}}};
  for (const auto& c : phi.conjugations) {
    conjs.push_back(c);
    conjs.push_back({group.invert(c.left), group.invert(c.right)});
  }
  for (std::size_t f = 0; f < phi.families.size(); ++f)
    for (const auto& g : ball)
      for (const auto& c : conjs) tl.add(phi, f, g, c);
  tl.lattice.finalize();
}

void put_word(std::ostream& os, const Word& w) {
  for (const auto& s : w.syl) os << s.gen << '^' << s.exp << ' ';
}

std::string fingerprint(const PhiGroup& phi, const char* kind, const Bounds& b) {
  std::ostringstream os;
  os << kind << '|' << b.translate_len << '|' << b.max_translates << '|' << phi.ctx.get() << '|';
  for (const auto& g : phi.gens) {
    os << g.z.str() << ';';
    put_word(os, g.phi);
    os << ';';
    put_word(os, g.psi);
    os << '|';
  }
  for (const auto& f : phi.families) {
    os << (f.side == SphereFamily::Side::Left ? 'L' : 'R');
    for (const auto& p : f.points) {
      os << p.sign << ':';
      put_word(os, p.g);
    }
    os << '|';
  }
  for (const auto& c : phi.conjugations) {
    put_word(os, c.left);
    os << ';';
    put_word(os, c.right);
    os << '|';
  }
  return os.str();
}

template <class T, class Build>
std::shared_ptr<const T> cached(const PhiGroup& phi, const char* kind, const Bounds& b, Build build) {
  if (!phi.cache) return build();
  const std::string key = fingerprint(phi, kind, b);
  {
    std::lock_guard lock(phi.cache->mutex);
    auto it = phi.cache->entries.find(key);
    if (it != phi.cache->entries.end()) return std::static_pointer_cast<const T>(it->second);
  }
  std::shared_ptr<const T> value = build();
  std::lock_guard lock(phi.cache->mutex);
  phi.cache->entries.emplace(key, value);
  return value;
}

std::shared_ptr<const TranslateLattice> translate_lattice(const PhiGroup& phi, const Bounds& b) {
  return cached<TranslateLattice>(phi, "translates", b, [&] {
    auto tl = std::make_shared<TranslateLattice>();
    materialize_ball(*tl, phi, b);
    return std::shared_ptr<const TranslateLattice>(std::move(tl));
  });
}

std::vector<CertificateStep> translate_steps(const TranslateLattice& tl, const Combination& used) {
  std::vector<CertificateStep> out;
  for (const auto& [id, c] : used) {
    if (c == 0) continue;
    if (!c.fits_slong_p()) fail(ErrorCode::Overflow, "translate coefficient does not fit in 64 bits");
    const TranslateRel& r = tl.rels.at(id);
    CertificateStep s;
    s.kind = CertificateStep::Kind::Translate;
    s.index = r.family;
    s.power = c.get_si();
    s.left = r.g;
    s.conj_left = r.conj.left;
    s.conj_right = r.conj.right;
    out.push_back(std::move(s));
  }
  return out;
}

std::string multiset_str(const RingElement& y) {
  std::vector<std::int64_t> m;
  for (const auto& [k, c] : y.terms()) m.push_back(c < 0 ? -c : c);
  std::sort(m.begin(), m.end());
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << '}';
  return os.str();
}

// ---- abelian groups -------------------------------------------------------

using CoordLattice = BasicKeyLattice<int, std::less<int>>;

std::vector<std::int64_t> exponents(const Group& group, const Word& w) {
  std::vector<std::int64_t> v(group.rank(), 0);
  for (const auto& s : w.syl) v[s.gen] = checked_add(v[s.gen], s.exp);
  return v;
}

Word from_exponents(const Group& group, const std::vector<std::int64_t>& v) {
  std::vector<Syllable> raw;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) raw.push_back({static_cast<int>(i), v[i]});
  return group.normalize(raw);
}

CoordLattice::Vec coord_vec(const std::vector<std::int64_t>& v) {
  CoordLattice::Vec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace(static_cast<int>(i), BigInt(static_cast<long>(v[i])));
  return out;
}

std::vector<std::int64_t> residue(const CoordLattice& l, std::size_t n, const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> out(n, 0);
  for (const auto& [i, c] : l.reduce(coord_vec(v), false).remainder) {
    if (!c.fits_slong_p()) fail(ErrorCode::Overflow, "exponent does not fit in 64 bits");
    out[i] = c.get_si();
  }
  return out;
}

// Coset representatives of the group modulo the subgroup that translation
// cannot see, or nullopt when there are infinitely (or too) many.
std::optional<std::vector<Word>> abelian_translate_reps(const PhiGroup& phi, std::size_t cap) {
  const Group& group = phi.ctx->group();
  const std::size_t n = group.rank();
  CoordLattice h;
  int id = 0;
  for (const Word* w : {&phi.ctx->gamma(), &phi.ctx->delta()})
    if (!w->is_identity()) h.add_generator(coord_vec(exponents(group, *w)), id++);
  h.finalize();
  if (h.rank() < n) return std::nullopt;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> queue{std::vector<std::int64_t>(n, 0)};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t g = 0; g < n; ++g)
      for (int e : {1, -1}) {
        auto v = queue[head];
        v[g] += e;
        v = residue(h, n, v);
        if (seen.insert(v).second) queue.push_back(v);
      }
    if (queue.size() > cap) return std::nullopt;
  }
  std::vector<Word> out;
  for (const auto& v : queue) out.push_back(from_exponents(group, v));
  std::sort(out.begin(), out.end(), ShortlexLess{});
  return out;
}

// Relations of an abelian presentation: generator translations and every
// sphere translate (over coset representatives when there are finitely many,
// otherwise over a ball).
struct AbelianData {
  bool finite = false;
  std::vector<Word> translates;
  std::vector<RingElement> rel_values;
  std::vector<CertificateStep> rel_steps;
  KeyLattice lattice;
  std::optional<LatticeQuotient> quotient;
  std::map<Word, std::size_t, ShortlexLess> index;

  std::vector<BigInt> vec(const RingElement& y) const {
    std::vector<BigInt> out(index.size(), 0);
    for (const auto& [k, c] : y.terms()) out[index.at(k)] = static_cast<long>(c);
    return out;
  }
};

constexpr std::size_t kMaxQuotientBasis = 600;

std::shared_ptr<const AbelianData> build_abelian(const PhiGroup& phi, const Bounds& b) {
  auto data = std::make_shared<AbelianData>();
  const auto reps = abelian_translate_reps(phi, b.max_translates);
  data->finite = reps.has_value();
  const Group& group = phi.ctx->group();
  for (std::size_t i = 0; i < phi.gens.size(); ++i) {
    if (phi.gens[i].z.is_zero()) continue;
    CertificateStep s;
    s.kind = CertificateStep::Kind::Generator;
    s.index = i;
    data->rel_steps.push_back(s);
    data->rel_values.push_back(phi.gens[i].z);
  }
  data->translates = data->finite ? *reps : group_ball(group, b.translate_len, b.max_translates);
  for (std::size_t f = 0; f < phi.families.size(); ++f)
    for (const auto& g : data->translates) {
      RingElement v = family_translate(phi, f, g, {});
      if (v.is_zero()) continue;
      CertificateStep s;
      s.kind = CertificateStep::Kind::Translate;
      s.index = f;
      s.left = g;
      data->rel_steps.push_back(s);
      data->rel_values.push_back(std::move(v));
    }
  for (std::size_t i = 0; i < data->rel_values.size(); ++i)
    data->lattice.add_generator(to_sparse(data->rel_values[i]), static_cast<int>(i));
  data->lattice.finalize();

  if (data->finite) {
    // Every class is the class of a coset representative.
    std::set<Word, ShortlexLess> keys;
    for (const auto& g : *reps)
      if (auto k = phi.ctx->canonicalize(g)) keys.insert(*k);
    if (keys.size() <= kMaxQuotientBasis) {
      std::vector<Word> basis(keys.begin(), keys.end());
      for (std::size_t i = 0; i < basis.size(); ++i) data->index[basis[i]] = i;
      std::vector<std::vector<BigInt>> cols;
      for (const auto& v : data->rel_values) cols.push_back(data->vec(v));
      data->quotient = LatticeQuotient::build(std::move(basis), cols);
    }
  }
  return data;
}

std::shared_ptr<const AbelianData> abelian_data(const PhiGroup& phi, const Bounds& b) {
  return cached<AbelianData>(phi, "abelian", b, [&] { return build_abelian(phi, b); });
}

std::optional<DecisionResult> decide_abelian(const RingElement& y1, const RingElement& y2, const PhiGroup& phi,
                                             const DecideOptions& opts) {
  DecisionResult res;
  res.bounds = opts.bounds;
  const auto data = abelian_data(phi, opts.bounds);
  res.translates = data->rel_values.size();
  const auto red = data->lattice.reduce(to_sparse(subtract(y1, y2)));
  const bool exact = data->finite || phi.families.empty();

  if (data->quotient) {
    res.quotient = data->quotient->describe();
    if (quotient_equal(*data->quotient, data->vec(y1), data->vec(y2)) != red.remainder.empty())
      fail(ErrorCode::InvariantViolation, "Smith normal form and Hermite reduction disagree");
  }

  if (red.remainder.empty()) {
    res.verdict = Verdict::Equal;
    res.exact = exact;
    for (const auto& [id, c] : red.used) {
      if (c == 0) continue;
      if (!c.fits_slong_p()) fail(ErrorCode::Overflow, "certificate coefficient does not fit in 64 bits");
      CertificateStep s = data->rel_steps.at(id);
      s.power = c.get_si();
      res.certificate.push_back(std::move(s));
    }
    return res;
  }
  if (exact) {
    res.verdict = Verdict::Distinct;
    res.exact = true;
    res.separator = "abelian quotient (Smith normal form)";
    res.value1 = from_sparse(phi.ctx, data->lattice.reduce(to_sparse(y1), false).remainder).str();
    res.value2 = from_sparse(phi.ctx, data->lattice.reduce(to_sparse(y2), false).remainder).str();
    return res;
  }
  return std::nullopt;
}

// ---- orbit search ---------------------------------------------------------

struct Move {
  bool conj = false;
  std::size_t index = 0;  // generator or conjugation index
  bool inverse = false;
};

CertificateStep step_for(const PhiGroup& phi, const Group& group, const Move& m, bool invert) {
  const bool inv = m.inverse != invert;
  CertificateStep s;
  if (m.conj) {
    const ConjMove& c = phi.conjugations[m.index];
    s.kind = CertificateStep::Kind::Conjugate;
    s.left = inv ? group.invert(c.left) : c.left;
    s.right = inv ? group.invert(c.right) : c.right;
  } else {
    s.kind = CertificateStep::Kind::Generator;
    s.index = m.index;
    s.power = inv ? -1 : 1;
  }
  return s;
}

struct Node {
  RingElement rep;
  int parent;
  Move move;
};

struct Side {
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> index;
  std::size_t frontier_begin = 0;
  int depth = 0;
};

std::vector<Move> path_to(const Side& side, int node) {
  std::vector<Move> out;
  while (side.nodes[node].parent >= 0) {
    out.push_back(side.nodes[node].move);
    node = side.nodes[node].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool abelian_group(const Group& g) {
  return g.is_abelian() || (g.kind() == GroupKind::Free && g.rank() == 1) ||
         (g.kind() == GroupKind::FreeTimesZ && g.rank() == 2);
}

bool within_support(const RingElement& y, int support_len) {
  for (const auto& [k, c] : y.terms())
    if (k.length() > support_len) return false;
  return true;
}

}  // namespace

bool verify_decision(const RingElement& y1, const RingElement& y2, const PhiGroup& phi, const DecideOptions& opts,
                     const DecisionResult& r) {
  switch (r.verdict) {
    case Verdict::Unknown:
      return true;
    case Verdict::Equal:
      return replay(phi, r.certificate, y2) == y1;
    case Verdict::Distinct:
      break;
  }
  if (r.separator == "support-multiset")
    return is_spherical_presented(phi) && phi.families.empty() && multiset_str(y1) != multiset_str(y2);
  if (r.separator == "abelian quotient (Smith normal form)") {
    if (!abelian_group(phi.ctx->group())) return false;
    const auto data = build_abelian(phi, opts.bounds);
    return (data->finite || phi.families.empty()) &&
           !data->lattice.reduce(to_sparse(subtract(y1, y2)), false).remainder.empty();
  }
  PhiImage image;
  for (const auto& g : phi.gens) image.translations.push_back(g.z);
  for (const auto& f : phi.families) image.families.push_back(f.points);
  std::vector<Separator> seps = opts.separators;
  for (auto& s : default_separator_suite(phi.ctx->group())) seps.push_back(std::move(s));
  for (const auto& sep : seps) {
    if (sep.name != r.separator) continue;
    const SeparatorResult again = try_separate(sep, y1, y2, image);
    return again.status == SeparatorResult::Status::Distinct && again.value1 == r.value1 && again.value2 == r.value2;
  }
  return false;
}

DecisionResult decide_equal_link(const RingElement& y1, const RingElement& y2, const PhiGroup& phi,
                                 const DecideOptions& opts) {
  if (!phi.link) fail(ErrorCode::SpecMismatch, "indeterminacy group does not belong to a link");
  return decide_equal(y1, y2, phi, opts);
}

std::optional<std::string> orbit_quotient(const PhiGroup& phi, const Bounds& bounds) {
  if (!abelian_group(phi.ctx->group())) return std::nullopt;
  const auto data = abelian_data(phi, bounds);
  if (!data->quotient) return std::nullopt;
  return data->quotient->describe();
}

DecisionResult decide_equal(const RingElement& y1, const RingElement& y2, const PhiGroup& phi,
                            const DecideOptions& opts) {
  require_same_context(y1, y2);
  require_context(phi, y1);
  const Group& group = phi.ctx->group();
  DecisionResult res;
  res.bounds = opts.bounds;
  if (y1 == y2) {
    res.verdict = Verdict::Equal;
    res.exact = true;
    return res;
  }

  std::vector<SeparatorAttempt> abelian_log;
  if (abelian_group(group)) {
    if (auto r = decide_abelian(y1, y2, phi, opts)) return *r;
    abelian_log.push_back({"abelian window", "not-separated",
                           "sphere translates range over an infinite quotient; searched a window"});
  }
  res.attempts = abelian_log;

  // Homomorphic separators.
  PhiImage image;
  for (const auto& g : phi.gens) image.translations.push_back(g.z);
  for (const auto& f : phi.families) image.families.push_back(f.points);
  std::vector<Separator> seps = opts.separators;
  if (opts.default_suite)
    for (auto& s : default_separator_suite(group)) seps.push_back(std::move(s));
  for (const auto& sep : seps) {
    const SeparatorResult r = try_separate(sep, y1, y2, image);
    res.attempts.push_back({sep.name, separator_status_name(r.status), r.note});
    if (r.status == SeparatorResult::Status::Distinct) {
      res.verdict = Verdict::Distinct;
      res.exact = true;
      res.separator = sep.name;
      res.value1 = r.value1;
      res.value2 = r.value2;
      return res;
    }
  }

  // Pure conjugation preserves the multiset of coefficient magnitudes.
  if (is_spherical_presented(phi) && phi.families.empty()) {
    const std::string m1 = multiset_str(y1), m2 = multiset_str(y2);
    if (m1 != m2) {
      res.attempts.push_back({"support-multiset", "distinct", ""});
      res.verdict = Verdict::Distinct;
      res.exact = true;
      res.separator = "support-multiset";
      res.value1 = m1;
      res.value2 = m2;
      return res;
    }
    res.attempts.push_back({"support-multiset", "not-separated", ""});
  } else {
    res.attempts.push_back({"support-multiset", "inapplicable", "some generator translates"});
  }

  // Bidirectional orbit search modulo the materialized translates.
  const auto tl_ptr = translate_lattice(phi, opts.bounds);
  const TranslateLattice& tl = *tl_ptr;
  res.translates = tl.rels.size();
  auto reduce = [&](const RingElement& y) -> std::optional<RingElement> {
    if (tl.rels.empty()) return y;
    try {
      return from_sparse(phi.ctx, tl.lattice.reduce(to_sparse(y), false).remainder);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Overflow) return std::nullopt;
      throw;
    }
  };

  std::vector<PhiGen> gens = phi.gens, invs;
  for (const auto& g : phi.gens) invs.push_back(inverse(group, g));
  std::vector<ConjMove> conj_inv;
  for (const auto& c : phi.conjugations) conj_inv.push_back({group.invert(c.left), group.invert(c.right)});
  std::vector<Move> moves;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    moves.push_back({false, i, false});
    moves.push_back({false, i, true});
  }
  for (std::size_t i = 0; i < phi.conjugations.size(); ++i) {
    moves.push_back({true, i, false});
    moves.push_back({true, i, true});
  }
  auto apply_move = [&](const Move& m, const RingElement& y) {
    if (m.conj) return apply_conj(m.inverse ? conj_inv[m.index] : phi.conjugations[m.index], y);
    return act(m.inverse ? invs[m.index] : gens[m.index], y);
  };

  // Certificate: forward path from y2, then the backward path from y1 undone.
  auto certify = [&](const Side& fwd, int fnode, const Side& bwd, int bnode) -> bool {
    std::vector<CertificateStep> steps;
    for (const auto& m : path_to(fwd, fnode)) steps.push_back(step_for(phi, group, m, false));
    const auto back = path_to(bwd, bnode);
    for (auto it = back.rbegin(); it != back.rend(); ++it) steps.push_back(step_for(phi, group, *it, true));
    const RingElement reached = replay(phi, steps, y2);
    const RingElement diff = subtract(y1, reached);
    if (!diff.is_zero()) {
      const auto red = tl.lattice.reduce(to_sparse(diff));
      if (!red.remainder.empty()) return false;
      for (auto& s : translate_steps(tl, red.used)) steps.push_back(std::move(s));
    }
    if (!(replay(phi, steps, y2) == y1)) return false;
    res.certificate = std::move(steps);
    return true;
  };

  Side sides[2];  // 0: from y2 (forward), 1: from y1 (backward)
  const RingElement* roots[2] = {&y2, &y1};
  for (int s = 0; s < 2; ++s) {
    auto r = reduce(*roots[s]);
    if (!r) continue;
    const std::string key = r->str();
    sides[s].index.emplace(key, 0);
    sides[s].nodes.push_back({std::move(*r), -1, {}});
  }
  bool found = false;
  if (!sides[0].nodes.empty() && !sides[1].nodes.empty() && sides[0].nodes[0].rep == sides[1].nodes[0].rep)
    found = certify(sides[0], 0, sides[1], 0);
  std::size_t states = sides[0].nodes.size() + sides[1].nodes.size();
  bool capped = false;
  while (!found && !capped && sides[0].depth + sides[1].depth < opts.bounds.depth) {
    const std::size_t open0 = sides[0].nodes.size() - sides[0].frontier_begin;
    const std::size_t open1 = sides[1].nodes.size() - sides[1].frontier_begin;
    if (open0 == 0 && open1 == 0) break;
    const int s = (open1 < open0 && open1 > 0) || open0 == 0 ? 1 : 0;
    Side& side = sides[s];
    Side& other = sides[1 - s];
    const std::size_t begin = side.frontier_begin, end = side.nodes.size();
    side.frontier_begin = end;
    ++side.depth;
    for (std::size_t n = begin; n < end && !found && !capped; ++n) {
      for (const auto& m : moves) {
        auto child = reduce(apply_move(m, side.nodes[n].rep));
        if (!child || !within_support(*child, opts.bounds.support_len)) continue;
        std::string key = child->str();
        if (side.index.count(key)) continue;
        const int id = static_cast<int>(side.nodes.size());
        side.index.emplace(key, id);
        side.nodes.push_back({std::move(*child), static_cast<int>(n), m});
        ++states;
        if (auto it = other.index.find(key); it != other.index.end()) {
          found = s == 0 ? certify(sides[0], id, sides[1], it->second) : certify(sides[0], it->second, sides[1], id);
          if (found) break;
        }
        if (states >= opts.bounds.max_states) {
          capped = true;
          break;
        }
      }
    }
  }
  res.states = states;
  if (found) {
    res.verdict = Verdict::Equal;
    return res;
  }
  res.verdict = Verdict::Unknown;
  return res;
}

}  // namespace alink
