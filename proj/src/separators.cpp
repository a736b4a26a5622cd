#include "alink/separators.hpp"

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "alink/error.hpp"

namespace alink {

namespace {

std::int64_t reduce_mod(std::int64_t v, std::int64_t m) {
  if (m == 0) return v;
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

std::string tuple_str(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

using CoordLattice = BasicKeyLattice<int, std::less<int>>;

// The abelian target modulo the images of gamma/delta, with the source
// flavor's inversion and trivial-class rules.
class PushedSpace {
 public:
  PushedSpace(const Separator& sep, const RingContext& ctx) : sep_(sep) {
    const std::size_t n = sep.dimension();
    int id = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (sep.moduli[i] > 0) base_.add_generator({{static_cast<int>(i), BigInt(static_cast<long>(sep.moduli[i]))}}, id++);
    auto add_image = [&](const Word& w) {
      if (!w.is_identity()) base_.add_generator(sparse(sep.image(w)), id++);
    };
    switch (ctx.flavor()) {
      case Flavor::TildeGamma:
      case Flavor::Gamma:
        add_image(ctx.gamma());
        break;
      case Flavor::TwoSided:
        add_image(ctx.gamma());
        add_image(ctx.delta());
        break;
      default:
        break;
    }
    base_.finalize();
    inversion_ = ctx.has_inversion();
    kill_ = ctx.kills_trivial();
  }

  std::optional<PushedKey> canon(const std::vector<std::int64_t>& a) const {
    PushedKey best = residue(a);
    if (inversion_) {
      std::vector<std::int64_t> neg(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
      PushedKey other = residue(neg);
      if (other < best) best = std::move(other);
    }
    if (kill_) {
      bool zero = true;
      for (auto c : best) zero = zero && c == 0;
      if (zero) return std::nullopt;
    }
    return best;
  }

  /// Residue of a modulo the base lattice (no inversion).
  PushedKey residue(const std::vector<std::int64_t>& a) const {
    const auto r = base_.reduce(sparse(a), false).remainder;
    PushedKey out(a.size(), 0);
    for (const auto& [i, c] : r) {
      if (!c.fits_slong_p()) fail(ErrorCode::Overflow, "pushed coordinate does not fit in 64 bits");
      out[i] = c.get_si();
    }
    return out;
  }

  bool finite() const { return base_.rank() == sep_.dimension(); }

 private:
  static CoordLattice::Vec sparse(const std::vector<std::int64_t>& a) {
    CoordLattice::Vec v;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) v.emplace(static_cast<int>(i), BigInt(static_cast<long>(a[i])));
    return v;
  }

  const Separator& sep_;
  CoordLattice base_;
  bool inversion_ = false;
  bool kill_ = false;
};

void add_pushed(PushedVec& v, const PushedKey& k, const BigInt& c) {
  if (c == 0) return;
  auto it = v.find(k);
  if (it == v.end()) {
    v.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

PushedVec push_with(const PushedSpace& space, const Separator& sep, const RingElement& y) {
  PushedVec out;
  for (const auto& [key, c] : y.terms())
    if (auto k = space.canon(sep.image(key))) add_pushed(out, *k, BigInt(static_cast<long>(c)));
  return out;
}

std::vector<std::int64_t> add_vec(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

constexpr std::size_t kMaxTranslates = 20000;

}  // namespace

bool Separator::finite_target() const noexcept {
  for (auto m : moduli)
    if (m == 0) return false;
  return true;
}

std::vector<std::int64_t> Separator::image(const Word& w) const {
  std::vector<std::int64_t> out(dimension(), 0);
  for (const auto& s : w.syl) {
    const auto& img = images.at(s.gen);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(out[i], checked_mul(s.exp, img[i]));
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce_mod(out[i], moduli[i]);
  return out;
}

std::string Separator::describe(const Group& group) const {
  std::ostringstream os;
  for (std::size_t g = 0; g < images.size(); ++g)
    os << (g ? " " : "") << group.spec().labels()[g] << " -> " << tuple_str(images[g]);
  os << " mod " << tuple_str(moduli);
  return os.str();
}

Separator make_separator(const Group& group, std::string name, std::vector<std::vector<std::int64_t>> images,
                         std::vector<std::int64_t> moduli) {
  if (moduli.empty()) fail(ErrorCode::InvalidArgument, "separator '" + name + "' has an empty target");
  if (images.size() != group.rank())
    fail(ErrorCode::InvalidArgument, "separator '" + name + "' must give an image for every generator");
  for (auto m : moduli)
    if (m < 0) fail(ErrorCode::InvalidArgument, "separator '" + name + "' has a negative modulus");
  for (auto& img : images) {
    if (img.size() != moduli.size())
      fail(ErrorCode::InvalidArgument, "separator '" + name + "' image length differs from the target dimension");
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = reduce_mod(img[i], moduli[i]);
  }
  return Separator{std::move(name), std::move(moduli), std::move(images)};
}

Separator abelianization(const Group& group) {
  const std::size_t r = group.rank();
  std::vector<std::vector<std::int64_t>> images(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) images[i][i] = 1;
  return make_separator(group, "abelianization", std::move(images), std::vector<std::int64_t>(r, 0));
}

Separator cyclic_reduction(const Group& group, std::int64_t m) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "cyclic reduction needs m >= 2");
  const std::size_t r = group.rank();
  std::vector<std::vector<std::int64_t>> images(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) images[i][i] = 1;
  return make_separator(group, "abelianization mod " + std::to_string(m), std::move(images),
                        std::vector<std::int64_t>(r, m));
}

std::vector<Separator> default_separator_suite(const Group& group) {
  std::vector<Separator> out{abelianization(group)};
  for (std::int64_t m = 2; m <= 12; ++m) out.push_back(cyclic_reduction(group, m));
  return out;
}

PushedVec push_forward(const Separator& sep, const RingElement& y) {
  if (sep.images.size() != y.context()->group().rank())
    fail(ErrorCode::SpecMismatch, "separator '" + sep.name + "' is defined on a different group");
  const PushedSpace space(sep, *y.context());
  return push_with(space, sep, y);
}

std::string format_pushed(const PushedVec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    if (!first) os << ' ';
    first = false;
    os << (c > 0 ? "+" : "") << c.get_str() << '*' << tuple_str(k);
  }
  return os.str();
}

const char* separator_status_name(SeparatorResult::Status s) noexcept {
  switch (s) {
    case SeparatorResult::Status::Distinct:
      return "distinct";
    case SeparatorResult::Status::NotSeparated:
      return "not-separated";
    case SeparatorResult::Status::Inapplicable:
      return "inapplicable";
  }
  return "?";
}

SeparatorResult try_separate(const Separator& sep, const RingElement& y1, const RingElement& y2,
                             const PhiImage& phi) {
  require_same_context(y1, y2);
  const RingContext& ctx = *y1.context();
  if (sep.images.size() != ctx.group().rank())
    fail(ErrorCode::SpecMismatch, "separator '" + sep.name + "' is defined on a different group");
  SeparatorResult res;
  res.name = sep.name;
  const PushedSpace space(sep, ctx);

  using RelLattice = BasicKeyLattice<PushedKey, std::less<PushedKey>>;
  RelLattice rel;
  int id = 0;
  for (const auto& z : phi.translations) {
    const PushedVec v = push_with(space, sep, z);
    if (!v.empty()) rel.add_generator(RelLattice::Vec(v.begin(), v.end()), id++);
  }
  if (!phi.families.empty()) {
    if (!space.finite()) {
      res.status = SeparatorResult::Status::Inapplicable;
      res.note = "sphere translates range over an infinite image";
      return res;
    }
    // Every translate a + L of the image of the group.
    std::set<PushedKey> seen;
    std::vector<PushedKey> queue{space.residue(std::vector<std::int64_t>(sep.dimension(), 0))};
    seen.insert(queue.front());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& img : sep.images)
        for (int sign : {1, -1}) {
          std::vector<std::int64_t> step(img.size());
          for (std::size_t i = 0; i < img.size(); ++i) step[i] = sign * img[i];
          PushedKey next = space.residue(add_vec(queue[head], step));
          if (seen.insert(next).second) queue.push_back(std::move(next));
        }
      if (queue.size() > kMaxTranslates) {
        res.status = SeparatorResult::Status::Inapplicable;
        res.note = "image too large to enumerate sphere translates";
        return res;
      }
    }
    for (const auto& points : phi.families)
      for (const auto& a : queue) {
        PushedVec v;
        for (const auto& p : points)
          if (auto k = space.canon(add_vec(a, sep.image(p.g)))) add_pushed(v, *k, BigInt(p.sign));
        if (!v.empty()) rel.add_generator(RelLattice::Vec(v.begin(), v.end()), id++);
      }
  }
  rel.finalize();
  const PushedVec p1 = push_with(space, sep, y1), p2 = push_with(space, sep, y2);
  const auto r1 = rel.reduce(RelLattice::Vec(p1.begin(), p1.end()), false).remainder;
  const auto r2 = rel.reduce(RelLattice::Vec(p2.begin(), p2.end()), false).remainder;
  if (r1 == r2) {
    res.status = SeparatorResult::Status::NotSeparated;
    return res;
  }
  res.status = SeparatorResult::Status::Distinct;
  res.value1 = format_pushed(PushedVec(r1.begin(), r1.end()));
  res.value2 = format_pushed(PushedVec(r2.begin(), r2.end()));
  return res;
}

}  // namespace alink
