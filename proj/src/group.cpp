#include "alink/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "alink/error.hpp"

namespace alink {

namespace {

int letter_key(const Syllable& s) noexcept { return 2 * s.gen + (s.exp < 0 ? 1 : 0); }

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

void check_labels_distinct(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!is_valid_label(l)) fail(ErrorCode::InvalidArgument, "invalid generator label '" + l + "'");
    if (!seen.insert(l).second)
      fail(ErrorCode::InvalidArgument, "duplicate generator label '" + l + "'");
  }
}

Syllable invert_syllable(Syllable s) { return {s.gen, -s.exp}; }

}  // namespace

std::int64_t Word::length() const noexcept {
  std::int64_t n = 0;
  for (const auto& s : syl) n += abs64(s.exp);
  return n;
}

std::strong_ordering shortlex_compare(const Word& a, const Word& b) noexcept {
  const auto la = a.length(), lb = b.length();
  if (la != lb) return la <=> lb;
  std::size_t i = 0, j = 0;
  std::int64_t ra = 0, rb = 0;
  while (i < a.syl.size() && j < b.syl.size()) {
    if (ra == 0) ra = abs64(a.syl[i].exp);
    if (rb == 0) rb = abs64(b.syl[j].exp);
    const int ka = letter_key(a.syl[i]), kb = letter_key(b.syl[j]);
    if (ka != kb) return ka <=> kb;
    const auto step = std::min(ra, rb);
    ra -= step;
    rb -= step;
    if (ra == 0) ++i;
    if (rb == 0) ++j;
  }
  return std::strong_ordering::equal;
}

bool shortlex_less(const Word& a, const Word& b) noexcept {
  return shortlex_compare(a, b) == std::strong_ordering::less;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : w.syl) {
    h ^= static_cast<std::size_t>(s.gen) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(s.exp) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(label[0])) || label[0] == '_')) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::free(std::vector<std::string> labels) {
  if (labels.empty()) fail(ErrorCode::InvalidArgument, "free group needs rank >= 1");
  check_labels_distinct(labels);
  GroupSpec s;
  s.kind_ = GroupKind::Free;
  s.labels_ = std::move(labels);
  return s;
}

GroupSpec GroupSpec::free_abelian(std::vector<std::string> labels) {
  if (labels.empty()) fail(ErrorCode::InvalidArgument, "free abelian group needs rank >= 1");
  check_labels_distinct(labels);
  GroupSpec s;
  s.kind_ = GroupKind::FreeAbelian;
  s.labels_ = std::move(labels);
  return s;
}

GroupSpec GroupSpec::free_times_z(std::vector<std::string> free_labels, std::string central) {
  if (free_labels.empty()) fail(ErrorCode::InvalidArgument, "free factor needs rank >= 1");
  free_labels.push_back(std::move(central));
  check_labels_distinct(free_labels);
  GroupSpec s;
  s.kind_ = GroupKind::FreeTimesZ;
  s.labels_ = std::move(free_labels);
  return s;
}

GroupSpec GroupSpec::free_product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind_ = GroupKind::FreeProduct;
  for (auto& f : factors) {
    if (f.kind_ == GroupKind::FreeProduct) {
      for (auto& inner : f.factors_) s.factors_.push_back(inner);
    } else {
      s.factors_.push_back(std::move(f));
    }
  }
  if (s.factors_.size() < 2) fail(ErrorCode::InvalidArgument, "free product needs at least two factors");
  for (const auto& f : s.factors_)
    s.labels_.insert(s.labels_.end(), f.labels_.begin(), f.labels_.end());
  check_labels_distinct(s.labels_);
  return s;
}

std::optional<int> GroupSpec::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Letters

std::vector<int> to_letters(const Word& w) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(w.length()));
  for (const auto& s : w.syl) {
    const int l = s.exp > 0 ? s.gen + 1 : -(s.gen + 1);
    for (std::int64_t k = 0; k < abs64(s.exp); ++k) out.push_back(l);
  }
  return out;
}

Word from_letters(const std::vector<int>& letters) {
  Word w;
  for (int l : letters) {
    const int gen = (l > 0 ? l : -l) - 1;
    const std::int64_t e = l > 0 ? 1 : -1;
    if (!w.syl.empty() && w.syl.back().gen == gen && (w.syl.back().exp > 0) == (e > 0))
      w.syl.back().exp += e;
    else
      w.syl.push_back({gen, e});
  }
  return w;
}

void free_reduce_letters(std::vector<int>& letters) {
  std::size_t top = 0;
  for (int l : letters) {
    if (top > 0 && letters[top - 1] == -l)
      --top;
    else
      letters[top++] = l;
  }
  letters.resize(top);
}

// ---------------------------------------------------------------------------
// Group

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind() == GroupKind::FreeProduct) {
    int offset = 0;
    for (std::size_t f = 0; f < spec_.factors().size(); ++f) {
      const auto& fs = spec_.factors()[f];
      factors_.push_back(std::make_shared<const Group>(fs));
      offset_.push_back(offset);
      for (std::size_t k = 0; k < fs.rank(); ++k) factor_of_.push_back(static_cast<int>(f));
      offset += static_cast<int>(fs.rank());
    }
  }
}

GroupPtr make_group(GroupSpec spec) { return std::make_shared<const Group>(std::move(spec)); }

bool Group::is_abelian() const noexcept { return kind() == GroupKind::FreeAbelian; }

int Group::central_generator() const noexcept {
  return kind() == GroupKind::FreeTimesZ ? static_cast<int>(rank()) - 1 : -1;
}

Word Group::normalize(const std::vector<Syllable>& raw) const {
  for (const auto& s : raw)
    if (s.gen < 0 || static_cast<std::size_t>(s.gen) >= rank())
      fail(ErrorCode::UnknownGenerator, "generator index out of range");
  switch (kind()) {
    case GroupKind::Free: return normalize_free(raw);
    case GroupKind::FreeAbelian: return normalize_abelian(raw);
    case GroupKind::FreeTimesZ: return normalize_free_times_z(raw);
    case GroupKind::FreeProduct: return normalize_product(raw);
  }
  return {};
}

Word Group::normalize_free(const std::vector<Syllable>& raw) const {
  Word w;
  for (const auto& s : raw) {
    if (s.exp == 0) continue;
    if (!w.syl.empty() && w.syl.back().gen == s.gen) {
      w.syl.back().exp += s.exp;
      if (w.syl.back().exp == 0) w.syl.pop_back();
    } else {
      w.syl.push_back(s);
    }
  }
  return w;
}

Word Group::normalize_abelian(const std::vector<Syllable>& raw) const {
  std::vector<std::int64_t> exps(rank(), 0);
  for (const auto& s : raw) exps[static_cast<std::size_t>(s.gen)] += s.exp;
  Word w;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) w.syl.push_back({static_cast<int>(i), exps[i]});
  return w;
}

Word Group::normalize_free_times_z(const std::vector<Syllable>& raw) const {
  const int c = central_generator();
  std::vector<Syllable> free_raw;
  std::int64_t central = 0;
  for (const auto& s : raw) {
    if (s.gen == c)
      central += s.exp;
    else
      free_raw.push_back(s);
  }
  Word w = normalize_free(free_raw);
  if (central != 0) w.syl.push_back({c, central});
  return w;
}

Word Group::normalize_product(const std::vector<Syllable>& raw) const {
  std::vector<std::pair<int, Word>> stack;
  for (const auto& s : raw) {
    if (s.exp == 0) continue;
    const int f = factor_of_[static_cast<std::size_t>(s.gen)];
    Word local({Syllable{s.gen - offset_[static_cast<std::size_t>(f)], s.exp}});
    if (!stack.empty() && stack.back().first == f) {
      Word merged = factors_[static_cast<std::size_t>(f)]->multiply(stack.back().second, local);
      if (merged.is_identity())
        stack.pop_back();
      else
        stack.back().second = std::move(merged);
    } else {
      stack.emplace_back(f, factors_[static_cast<std::size_t>(f)]->normalize(local.syl));
    }
  }
  return from_blocks(stack);
}

std::vector<std::pair<int, Word>> Group::blocks(const Word& w) const {
  std::vector<std::pair<int, Word>> out;
  for (const auto& s : w.syl) {
    const int f = factor_of_[static_cast<std::size_t>(s.gen)];
    Syllable local{s.gen - offset_[static_cast<std::size_t>(f)], s.exp};
    if (out.empty() || out.back().first != f) out.emplace_back(f, Word{});
    out.back().second.syl.push_back(local);
  }
  return out;
}

Word Group::from_blocks(const std::vector<std::pair<int, Word>>& blocks) const {
  Word w;
  for (const auto& [f, local] : blocks)
    for (const auto& s : local.syl)
      w.syl.push_back({s.gen + offset_[static_cast<std::size_t>(f)], s.exp});
  return w;
}

Word Group::multiply(const Word& a, const Word& b) const {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  std::vector<Syllable> raw;
  raw.reserve(a.syl.size() + b.syl.size());
  raw.insert(raw.end(), a.syl.begin(), a.syl.end());
  raw.insert(raw.end(), b.syl.begin(), b.syl.end());
  return normalize(raw);
}

Word Group::multiply(std::initializer_list<const Word*> factors) const {
  std::vector<Syllable> raw;
  for (const Word* w : factors) raw.insert(raw.end(), w->syl.begin(), w->syl.end());
  return normalize(raw);
}

Word Group::invert(const Word& a) const {
  std::vector<Syllable> raw;
  raw.reserve(a.syl.size());
  for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it) raw.push_back(invert_syllable(*it));
  return normalize(raw);
}

Word Group::power(const Word& a, std::int64_t n) const {
  if (n == 0 || a.is_identity()) return {};
  const Word base = n > 0 ? a : invert(a);
  const std::int64_t k = abs64(n);
  std::vector<Syllable> raw;
  raw.reserve(base.syl.size() * static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) raw.insert(raw.end(), base.syl.begin(), base.syl.end());
  return normalize(raw);
}

Word Group::conjugate(const Word& a, const Word& by) const {
  const Word inv = invert(by);
  return multiply({&by, &a, &inv});
}

bool Group::commutes(const Word& a, const Word& b) const {
  return multiply(a, b) == multiply(b, a);
}

Word Group::generator(int gen, std::int64_t exp) const { return normalize({Syllable{gen, exp}}); }

Word Group::free_part(const Word& w) const {
  if (kind() != GroupKind::FreeTimesZ) return w;
  Word f = w;
  if (!f.syl.empty() && f.syl.back().gen == central_generator()) f.syl.pop_back();
  return f;
}

std::int64_t Group::central_exponent(const Word& w) const {
  if (kind() != GroupKind::FreeTimesZ || w.syl.empty()) return 0;
  return w.syl.back().gen == central_generator() ? w.syl.back().exp : 0;
}

Word Group::with_central(const Word& free_part, std::int64_t central) const {
  Word w = free_part;
  if (central != 0) w.syl.push_back({central_generator(), central});
  return w;
}

std::pair<Word, Word> Group::cyclic_split(const Word& g) const {
  if (kind() == GroupKind::Free) {
    auto L = to_letters(g);
    std::size_t i = 0, j = L.size();
    while (j - i >= 2 && L[i] == -L[j - 1]) {
      ++i;
      --j;
    }
    std::vector<int> u(L.begin(), L.begin() + static_cast<std::ptrdiff_t>(i));
    std::vector<int> c(L.begin() + static_cast<std::ptrdiff_t>(i), L.begin() + static_cast<std::ptrdiff_t>(j));
    return {from_letters(u), from_letters(c)};
  }
  if (kind() == GroupKind::FreeProduct) {
    Word u;
    Word c = g;
    for (;;) {
      auto bl = blocks(c);
      if (bl.size() < 2 || bl.front().first != bl.back().first) break;
      const Word first = from_blocks({bl.front()});
      u = multiply(u, first);
      const Word inv = invert(first);
      c = multiply({&inv, &c, &first});
    }
    return {u, c};
  }
  return {Word{}, g};
}

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(abs64(a), abs64(b)); }

// Smallest p dividing n such that seq is p-periodic.
template <class Seq>
std::size_t smallest_period(const Seq& seq) {
  const std::size_t n = seq.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t k = p; k < n && ok; ++k) ok = seq[k] == seq[k - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

std::pair<Word, std::int64_t> Group::maximal_root(const Word& g) const {
  if (g.is_identity()) fail(ErrorCode::IdentityInput, "maximal_root of the identity");
  switch (kind()) {
    case GroupKind::Free: {
      auto [u, c] = cyclic_split(g);
      const auto cl = to_letters(c);
      const std::size_t p = smallest_period(cl);
      std::vector<int> r(cl.begin(), cl.begin() + static_cast<std::ptrdiff_t>(p));
      const Word rw = from_letters(r);
      const Word ui = invert(u);
      return {multiply({&u, &rw, &ui}), static_cast<std::int64_t>(cl.size() / p)};
    }
    case GroupKind::FreeAbelian: {
      std::int64_t d = 0;
      for (const auto& s : g.syl) d = gcd64(d, s.exp);
      Word r = g;
      for (auto& s : r.syl) s.exp /= d;
      return {r, d};
    }
    case GroupKind::FreeTimesZ: {
      const Word f = free_part(g);
      const std::int64_t e = central_exponent(g);
      if (f.is_identity()) return {generator(central_generator(), e > 0 ? 1 : -1), abs64(e)};
      Group free_group(GroupSpec::free(std::vector<std::string>(spec_.labels().begin(), spec_.labels().end() - 1)));
      auto [rho, p] = free_group.maximal_root(f);
      const std::int64_t n = gcd64(p, e);
      return {with_central(free_group.power(rho, p / n), e / n), n};
    }
    case GroupKind::FreeProduct: {
      auto [u, c] = cyclic_split(g);
      const auto bl = blocks(c);
      const Word ui = invert(u);
      if (bl.size() == 1) {
        const Group& F = *factors_[static_cast<std::size_t>(bl[0].first)];
        auto [r, n] = F.maximal_root(bl[0].second);
        const Word rg = from_blocks({{bl[0].first, r}});
        return {multiply({&u, &rg, &ui}), n};
      }
      const std::size_t p = smallest_period(bl);
      std::vector<std::pair<int, Word>> rb(bl.begin(), bl.begin() + static_cast<std::ptrdiff_t>(p));
      const Word rw = from_blocks(rb);
      return {multiply({&u, &rw, &ui}), static_cast<std::int64_t>(bl.size() / p)};
    }
  }
  return {g, 1};
}

std::vector<Word> Group::centralizer_generators(const Word& g) const {
  std::vector<Word> all;
  for (std::size_t i = 0; i < rank(); ++i) all.push_back(generator(static_cast<int>(i)));
  if (g.is_identity()) return all;
  switch (kind()) {
    case GroupKind::Free: return {maximal_root(g).first};
    case GroupKind::FreeAbelian: return all;
    case GroupKind::FreeTimesZ: {
      const Word f = free_part(g);
      if (f.is_identity()) return all;
      Group free_group(GroupSpec::free(std::vector<std::string>(spec_.labels().begin(), spec_.labels().end() - 1)));
      return {free_group.maximal_root(f).first, generator(central_generator())};
    }
    case GroupKind::FreeProduct: {
      auto [u, c] = cyclic_split(g);
      const auto bl = blocks(c);
      if (bl.size() >= 2) return {maximal_root(g).first};
      const int f = bl[0].first;
      const Word ui = invert(u);
      std::vector<Word> out;
      for (const Word& z : factors_[static_cast<std::size_t>(f)]->centralizer_generators(bl[0].second)) {
        const Word zg = from_blocks({{f, z}});
        out.push_back(multiply({&u, &zg, &ui}));
      }
      return out;
    }
  }
  fail(ErrorCode::Unsupported, "centralizer not available for this group kind");
}

bool Group::in_cyclic_subgroup(const Word& g, const Word& h) const {
  if (g.is_identity()) return true;
  if (h.is_identity()) return false;
  auto [rg, pg] = maximal_root(g);
  auto [rh, ph] = maximal_root(h);
  if (rg == rh) return pg % ph == 0;
  if (rg == invert(rh)) return pg % ph == 0;
  return false;
}

Word Group::parse(std::string_view text) const {
  std::vector<Syllable> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    if (tok == "1") continue;
    std::string_view label = tok;
    std::int64_t exp = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      label = tok.substr(0, caret);
      auto num = tok.substr(caret + 1);
      if (!num.empty() && num.front() == '+') num.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), exp);
      if (ec != std::errc() || ptr != num.data() + num.size())
        fail(ErrorCode::ParseError, "bad exponent in '" + std::string(tok) + "'");
    }
    auto idx = spec_.find(label);
    if (!idx) fail(ErrorCode::UnknownGenerator, "unknown generator '" + std::string(label) + "'");
    raw.push_back({*idx, exp});
  }
  return normalize(raw);
}

std::string Group::format(const Word& w) const {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& s : w.syl) {
    if (!first) os << ' ';
    first = false;
    os << spec_.labels()[static_cast<std::size_t>(s.gen)];
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupElement

bool same_group(const Group& a, const Group& b) noexcept { return &a == &b || a.spec() == b.spec(); }

namespace {
void require_same(const GroupElement& a, const GroupElement& b) {
  if (!a.group_ptr() || !b.group_ptr() || !same_group(a.group(), b.group()))
    fail(ErrorCode::SpecMismatch, "group elements come from different groups");
}
}  // namespace

std::string GroupElement::str() const { return group_ ? group_->format(word_) : "1"; }

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (!a.group_ || !b.group_) return a.word_ == b.word_;
  return same_group(*a.group_, *b.group_) && a.word_ == b.word_;
}

GroupElement normalize(const GroupPtr& group, std::string_view symbols) {
  return {group, group->parse(symbols)};
}

GroupElement normalize(const GroupPtr& group,
                       const std::vector<std::pair<std::string, std::int64_t>>& symbols) {
  std::vector<Syllable> raw;
  for (const auto& [label, exp] : symbols) {
    auto idx = group->spec().find(label);
    if (!idx) fail(ErrorCode::UnknownGenerator, "unknown generator '" + label + "'");
    raw.push_back({*idx, exp});
  }
  return {group, group->normalize(raw)};
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_same(a, b);
  return {a.group_ptr(), a.group().multiply(a.word(), b.word())};
}

GroupElement invert(const GroupElement& a) { return {a.group_ptr(), a.group().invert(a.word())}; }

GroupElement conjugate(const GroupElement& a, const GroupElement& by) {
  require_same(a, by);
  return {a.group_ptr(), a.group().conjugate(a.word(), by.word())};
}

std::vector<GroupElement> centralizer_generators(const GroupElement& gamma) {
  std::vector<GroupElement> out;
  for (auto& w : gamma.group().centralizer_generators(gamma.word())) out.emplace_back(gamma.group_ptr(), std::move(w));
  return out;
}

std::pair<GroupElement, std::int64_t> maximal_root(const GroupElement& g) {
  auto [r, n] = g.group().maximal_root(g.word());
  return {GroupElement(g.group_ptr(), std::move(r)), n};
}

}  // namespace alink
