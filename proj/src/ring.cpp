#include "alink/ring.hpp"

#include <cctype>
#include <charconv>
#include <mutex>
#include <sstream>

#include "alink/error.hpp"
#include "canonical.hpp"

namespace alink {

namespace {

constexpr std::size_t kCacheLimit = std::size_t{1} << 21;

const Word& shorter(const Word& a, const Word& b) { return shortlex_less(b, a) ? b : a; }

}  // namespace

const char* flavor_name(Flavor f) noexcept {
  switch (f) {
    case Flavor::Plain: return "lambda";
    case Flavor::Tilde: return "lambda-tilde";
    case Flavor::TildeGamma: return "lambda-tilde-gamma";
    case Flavor::Gamma: return "lambda-gamma";
    case Flavor::TwoSided: return "lambda-gamma-delta";
    case Flavor::TildePi: return "lambda-tilde-pi";
  }
  return "?";
}

RingContext::RingContext(Flavor flavor, GroupPtr group, Word gamma, Word delta)
    : flavor_(flavor), group_(std::move(group)), gamma_(std::move(gamma)), delta_(std::move(delta)) {}

ContextPtr RingContext::plain(GroupPtr group) {
  return std::make_shared<RingContext>(Flavor::Plain, std::move(group), Word{}, Word{});
}

ContextPtr RingContext::tilde(GroupPtr group) {
  return std::make_shared<RingContext>(Flavor::Tilde, std::move(group), Word{}, Word{});
}

ContextPtr RingContext::tilde_gamma(GroupPtr group, Word gamma) {
  if (gamma.is_identity()) return tilde(std::move(group));
  Word delta = gamma;
  return std::make_shared<RingContext>(Flavor::TildeGamma, std::move(group), std::move(gamma), std::move(delta));
}

ContextPtr RingContext::gamma_cosets(GroupPtr group, Word gamma) {
  if (gamma.is_identity()) return plain(std::move(group));
  Word delta = gamma;
  return std::make_shared<RingContext>(Flavor::Gamma, std::move(group), std::move(gamma), std::move(delta));
}

ContextPtr RingContext::two_sided(GroupPtr group, Word gamma, Word delta) {
  if (gamma.is_identity() && delta.is_identity()) return plain(std::move(group));
  return std::make_shared<RingContext>(Flavor::TwoSided, std::move(group), std::move(gamma), std::move(delta));
}

ContextPtr RingContext::tilde_pi(GroupPtr group) {
  return std::make_shared<RingContext>(Flavor::TildePi, std::move(group), Word{}, Word{});
}

bool RingContext::kills_trivial() const noexcept {
  return flavor_ == Flavor::Tilde || flavor_ == Flavor::TildeGamma || flavor_ == Flavor::TildePi;
}

bool RingContext::has_inversion() const noexcept { return kills_trivial(); }

bool RingContext::same_as(const RingContext& other) const {
  if (this == &other) return true;
  return flavor_ == other.flavor_ && same_group(*group_, *other.group_) && gamma_ == other.gamma_ &&
         delta_ == other.delta_;
}

std::string RingContext::describe() const {
  std::ostringstream os;
  os << flavor_name(flavor_);
  if (flavor_ == Flavor::TildeGamma || flavor_ == Flavor::Gamma) os << " gamma " << group_->format(gamma_);
  if (flavor_ == Flavor::TwoSided)
    os << " gamma " << group_->format(gamma_) << " delta " << group_->format(delta_);
  return os.str();
}

std::optional<Word> RingContext::canonicalize(const GroupElement& g) const {
  if (!g.group_ptr() || !same_group(g.group(), *group_))
    fail(ErrorCode::SpecMismatch, "element does not belong to the context's group");
  return canonicalize(g.word());
}

std::optional<Word> RingContext::canonicalize(const Word& g) const {
  if (flavor_ == Flavor::Plain) return g;
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
  }
  auto result = compute(g);
  std::unique_lock lock(mutex_);
  if (cache_.size() >= kCacheLimit) cache_.clear();
  cache_.emplace(g, result);
  return result;
}

std::optional<Word> RingContext::compute(const Word& g) const {
  const Group& G = *group_;
  switch (flavor_) {
    case Flavor::Plain: return g;
    case Flavor::Tilde: {
      if (g.is_identity()) return std::nullopt;
      return shorter(g, G.invert(g));
    }
    case Flavor::TildeGamma: {
      const Word a = detail::min_double_coset(G, g, gamma_, gamma_);
      if (a.is_identity()) return std::nullopt;
      const Word b = detail::min_double_coset(G, G.invert(g), gamma_, gamma_);
      return shorter(a, b);
    }
    case Flavor::Gamma: return detail::min_double_coset(G, g, gamma_, gamma_);
    case Flavor::TwoSided: return detail::min_double_coset(G, g, gamma_, delta_);
    case Flavor::TildePi: {
      if (g.is_identity()) return std::nullopt;
      const Word a = detail::min_conjugate(G, g);
      const Word b = detail::min_conjugate(G, G.invert(g));
      return shorter(a, b);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "coefficient overflow");
  return r;
}

RingElement RingElement::of(ContextPtr ctx, const Word& g, std::int64_t coeff) {
  RingElement r(std::move(ctx));
  r.add_term(g, coeff);
  return r;
}

RingElement RingElement::from_terms(ContextPtr ctx, const std::vector<std::pair<Word, std::int64_t>>& terms) {
  RingElement r(std::move(ctx));
  for (const auto& [g, c] : terms) r.add_term(g, c);
  return r;
}

std::int64_t RingElement::coefficient(const Word& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

void RingElement::add_term(const Word& g, std::int64_t coeff) {
  if (coeff == 0) return;
  auto key = ctx_->canonicalize(g);
  if (key) add_key(*key, coeff);
}

void RingElement::add_key(const Word& key, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (inserted) return;
  it->second = checked_add(it->second, coeff);
  if (it->second == 0) terms_.erase(it);
}

std::string RingElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << ' ';
    first = false;
    os << (c > 0 ? "+" : "") << c << "*[" << ctx_->group().format(key) << ']';
  }
  return os.str();
}

bool operator==(const RingElement& a, const RingElement& b) {
  if (a.ctx_ && b.ctx_ && !a.ctx_->same_as(*b.ctx_)) return false;
  return a.terms_ == b.terms_;
}

void require_same_context(const RingElement& a, const RingElement& b) {
  if (!a.context() || !b.context() || !a.context()->same_as(*b.context()))
    fail(ErrorCode::SpecMismatch, "ring elements live in different contexts");
}

RingElement add(const RingElement& a, const RingElement& b) {
  require_same_context(a, b);
  RingElement r = a;
  for (const auto& [k, c] : b.terms()) r.add_key(k, c);
  return r;
}

RingElement subtract(const RingElement& a, const RingElement& b) {
  require_same_context(a, b);
  RingElement r = a;
  for (const auto& [k, c] : b.terms()) r.add_key(k, checked_mul(c, -1));
  return r;
}

RingElement negate(const RingElement& a) { return scale(-1, a); }

RingElement scale(std::int64_t n, const RingElement& a) {
  RingElement r(a.context());
  if (n == 0) return r;
  for (const auto& [k, c] : a.terms()) r.add_key(k, checked_mul(n, c));
  return r;
}

namespace {

void require_centralizes(const Group& G, const Word& phi, const Word& gamma, const char* what) {
  if (!G.commutes(phi, gamma))
    fail(ErrorCode::NotInCentralizer,
         std::string(what) + " " + G.format(phi) + " does not commute with " + G.format(gamma));
}

}  // namespace

RingElement conj_act(const Word& phi, const RingElement& y) {
  const RingContext& ctx = *y.context();
  const Group& G = ctx.group();
  if (ctx.flavor() == Flavor::TildeGamma || ctx.flavor() == Flavor::Gamma || ctx.flavor() == Flavor::TwoSided) {
    require_centralizes(G, phi, ctx.gamma(), "conjugator");
    require_centralizes(G, phi, ctx.delta(), "conjugator");
  }
  RingElement r(y.context());
  if (phi.is_identity()) return y;
  const Word inv = G.invert(phi);
  for (const auto& [k, c] : y.terms()) r.add_term(G.multiply({&phi, &k, &inv}), c);
  return r;
}

RingElement biact(const Word& phi, const Word& psi, const RingElement& y) {
  const RingContext& ctx = *y.context();
  const Group& G = ctx.group();
  require_centralizes(G, phi, ctx.gamma(), "left factor");
  require_centralizes(G, psi, ctx.delta(), "right factor");
  if (phi.is_identity() && psi.is_identity()) return y;
  RingElement r(y.context());
  const Word inv = G.invert(psi);
  for (const auto& [k, c] : y.terms()) r.add_term(G.multiply({&phi, &k, &inv}), c);
  return r;
}

RingElement change_context(const RingElement& y, const ContextPtr& target) {
  if (!same_group(y.context()->group(), target->group()))
    fail(ErrorCode::SpecMismatch, "contexts are over different groups");
  RingElement r(target);
  for (const auto& [k, c] : y.terms()) r.add_term(k, c);
  return r;
}

RingElement project_pi(const RingElement& y) {
  const Flavor f = y.context()->flavor();
  if (f != Flavor::Plain && f != Flavor::Tilde && f != Flavor::TildePi)
    fail(ErrorCode::SpecMismatch, "project_pi needs an element of lambda or lambda-tilde");
  return change_context(y, RingContext::tilde_pi(y.context()->group_ptr()));
}

RingElement parse_ring_element(const ContextPtr& ctx, std::string_view text) {
  RingElement r(ctx);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "0") return r;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::ParseError, "ring element '" + std::string(text) + "': " + why);
  };
  while (skip(), i < text.size()) {
    std::int64_t sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    std::int64_t coeff = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, coeff);
      if (ec != std::errc()) bad("bad coefficient");
      (void)ptr;
      i = j;
      skip();
      if (i >= text.size() || text[i] != '*') bad("expected '*' after coefficient");
      ++i;
      skip();
    }
    if (i >= text.size() || text[i] != '[') bad("expected '['");
    const std::size_t close = text.find(']', i);
    if (close == std::string_view::npos) bad("missing ']'");
    const Word g = ctx->group().parse(text.substr(i + 1, close - i - 1));
    r.add_term(g, checked_mul(sign, coeff));
    i = close + 1;
  }
  return r;
}

}  // namespace alink
