#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alink/group.hpp"

namespace alink {

enum class Flavor {
  Plain,       // Z[pi]
  Tilde,       // g ~ g^-1, trivial class killed
  TildeGamma,  // <gamma> \ pi / <gamma>, inversion, trivial class killed
  Gamma,       // <gamma> \ pi / <gamma>, nothing else (home of sphere pairings)
  TwoSided,    // <gamma> \ pi / <delta>, no inversion, no kill
  TildePi,     // conjugacy classes mod inversion, trivial class killed
};

const char* flavor_name(Flavor f) noexcept;

class RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

class RingContext {
 public:
  static ContextPtr plain(GroupPtr group);
  static ContextPtr tilde(GroupPtr group);
  /// gamma = 1 degenerates to the Tilde flavor.
  static ContextPtr tilde_gamma(GroupPtr group, Word gamma);
  /// gamma = 1 degenerates to Plain.
  static ContextPtr gamma_cosets(GroupPtr group, Word gamma);
  /// gamma = delta = 1 degenerates to Plain.
  static ContextPtr two_sided(GroupPtr group, Word gamma, Word delta);
  static ContextPtr tilde_pi(GroupPtr group);

  Flavor flavor() const noexcept { return flavor_; }
  const Group& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const Word& gamma() const noexcept { return gamma_; }
  const Word& delta() const noexcept { return delta_; }
  bool kills_trivial() const noexcept;
  bool has_inversion() const noexcept;

  /// Shortlex-least element of the orbit of g, or nullopt for the zero class.
  std::optional<Word> canonicalize(const Word& g) const;
  std::optional<Word> canonicalize(const GroupElement& g) const;

  /// The same quotient over the same group (not pointer identity).
  bool same_as(const RingContext& other) const;
  std::string describe() const;

  RingContext(Flavor flavor, GroupPtr group, Word gamma, Word delta);

 private:
  std::optional<Word> compute(const Word& g) const;

  Flavor flavor_;
  GroupPtr group_;
  Word gamma_;
  Word delta_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Word, std::optional<Word>, WordHash> cache_;
};

using TermMap = std::map<Word, std::int64_t, ShortlexLess>;

// Finite integer combination of canonical keys. Keys never include the zero
// class and coefficients are never zero.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static RingElement of(ContextPtr ctx, const Word& g, std::int64_t coeff = 1);
  static RingElement from_terms(ContextPtr ctx,
                                const std::vector<std::pair<Word, std::int64_t>>& terms);

  const ContextPtr& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t support_size() const noexcept { return terms_.size(); }
  std::int64_t coefficient(const Word& key) const;

  /// Adds coeff times the class of an arbitrary (not yet canonical) word.
  void add_term(const Word& g, std::int64_t coeff);
  /// Adds coeff to an already canonical key.
  void add_key(const Word& key, std::int64_t coeff);

  /// "+1*[x] -1*[x y]", "0" for zero, "[1]" for the identity key.
  std::string str() const;

  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  ContextPtr ctx_;
  TermMap terms_;
};

void require_same_context(const RingElement& a, const RingElement& b);

RingElement add(const RingElement& a, const RingElement& b);
RingElement subtract(const RingElement& a, const RingElement& b);
RingElement negate(const RingElement& a);
RingElement scale(std::int64_t n, const RingElement& a);

/// y -> phi y phi^-1, termwise. In coset flavors phi must centralize gamma
/// (and delta), otherwise NotInCentralizer.
RingElement conj_act(const Word& phi, const RingElement& y);
/// y -> phi y psi^-1 in a two-sided context; phi in zeta(gamma), psi in zeta(delta).
RingElement biact(const Word& phi, const Word& psi, const RingElement& y);
/// Re-reads every key in a coarser quotient of the same group (e.g. Gamma to
/// TildeGamma, Tilde to TildePi).
RingElement change_context(const RingElement& y, const ContextPtr& target);
/// Tilde -> TildePi.
RingElement project_pi(const RingElement& y);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Parses the serialized form produced by str(); words are normalized and
/// canonicalized in ctx.
RingElement parse_ring_element(const ContextPtr& ctx, std::string_view text);

}  // namespace alink
