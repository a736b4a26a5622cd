#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "alink/lattice.hpp"
#include "alink/linking.hpp"
#include "alink/ring.hpp"

namespace alink {

// A homomorphism from a group to Z^r + Z_m1 + ... given by generator images.
// Coordinate i is taken modulo moduli[i]; modulus 0 means a free coordinate.
struct Separator {
  std::string name;
  std::vector<std::int64_t> moduli;
  std::vector<std::vector<std::int64_t>> images;  // one per source generator

  std::size_t dimension() const noexcept { return moduli.size(); }
  bool finite_target() const noexcept;
  std::vector<std::int64_t> image(const Word& w) const;
  /// Scenario syntax: "x -> (1,0) y -> (0,1) mod (0,3)".
  std::string describe(const Group& group) const;
};

/// Validates shapes and reduces the images (InvalidArgument).
Separator make_separator(const Group& group, std::string name, std::vector<std::vector<std::int64_t>> images,
                         std::vector<std::int64_t> moduli);
Separator abelianization(const Group& group);
/// Abelianization followed by reduction mod m in every coordinate.
Separator cyclic_reduction(const Group& group, std::int64_t m);
/// Abelianization, then Z_m for m = 2..12.
std::vector<Separator> default_separator_suite(const Group& group);

using PushedKey = std::vector<std::int64_t>;
using PushedVec = std::map<PushedKey, BigInt>;

/// Image of y in the abelian analogue of its ring: classes of the target
/// modulo the images of gamma (and delta), with inversion and the trivial
/// class handled as in the source flavor.
PushedVec push_forward(const Separator& sep, const RingElement& y);
std::string format_pushed(const PushedVec& v);

// The data of an indeterminacy group that survives in an abelian target.
// Conjugations act trivially there, so only the translation parts matter.
struct PhiImage {
  std::vector<RingElement> translations;  // z of every generator
  std::vector<PointList> families;        // point sets translated by every group element
};

struct SeparatorResult {
  enum class Status { Distinct, NotSeparated, Inapplicable };
  Status status = Status::Inapplicable;
  std::string name;
  std::string value1, value2;  // canonical residues when Distinct
  std::string note;
};

const char* separator_status_name(SeparatorResult::Status s) noexcept;

/// Decides whether the images of y1 and y2 differ modulo the image of the
/// indeterminacy group. Inapplicable when a translate family would have to be
/// enumerated over an infinite (or too large) quotient.
SeparatorResult try_separate(const Separator& sep, const RingElement& y1, const RingElement& y2,
                             const PhiImage& phi);

}  // namespace alink
