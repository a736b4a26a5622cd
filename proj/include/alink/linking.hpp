#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alink/group.hpp"
#include "alink/ring.hpp"

namespace alink {

struct Knot {
  std::string label;
  Word gamma;  // based free homotopy class
};

struct DoublePoint {
  int sign = 1;  // +1 or -1
  Word g;
  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;
};

using PointList = std::vector<DoublePoint>;

// A singular concordance reduced to its signed double points and latitude.
struct Trace {
  std::string label;
  Knot from;
  Knot to;
  PointList points;
  Word latitude;
};

struct SphereData {
  std::string label;
  PointList points;
};

struct LinkTrace {
  std::string label;
  Trace first;
  Trace second;
  PointList cross;
};

/// Validates the class and latitude conditions (EndpointMismatch,
/// NotInCentralizer).
Trace make_trace(const Group& group, std::string label, Knot from, Knot to, PointList points, Word latitude);

/// Sum of signed classes in the reduced coset flavor for from.gamma.
RingElement mu_trace(const GroupPtr& group, const Trace& t);
RingElement mu_absolute(const GroupPtr& group, const PointList& points);
RingElement mu_pi(const GroupPtr& group, const PointList& points);

/// h followed by h2; h2's points are conjugated by h's latitude.
Trace compose(const Group& group, const Trace& h, const Trace& h2);
Trace invert_trace(const Group& group, const Trace& h);
/// Whisker change: conjugates every point and the latitude by alpha.
Trace rebase(const Group& group, const Trace& h, const Word& alpha);

struct SpherePairing {
  RingElement unreduced;  // Gamma flavor
  RingElement reduced;    // TildeGamma flavor
};

SpherePairing lambda_sphere(const GroupPtr& group, const SphereData& sigma, const Knot& k);
/// Sum of g * sigma over the given terms.
SpherePairing lambda_sphere_combo(const GroupPtr& group,
                                  const std::vector<std::pair<Word, const SphereData*>>& terms, const Knot& k);
/// g * sigma: every point g_p becomes g g_p.
SphereData translate_sphere(const Group& group, const SphereData& sigma, const Word& g);
/// sigma * g: every point g_p becomes g_p g (right family for links).
SphereData translate_sphere_right(const Group& group, const SphereData& sigma, const Word& g);

/// The separating sphere of the two-component unlink complement met by a
/// knot of class x^m1 y^n1 ... x^mr y^nr (generators 0 and 1 of a free group).
SphereData sphere_for_unlink_complement(const Group& group, const Word& gamma);

RingElement lambda_link(const GroupPtr& group, const LinkTrace& lt);
RingElement lambda_absolute(const GroupPtr& group, const PointList& cross);

/// Double points of a band sum of two singular disks. With strict set,
/// NonVanishingLinking is raised unless the cross points cancel in Z[pi].
PointList connect_sum(const GroupPtr& group, const PointList& d1, const PointList& d2, const Word& beta,
                      const PointList& cross, bool strict);

/// A self-trace of k with trivial latitude whose mu is target.
Trace realize_trace(const RingElement& target, const Knot& k);

}  // namespace alink
