#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "alink/linking.hpp"
#include "alink/ring.hpp"
#include "alink/separators.hpp"

namespace alink {

// A generator (z, (phi, psi)) acting by y -> z + phi y psi^-1. For knots
// psi == phi.
struct PhiGen {
  enum class Source { Toroidal, Preset };
  std::string label;
  RingElement z;
  Word phi;
  Word psi;
  Source source = Source::Toroidal;
};

// Translates of a sphere pairing: g * points (Left) or points * g (Right)
// for every group element g.
struct SphereFamily {
  enum class Side { Left, Right };
  std::string label;
  PointList points;
  Side side = Side::Left;
};

// A pure conjugation (alpha, beta): y -> alpha y beta^-1.
struct ConjMove {
  Word left;
  Word right;
};

// Materialized relation lattices, shared between copies of a PhiGroup and
// keyed by the group's contents and the bounds that produced them.
struct PhiCache {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const void>> entries;
};

struct PhiGroup {
  ContextPtr ctx;
  bool link = false;
  std::vector<PhiGen> gens;
  std::vector<SphereFamily> families;
  std::vector<ConjMove> conjugations;  // generators of zeta(gamma) (x zeta(delta))
  std::shared_ptr<PhiCache> cache = std::make_shared<PhiCache>();
};

/// Knot version. Traces must start and end at k (NotSelfTrace). When zeta is
/// nonempty it must list the latitudes in order (LatitudeMismatch); when it
/// is empty the latitudes themselves generate the conjugations, together with
/// the computed centralizer generators where available.
PhiGroup build_phi(const GroupPtr& group, const Knot& k, const std::vector<Trace>& toroidal,
                   const std::vector<SphereData>& spheres, const std::vector<Word>& zeta);
/// gamma = 1: conjugation by every generator and nothing else.
PhiGroup unknot_phi(const GroupPtr& group);

/// Link version: toroidal generators (lambda(K1, K2), (lat K1, lat K2)),
/// left family g * lambda(sigma, k2), right family lambda(k1, sigma) * g.
PhiGroup build_phi_link(const GroupPtr& group, const Knot& k1, const Knot& k2, const std::vector<LinkTrace>& toroidal,
                        const std::vector<SphereData>& left_spheres, const std::vector<SphereData>& right_spheres,
                        const std::vector<std::pair<Word, Word>>& zeta);

RingElement act(const PhiGen& gen, const RingElement& y);
/// The inverse generator (-phi^-1 z psi, (phi^-1, psi^-1)).
PhiGen inverse(const Group& group, const PhiGen& gen);
RingElement apply_conj(const ConjMove& move, const RingElement& y);
/// The pairing of one translate of a family, optionally conjugated.
RingElement family_translate(const PhiGroup& phi, std::size_t family, const Word& g, const ConjMove& conj);

bool is_spherical_presented(const PhiGroup& phi);

struct Bounds {
  int depth = 6;          // total composition depth of the orbit search
  int translate_len = 6;  // word length of materialized sphere translates
  int support_len = 16;   // letters per key in explored states
  std::size_t max_states = 200000;
  std::size_t max_translates = 6000;
};

struct CertificateStep {
  enum class Kind { Generator, Conjugate, Translate };
  Kind kind = Kind::Generator;
  std::size_t index = 0;  // generator or family index
  std::int64_t power = 1; // generator power, or translate coefficient
  Word left, right;       // conjugation, or translate element and conjugation
  Word conj_left, conj_right;
};

struct SeparatorAttempt {
  std::string name;
  std::string status;
  std::string note;
};

enum class Verdict { Equal, Distinct, Unknown };
const char* verdict_name(Verdict v) noexcept;

struct DecisionResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<CertificateStep> certificate;  // carries y2 to y1
  std::string separator;                     // name of the separating invariant
  std::string value1, value2;
  std::vector<SeparatorAttempt> attempts;
  Bounds bounds;
  std::size_t states = 0;       // orbit states explored
  std::size_t translates = 0;   // translate relations materialized
  std::string quotient;         // abelian quotient structure when computed
  bool exact = false;           // decided without bounds
};

/// Applies the certificate to y.
RingElement replay(const PhiGroup& phi, const std::vector<CertificateStep>& certificate, const RingElement& y);
std::string describe_step(const PhiGroup& phi, const CertificateStep& step);

struct DecideOptions {
  Bounds bounds;
  std::vector<Separator> separators;  // tried before the default suite
  bool default_suite = true;
};

/// Same context required (SpecMismatch).
DecisionResult decide_equal(const RingElement& y1, const RingElement& y2, const PhiGroup& phi,
                            const DecideOptions& opts = {});

/// Independent recheck of a verdict: Equal certificates replay exactly and a
/// Distinct separator, recomputed from scratch, still separates.
bool verify_decision(const RingElement& y1, const RingElement& y2, const PhiGroup& phi, const DecideOptions& opts,
                     const DecisionResult& result);

/// decide_equal for a PhiGroup built by build_phi_link (SpecMismatch otherwise).
DecisionResult decide_equal_link(const RingElement& y1, const RingElement& y2, const PhiGroup& phi,
                                 const DecideOptions& opts = {});

/// Structure of the orbit quotient over an abelian group when the translate
/// quotient is finite, e.g. "Z_2" or "0".
std::optional<std::string> orbit_quotient(const PhiGroup& phi, const Bounds& bounds = {});

/// Every group element of word length at most len in shortlex order, capped.
std::vector<Word> group_ball(const Group& group, int len, std::size_t cap);

}  // namespace alink
