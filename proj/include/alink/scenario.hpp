#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "alink/indeterminacy.hpp"
#include "alink/linking.hpp"
#include "alink/separators.hpp"

namespace alink {

// Declarations as written. Each one is validated and resolved when parsed,
// and prints back to a line that reparses to the same declaration.
struct KnotDecl {
  std::string label;
  Word gamma;
  friend bool operator==(const KnotDecl&, const KnotDecl&) = default;
};

struct TraceDecl {
  std::string label, from, to;
  Word latitude;
  PointList points;
  friend bool operator==(const TraceDecl&, const TraceDecl&) = default;
};

struct SphereDecl {
  std::string label;
  std::string unlink_knot;  // nonempty: the unlink-complement sphere met by this knot
  PointList points;
  friend bool operator==(const SphereDecl&, const SphereDecl&) = default;
};

struct LinkTraceDecl {
  std::string label, first, second;
  PointList cross;
  friend bool operator==(const LinkTraceDecl&, const LinkTraceDecl&) = default;
};

struct PhiDecl {
  enum class Kind { Knot, Unknot, Link };
  std::string label;
  Kind kind = Kind::Knot;
  std::string knot, knot2;
  std::vector<std::string> toroidal, spheres, right_spheres;
  std::vector<Word> zeta;
  std::vector<std::pair<Word, Word>> zeta_pairs;
  friend bool operator==(const PhiDecl&, const PhiDecl&) = default;
};

struct SeparatorDecl {
  std::string name;
  std::vector<std::vector<std::int64_t>> images;
  std::vector<std::int64_t> moduli;
  friend bool operator==(const SeparatorDecl&, const SeparatorDecl&) = default;
};

struct ContextDecl {
  std::string label;
  Flavor flavor = Flavor::Plain;
  std::string knot, knot2;
  friend bool operator==(const ContextDecl&, const ContextDecl&) = default;
};

struct ElementDecl {
  std::string label;
  std::string in;     // context, phi or knot label
  std::string value;  // canonical serialized form
  friend bool operator==(const ElementDecl&, const ElementDecl&) = default;
};

// `expect <command> => <expected>`, checked by the examples command.
struct ExpectDecl {
  std::vector<std::string> command;
  std::string expected;
  friend bool operator==(const ExpectDecl&, const ExpectDecl&) = default;
};

using Decl = std::variant<KnotDecl, TraceDecl, SphereDecl, LinkTraceDecl, PhiDecl, SeparatorDecl, ContextDecl,
                          ElementDecl, ExpectDecl>;

// Resolved objects, keyed by label.
struct ScenarioModel {
  GroupPtr group;
  std::map<std::string, Knot> knots;
  std::map<std::string, Trace> traces;
  std::map<std::string, SphereData> spheres;
  std::map<std::string, LinkTrace> link_traces;
  std::map<std::string, PhiGroup> phis;
  std::vector<std::string> phi_order;
  std::vector<Separator> separators;
  std::map<std::string, ContextPtr> contexts;
  std::map<std::string, RingElement> elements;
  std::vector<std::pair<int, ExpectDecl>> expectations;  // with source line
};

struct Scenario {
  std::string name;
  GroupSpec group;
  std::vector<Decl> decls;
  std::shared_ptr<const ScenarioModel> model;

  friend bool operator==(const Scenario& a, const Scenario& b) { return a.group == b.group && a.decls == b.decls; }
};

/// ParseError, UnresolvedReference or InvariantViolation, with the line and
/// column in the message.
Scenario parse_scenario(std::string_view text, std::string name = "");
Scenario load_scenario(const std::string& path);
std::string print_scenario(const Scenario& s);

std::string format_group_spec(const GroupSpec& spec);
GroupSpec parse_group_spec(std::string_view text);

/// The shipped example scenarios, (name, text).
const std::vector<std::pair<std::string, std::string>>& example_corpus();

struct RunOptions {
  Bounds bounds;
  bool json = false;
  bool strict = false;       // Unknown verdicts give exit code 2
  bool strict_sign = false;  // ring expectations must match without a global sign flip
  bool timing = false;
  std::uint64_t seed = 1;
};

struct Report {
  std::string command;
  std::string text;
  std::string json;
  int exit_code = 0;
};

/// Runs one command. Bad input raises Error; the caller maps it to exit code 1.
/// "examples" without a scenario runs the shipped corpus.
Report run_command(const Scenario* scenario, const std::string& command, const std::vector<std::string>& args,
                   const RunOptions& opts);

}  // namespace alink
