#include <chrono>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "alink/error.hpp"
#include "alink/scenario.hpp"

namespace alink {

namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  json record;
  std::vector<std::string> lines;
  std::string primary;
  std::optional<RingElement> ring;
  std::optional<DecisionResult> decision;
  double ms = 0;
};

std::string join(const std::vector<std::string>& v, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < v.size(); ++i) out += (i > from ? " " : "") + v[i];
  return out;
}

std::string lower_verdict(Verdict v) { return verdict_name(v); }

json step_json(const PhiGroup& phi, const CertificateStep& s) {
  const Group& g = phi.ctx->group();
  json j;
  switch (s.kind) {
    case CertificateStep::Kind::Generator:
      j["step"] = "generator";
      j["label"] = phi.gens.at(s.index).label;
      j["power"] = s.power;
      break;
    case CertificateStep::Kind::Conjugate:
      j["step"] = "conjugate";
      j["left"] = g.format(s.left);
      j["right"] = g.format(s.right);
      break;
    case CertificateStep::Kind::Translate:
      j["step"] = "translate";
      j["family"] = phi.families.at(s.index).label;
      j["element"] = g.format(s.left);
      j["coefficient"] = s.power;
      j["conjugation"] = json::array({g.format(s.conj_left), g.format(s.conj_right)});
      break;
  }
  return j;
}

json decision_json(const PhiGroup& phi, const DecisionResult& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  j["exact"] = r.exact;
  if (r.verdict == Verdict::Distinct)
    j["separator"] = {{"name", r.separator}, {"value1", r.value1}, {"value2", r.value2}};
  else
    j["separator"] = nullptr;
  json cert = json::array();
  for (const auto& s : r.certificate) cert.push_back(step_json(phi, s));
  j["certificate"] = cert;
  json attempts = json::array();
  for (const auto& a : r.attempts) {
    json aj{{"name", a.name}, {"status", a.status}};
    if (!a.note.empty()) aj["note"] = a.note;
    attempts.push_back(aj);
  }
  j["attempts"] = attempts;
  j["bounds"] = {{"depth", r.bounds.depth},
                 {"translate_len", r.bounds.translate_len},
                 {"support_len", r.bounds.support_len}};
  j["states"] = r.states;
  j["translates"] = r.translates;
  if (!r.quotient.empty()) j["quotient"] = r.quotient;
  return j;
}

std::vector<std::string> decision_lines(const PhiGroup& phi, const DecisionResult& r) {
  std::vector<std::string> out;
  if (r.verdict == Verdict::Distinct)
    out.push_back("  separator " + r.separator + ": " + r.value1 + " vs " + r.value2);
  if (!r.certificate.empty()) {
    std::string c = "  certificate:";
    for (std::size_t i = 0; i < r.certificate.size(); ++i)
      c += (i ? "; " : " ") + describe_step(phi, r.certificate[i]);
    out.push_back(c);
  }
  if (r.verdict == Verdict::Unknown) {
    std::string a = "  attempts:";
    for (const auto& at : r.attempts) a += " " + at.name + "=" + at.status + ";";
    out.push_back(a);
    std::ostringstream os;
    os << "  bounds exhausted: depth " << r.bounds.depth << ", translate length " << r.bounds.translate_len
       << ", support length " << r.bounds.support_len << "; " << r.states << " states, " << r.translates
       << " translates";
    out.push_back(os.str());
  }
  return out;
}

class Runner {
 public:
  Runner(const Scenario& s, const RunOptions& opts) : s_(s), m_(*s.model), opts_(opts) {}

  Outcome run(const std::vector<std::string>& cmd) {
    if (cmd.empty()) fail(ErrorCode::InvalidArgument, "missing command");
    const auto start = std::chrono::steady_clock::now();
    Outcome o = dispatch(cmd);
    o.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json rec;
    rec["query"] = join(cmd);
    for (auto& [k, v] : o.record.items()) rec[k] = v;
    o.record = std::move(rec);
    return o;
  }

 private:
  Outcome dispatch(const std::vector<std::string>& cmd) {
    const std::string& c = cmd[0];
    if (c == "normalize") return normalize(cmd);
    if (c == "canon") return canon(cmd);
    if (c == "mu") return mu(cmd);
    if (c == "lambda") return lambda(cmd);
    if (c == "relative") return relative(cmd);
    if (c == "decide") return decide(cmd);
    if (c == "spherical") return spherical(cmd);
    if (c == "quotient") return quotient(cmd);
    fail(ErrorCode::InvalidArgument, "unknown command '" + c + "'");
  }

  void arity(const std::vector<std::string>& cmd, std::size_t lo, std::size_t hi) {
    if (cmd.size() - 1 < lo || cmd.size() - 1 > hi)
      fail(ErrorCode::InvalidArgument, "wrong number of arguments for '" + cmd[0] + "'");
  }

  template <class Map>
  const typename Map::mapped_type& get(const Map& map, const std::string& label, const char* what) {
    const auto it = map.find(label);
    if (it == map.end()) fail(ErrorCode::UnresolvedReference, std::string("no ") + what + " named '" + label + "'");
    return it->second;
  }

  ContextPtr context(const std::string& label) {
    if (auto it = m_.contexts.find(label); it != m_.contexts.end()) return it->second;
    if (auto it = m_.phis.find(label); it != m_.phis.end()) return it->second.ctx;
    if (auto it = m_.knots.find(label); it != m_.knots.end()) return RingContext::tilde_gamma(m_.group, it->second.gamma);
    fail(ErrorCode::UnresolvedReference, "no context, phi or knot named '" + label + "'");
  }

  ContextPtr default_context() {
    for (const auto& d : s_.decls)
      if (auto c = std::get_if<ContextDecl>(&d)) return m_.contexts.at(c->label);
    if (!m_.phi_order.empty()) return m_.phis.at(m_.phi_order.front()).ctx;
    for (const auto& d : s_.decls)
      if (auto k = std::get_if<KnotDecl>(&d)) return RingContext::tilde_gamma(m_.group, k->gamma);
    return RingContext::plain(m_.group);
  }

  const PhiGroup& phi_for(const ContextPtr& ctx, const std::string& explicit_label, std::string& label) {
    if (!explicit_label.empty()) {
      label = explicit_label;
      return get(m_.phis, explicit_label, "phi");
    }
    for (const auto& l : m_.phi_order)
      if (m_.phis.at(l).ctx->same_as(*ctx)) {
        label = l;
        return m_.phis.at(l);
      }
    fail(ErrorCode::UnresolvedReference, "no phi declared over " + ctx->describe());
  }

  Outcome normalize(const std::vector<std::string>& cmd) {
    if (cmd.size() < 2) fail(ErrorCode::InvalidArgument, "normalize needs a word");
    Outcome o;
    o.primary = m_.group->format(m_.group->parse(join(cmd, 1)));
    o.record["result"] = o.primary;
    o.lines.push_back(join(cmd) + ": " + o.primary);
    return o;
  }

  Outcome canon(const std::vector<std::string>& cmd) {
    std::size_t end = cmd.size();
    ContextPtr ctx;
    if (cmd.size() >= 4 && cmd[cmd.size() - 2] == "in") {
      ctx = context(cmd.back());
      end -= 2;
    } else {
      ctx = default_context();
    }
    if (end < 2) fail(ErrorCode::InvalidArgument, "canon needs a word");
    const std::vector<std::string> word(cmd.begin() + 1, cmd.begin() + static_cast<long>(end));
    const auto key = ctx->canonicalize(m_.group->parse(join(word)));
    Outcome o;
    o.primary = key ? "[" + m_.group->format(*key) + "]" : "0";
    o.record["context"] = ctx->describe();
    o.record["result"] = o.primary;
    o.lines.push_back(join(cmd) + ": " + o.primary);
    return o;
  }

  Outcome ring_outcome(const std::vector<std::string>& cmd, RingElement y) {
    Outcome o;
    o.primary = y.str();
    o.record["context"] = y.context()->describe();
    o.record["result"] = o.primary;
    o.lines.push_back(join(cmd) + ": " + o.primary);
    o.ring = std::move(y);
    return o;
  }

  Outcome mu(const std::vector<std::string>& cmd) {
    arity(cmd, 1, 1);
    return ring_outcome(cmd, mu_trace(m_.group, get(m_.traces, cmd[1], "trace")));
  }

  Outcome lambda(const std::vector<std::string>& cmd) {
    arity(cmd, 1, 2);
    if (cmd.size() == 2) return ring_outcome(cmd, lambda_link(m_.group, get(m_.link_traces, cmd[1], "link trace")));
    const SpherePairing p = lambda_sphere(m_.group, get(m_.spheres, cmd[1], "sphere"), get(m_.knots, cmd[2], "knot"));
    Outcome o = ring_outcome(cmd, p.reduced);
    o.record["unreduced"] = p.unreduced.str();
    return o;
  }

  DecideOptions decide_options() const {
    DecideOptions d;
    d.bounds = opts_.bounds;
    d.separators = m_.separators;
    return d;
  }

  Outcome decision(const std::vector<std::string>& cmd, const RingElement& y1, const RingElement& y2,
                   const PhiGroup& phi, const std::string& phi_label) {
    const DecideOptions d = decide_options();
    DecisionResult r = decide_equal(y1, y2, phi, d);
    if (!verify_decision(y1, y2, phi, d, r))
      fail(ErrorCode::InvariantViolation, "verdict for '" + join(cmd) + "' failed its independent recheck");
    Outcome o;
    o.primary = lower_verdict(r.verdict);
    o.record["phi"] = phi_label;
    o.record["y1"] = y1.str();
    o.record["y2"] = y2.str();
    const json dj = decision_json(phi, r);
    for (const auto& [k, v] : dj.items()) o.record[k] = v;
    o.lines.push_back(join(cmd) + ": " + o.primary + (r.exact && r.verdict != Verdict::Unknown ? " (exact)" : ""));
    for (auto& l : decision_lines(phi, r)) o.lines.push_back(std::move(l));
    o.decision = std::move(r);
    return o;
  }

  Outcome relative(const std::vector<std::string>& cmd) {
    arity(cmd, 1, 2);
    const RingElement y = mu_trace(m_.group, get(m_.traces, cmd[1], "trace"));
    std::string label;
    const PhiGroup& phi = phi_for(y.context(), cmd.size() == 3 ? cmd[2] : "", label);
    Outcome o = decision(cmd, y, RingElement(phi.ctx), phi, label);
    o.record["mu"] = y.str();
    o.lines.insert(o.lines.begin() + 1, "  mu = " + y.str());
    return o;
  }

  Outcome decide(const std::vector<std::string>& cmd) {
    arity(cmd, 2, 3);
    const std::string explicit_phi = cmd.size() == 4 ? cmd[3] : "";
    std::optional<RingElement> a, b;
    if (cmd[1] != "0") a = get(m_.elements, cmd[1], "element");
    if (cmd[2] != "0") b = get(m_.elements, cmd[2], "element");
    ContextPtr ctx;
    if (a) ctx = a->context();
    else if (b) ctx = b->context();
    else if (!explicit_phi.empty()) ctx = get(m_.phis, explicit_phi, "phi").ctx;
    else fail(ErrorCode::InvalidArgument, "decide needs an element or a phi");
    std::string label;
    const PhiGroup& phi = phi_for(ctx, explicit_phi, label);
    return decision(cmd, a ? *a : RingElement(phi.ctx), b ? *b : RingElement(phi.ctx), phi, label);
  }

  const PhiGroup& phi_arg(const std::vector<std::string>& cmd, std::string& label) {
    arity(cmd, 0, 1);
    if (cmd.size() == 2) {
      label = cmd[1];
      return get(m_.phis, cmd[1], "phi");
    }
    if (m_.phi_order.empty()) fail(ErrorCode::UnresolvedReference, "scenario declares no phi");
    label = m_.phi_order.front();
    return m_.phis.at(label);
  }

  Outcome spherical(const std::vector<std::string>& cmd) {
    std::string label;
    const PhiGroup& phi = phi_arg(cmd, label);
    Outcome o;
    o.primary = is_spherical_presented(phi) ? "true" : "false";
    o.record["phi"] = label;
    o.record["result"] = is_spherical_presented(phi);
    o.lines.push_back(join(cmd) + ": " + o.primary);
    return o;
  }

  Outcome quotient(const std::vector<std::string>& cmd) {
    std::string label;
    const PhiGroup& phi = phi_arg(cmd, label);
    const auto q = orbit_quotient(phi, opts_.bounds);
    Outcome o;
    o.primary = q ? *q : "not computed";
    o.record["phi"] = label;
    o.record["result"] = q ? json(*q) : json(nullptr);
    o.lines.push_back(join(cmd) + ": " + o.primary);
    return o;
  }

  const Scenario& s_;
  const ScenarioModel& m_;
  const RunOptions& opts_;
};

// ---- expectations

bool check_expectation(const Outcome& o, const std::string& expected, const RunOptions& opts, std::string& actual) {
  actual = o.primary;
  if (o.decision) {
    std::istringstream in(expected);
    std::string verdict, by;
    in >> verdict;
    in >> by;
    std::string sep;
    std::getline(in, sep);
    sep = sep.empty() ? "" : sep.substr(1);
    if (!by.empty() && (by != "by" || sep.empty())) fail(ErrorCode::ParseError, "bad verdict expectation '" + expected + "'");
    const Verdict v = o.decision->verdict;
    if (v == Verdict::Distinct) actual += " by " + o.decision->separator;
    bool ok = false;
    if (verdict == "equal") ok = v == Verdict::Equal;
    else if (verdict == "distinct") ok = v == Verdict::Distinct;
    else if (verdict == "unknown") ok = v == Verdict::Unknown;
    else if (verdict == "not-equal") ok = v != Verdict::Equal;
    else fail(ErrorCode::ParseError, "unknown verdict '" + verdict + "'");
    if (!sep.empty()) ok = ok && v == Verdict::Distinct && o.decision->separator == sep;
    return ok;
  }
  if (o.ring) {
    const RingElement want = parse_ring_element(o.ring->context(), expected);
    return *o.ring == want || (!opts.strict_sign && *o.ring == negate(want));
  }
  return o.primary == expected;
}

struct Totals {
  json results = json::array();
  json timing = json::array();
  std::vector<std::string> lines;
  std::vector<std::string> timing_lines;
  int passed = 0, failed = 0;
  bool unknown = false;
};

void run_expectations(const Scenario& s, const RunOptions& opts, Totals& t) {
  Runner runner(s, opts);
  for (const auto& [line, e] : s.model->expectations) {
    const Outcome o = runner.run(e.command);
    std::string actual;
    const bool ok = check_expectation(o, e.expected, opts, actual);
    (ok ? t.passed : t.failed)++;
    if (o.decision && o.decision->verdict == Verdict::Unknown) t.unknown = true;
    json r;
    r["scenario"] = s.name;
    r["line"] = line;
    r["query"] = join(e.command);
    r["expected"] = e.expected;
    r["actual"] = actual;
    r["pass"] = ok;
    r["record"] = o.record;
    t.results.push_back(r);
    t.timing.push_back({{"scenario", s.name}, {"line", line}, {"ms", o.ms}});
    t.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + s.name + ":" + std::to_string(line) + " " +
                      join(e.command) + " => " + e.expected + (ok ? "" : " (got " + actual + ")"));
    std::ostringstream tl;
    tl << "  " << s.name << ":" << line << " " << o.ms << " ms";
    t.timing_lines.push_back(tl.str());
  }
}

// ---- randomized property checks

Word random_word(const Group& g, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, static_cast<int>(g.rank()) - 1), sign(0, 1);
  std::vector<Syllable> raw;
  for (int i = len(rng); i > 0; --i) raw.push_back({gen(rng), sign(rng) ? 1 : -1});
  return g.normalize(raw);
}

json run_properties(std::size_t count, std::uint64_t seed, std::vector<std::string>& lines, bool& failed) {
  struct Setup {
    GroupSpec spec;
    const char* gamma;
  };
  const std::vector<Setup> setups{{GroupSpec::free_times_z({"x", "y", "z"}, "t"), "x y z"},
                                  {GroupSpec::free_times_z({"x", "y", "z"}, "t"), "t"},
                                  {GroupSpec::free({"x", "y"}), "x^2 y"},
                                  {GroupSpec::free({"x", "y"}), "x y x^-1 y^-1"}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 2), npts(0, 4), coin(0, 1);
  std::size_t composition = 0, inverse_law = 0, act_inverse = 0, cases = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Setup& s = setups[i % setups.size()];
    const GroupPtr g = make_group(s.spec);
    const Knot k{"k", g->parse(s.gamma)};
    const auto zeta = g->centralizer_generators(k.gamma);
    auto random_trace = [&](const char* label) {
      PointList pts;
      for (int p = npts(rng); p > 0; --p) pts.push_back({coin(rng) ? 1 : -1, random_word(*g, rng, 5)});
      Word lat;
      for (const auto& z : zeta) lat = g->multiply(lat, g->power(z, small(rng)));
      return make_trace(*g, label, k, k, std::move(pts), lat);
    };
    const Trace h = random_trace("H"), h2 = random_trace("H2");
    ++cases;
    const RingElement mh = mu_trace(g, h), mh2 = mu_trace(g, h2);
    if (!(mu_trace(g, compose(*g, h, h2)) == add(mh, conj_act(h.latitude, mh2)))) ++composition;
    if (!(mu_trace(g, invert_trace(*g, h)) == negate(conj_act(g->invert(h.latitude), mh)))) ++inverse_law;
    const PhiGroup phi = build_phi(g, k, {h}, {}, {});
    const PhiGen inv = inverse(*g, phi.gens[0]);
    if (!(act(inv, act(phi.gens[0], mh2)) == mh2)) ++act_inverse;
  }
  json out = json::array();
  for (const auto& [name, bad] : {std::pair<const char*, std::size_t>{"composition law", composition},
                                  {"inverse law", inverse_law},
                                  {"act inverse", act_inverse}}) {
    out.push_back({{"property", name}, {"cases", cases}, {"failures", bad}});
    lines.push_back(std::string(bad ? "FAIL " : "PASS ") + name + ": " + std::to_string(cases) + " cases, " +
                    std::to_string(bad) + " failures");
    if (bad) failed = true;
  }
  return out;
}

std::string render_json(json j) { return j.dump(2) + "\n"; }

std::string render_text(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

Report run_command(const Scenario* scenario, const std::string& command, const std::vector<std::string>& args,
                   const RunOptions& opts) {
  Report rep;
  rep.command = command;
  json j;
  j["schema"] = 1;
  j["command"] = command;
  std::vector<std::string> lines, timing_lines;
  json timing;
  const auto start = std::chrono::steady_clock::now();

  if (command == "examples") {
    if (!args.empty()) fail(ErrorCode::InvalidArgument, "examples takes no arguments");
    Totals t;
    if (scenario) {
      run_expectations(*scenario, opts, t);
    } else {
      for (const auto& [name, text] : example_corpus()) run_expectations(parse_scenario(text, name), opts, t);
    }
    j["results"] = t.results;
    j["passed"] = t.passed;
    j["failed"] = t.failed;
    lines = t.lines;
    lines.push_back(std::to_string(t.passed) + " passed, " + std::to_string(t.failed) + " failed");
    timing["queries"] = t.timing;
    timing_lines = t.timing_lines;
    rep.exit_code = t.failed ? 1 : (opts.strict && t.unknown ? 2 : 0);
  } else if (command == "properties") {
    std::size_t count = 1000;
    if (args.size() > 1) fail(ErrorCode::InvalidArgument, "properties takes at most one argument");
    if (!args.empty()) {
      try {
        count = std::stoul(args[0]);
      } catch (const std::exception&) {
        fail(ErrorCode::InvalidArgument, "properties count must be a number");
      }
    }
    bool failed = false;
    j["seed"] = opts.seed;
    j["results"] = run_properties(count, opts.seed, lines, failed);
    rep.exit_code = failed ? 1 : 0;
  } else {
    if (!scenario) fail(ErrorCode::InvalidArgument, "'" + command + "' needs a scenario file");
    Runner runner(*scenario, opts);
    std::vector<std::string> cmd{command};
    cmd.insert(cmd.end(), args.begin(), args.end());
    const Outcome o = runner.run(cmd);
    j["scenario"] = scenario->name;
    j["results"] = json::array({o.record});
    lines = o.lines;
    timing["queries"] = json::array({{{"query", join(cmd)}, {"ms", o.ms}}});
    if (opts.strict && o.decision && o.decision->verdict == Verdict::Unknown) rep.exit_code = 2;
  }

  const double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (opts.timing) {
    timing["total_ms"] = total;
    j["timing"] = timing;
    lines.push_back("timing: " + std::to_string(total) + " ms total");
    for (auto& l : timing_lines) lines.push_back(std::move(l));
  }
  rep.json = render_json(std::move(j));
  rep.text = render_text(lines);
  return rep;
}

}  // namespace alink
