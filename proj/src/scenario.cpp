#include "alink/scenario.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "alink/error.hpp"

namespace alink {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Cursor over one line; errors carry the line and column.
class Line {
 public:
  Line(std::string_view text, int number) : s_(text), line_(number) {}

  [[noreturn]] void error(ErrorCode code, const std::string& msg, std::size_t at) const {
    fail(code, "line " + std::to_string(line_) + ", column " + std::to_string(at + 1) + ": " + msg);
  }
  [[noreturn]] void error(ErrorCode code, const std::string& msg) const { error(code, msg, pos_); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    ws();
    return pos_ >= s_.size();
  }
  std::size_t pos() const { return pos_; }
  char peek() {
    ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(ErrorCode::ParseError, std::string("expected '") + c + "'");
  }
  bool accept(std::string_view tok) {
    ws();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  std::string label() {
    ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && label_char(s_[pos_])) ++pos_;
    if (start == pos_) error(ErrorCode::ParseError, "expected a label");
    return std::string(s_.substr(start, pos_ - start));
  }

  // A keyword is a label that must match exactly.
  void keyword(std::string_view kw) {
    const std::size_t at = (ws(), pos_);
    if (label() != kw) error(ErrorCode::ParseError, "expected '" + std::string(kw) + "'", at);
  }
  bool try_keyword(std::string_view kw) {
    const std::size_t save = pos_;
    ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && label_char(s_[pos_])) ++pos_;
    if (s_.substr(start, pos_ - start) == kw) return true;
    pos_ = save;
    return false;
  }

  // Text up to (not including) the first occurrence of any stop character, or
  // the next whitespace-separated keyword in stops_kw, or end of line.
  std::string until(std::string_view stop_chars, std::initializer_list<std::string_view> stop_kw = {}) {
    ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      if (stop_chars.find(s_[pos_]) != std::string_view::npos) break;
      if (pos_ == start || std::isspace(static_cast<unsigned char>(s_[pos_ - 1]))) {
        bool hit = false;
        for (auto kw : stop_kw) {
          const std::size_t end = pos_ + kw.size();
          if (s_.substr(pos_, kw.size()) == kw && (end == s_.size() || !label_char(s_[end]))) hit = true;
        }
        if (hit) break;
      }
      ++pos_;
    }
    return std::string(trim(s_.substr(start, pos_ - start)));
  }

  std::string rest() {
    ws();
    std::string out(trim(s_.substr(pos_)));
    pos_ = s_.size();
    return out;
  }

  std::int64_t integer() {
    ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string text(s_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      const long long v = std::stoll(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    error(ErrorCode::ParseError, "expected an integer", start);
  }

  int number() const { return line_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

const char* flavor_keyword(Flavor f) {
  switch (f) {
    case Flavor::Plain:
      return "plain";
    case Flavor::Tilde:
      return "tilde";
    case Flavor::TildeGamma:
      return "tilde-gamma";
    case Flavor::Gamma:
      return "gamma";
    case Flavor::TwoSided:
      return "two-sided";
    case Flavor::TildePi:
      return "tilde-pi";
  }
  return "?";
}

// ---- group specs

GroupSpec parse_spec(Line& in) {
  const std::size_t at = (in.ws(), in.pos());
  const std::string kind = in.label();
  in.expect('{');
  if (kind == "FreeProduct") {
    std::vector<GroupSpec> factors{parse_spec(in)};
    while (in.accept(',')) factors.push_back(parse_spec(in));
    in.expect('}');
    return GroupSpec::free_product(std::move(factors));
  }
  std::vector<std::string> labels;
  std::string central;
  if (in.peek() != '}') {
    labels.push_back(in.label());
    while (in.accept(',')) labels.push_back(in.label());
  }
  if (kind == "FreeTimesZ") {
    in.expect(';');
    central = in.label();
  }
  in.expect('}');
  try {
    if (kind == "Free") return GroupSpec::free(std::move(labels));
    if (kind == "FreeAbelian") return GroupSpec::free_abelian(std::move(labels));
    if (kind == "FreeTimesZ") return GroupSpec::free_times_z(std::move(labels), std::move(central));
  } catch (const Error& e) {
    in.error(ErrorCode::ParseError, e.what(), at);
  }
  in.error(ErrorCode::ParseError, "unknown group kind '" + kind + "'", at);
}

// ---- the parser

class Parser {
 public:
  explicit Parser(std::string name) { scenario_.name = std::move(name); }

  Scenario finish() && {
    if (!model_->group) fail(ErrorCode::ParseError, "scenario declares no group");
    scenario_.model = std::move(model_);
    return std::move(scenario_);
  }

  void line(std::string_view raw, int number) {
    const std::size_t hash = raw.find('#');
    Line in(raw.substr(0, hash), number);
    if (in.done()) return;
    const std::size_t at = in.pos();
    const std::string head = in.label();
    if (head == "group") return group(in, at);
    if (!model_->group) in.error(ErrorCode::ParseError, "the group must be declared first", at);
    try {
      if (head == "knot") knot(in);
      else if (head == "trace") trace(in);
      else if (head == "sphere") sphere(in);
      else if (head == "linktrace") linktrace(in);
      else if (head == "phi") phi(in);
      else if (head == "philink") philink(in);
      else if (head == "separator") separator(in);
      else if (head == "context") context(in);
      else if (head == "element") element(in);
      else if (head == "expect") expectation(in);
      else in.error(ErrorCode::ParseError, "unknown statement '" + head + "'", at);
    } catch (const Error& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      // Validation failures from the algebra layer.
      in.error(e.code() == ErrorCode::UnknownGenerator || e.code() == ErrorCode::ParseError
                   ? ErrorCode::ParseError
                   : ErrorCode::InvariantViolation,
               what, at);
    }
    if (!in.done()) in.error(ErrorCode::ParseError, "unexpected trailing text");
  }

 private:
  const Group& g() const { return *model_->group; }

  void group(Line& in, std::size_t at) {
    if (model_->group) in.error(ErrorCode::ParseError, "the group is declared twice", at);
    scenario_.group = parse_spec(in);
    if (!in.done()) in.error(ErrorCode::ParseError, "unexpected trailing text");
    model_->group = make_group(scenario_.group);
  }

  std::string new_label(Line& in) {
    const std::size_t at = (in.ws(), in.pos());
    std::string label = in.label();
    if (!labels_.insert(label).second) in.error(ErrorCode::ParseError, "duplicate label '" + label + "'", at);
    return label;
  }

  template <class Map>
  const typename Map::mapped_type& ref(Line& in, const Map& map, const char* what, std::string* name = nullptr) {
    const std::size_t at = (in.ws(), in.pos());
    const std::string label = in.label();
    const auto it = map.find(label);
    if (it == map.end())
      in.error(ErrorCode::UnresolvedReference, std::string("no ") + what + " named '" + label + "'", at);
    if (name) *name = label;
    return it->second;
  }

  Word word(Line& in, std::string_view stops, std::initializer_list<std::string_view> kws = {}) {
    const std::size_t at = (in.ws(), in.pos());
    const std::string text = in.until(stops, kws);
    if (text.empty()) in.error(ErrorCode::ParseError, "expected a group word", at);
    try {
      return g().parse(text);
    } catch (const Error& e) {
      in.error(ErrorCode::ParseError, e.what(), at);
    }
  }

  PointList points(Line& in) {
    PointList out;
    in.expect('[');
    if (in.accept(']')) return out;
    do {
      in.expect('(');
      int sign = 0;
      if (in.accept('+')) sign = 1;
      else if (in.accept('-')) sign = -1;
      else in.error(ErrorCode::ParseError, "expected '+' or '-'");
      in.expect(',');
      out.push_back({sign, word(in, ")")});
      in.expect(')');
    } while (in.accept(','));
    in.expect(']');
    return out;
  }

  std::vector<std::string> label_list(Line& in) {
    std::vector<std::string> out;
    in.expect('[');
    if (in.accept(']')) return out;
    do out.push_back(in.label());
    while (in.accept(','));
    in.expect(']');
    return out;
  }

  std::vector<Word> word_list(Line& in) {
    std::vector<Word> out;
    in.expect('[');
    if (in.accept(']')) return out;
    do out.push_back(word(in, ",]"));
    while (in.accept(','));
    in.expect(']');
    return out;
  }

  std::vector<std::pair<Word, Word>> pair_list(Line& in) {
    std::vector<std::pair<Word, Word>> out;
    in.expect('[');
    if (in.accept(']')) return out;
    do {
      in.expect('(');
      Word a = word(in, ",");
      in.expect(',');
      Word b = word(in, ")");
      in.expect(')');
      out.emplace_back(std::move(a), std::move(b));
    } while (in.accept(','));
    in.expect(']');
    return out;
  }

  std::vector<std::int64_t> int_tuple(Line& in) {
    std::vector<std::int64_t> out;
    in.expect('(');
    do out.push_back(in.integer());
    while (in.accept(','));
    in.expect(')');
    return out;
  }

  void knot(Line& in) {
    KnotDecl d{new_label(in), {}};
    in.keyword("class");
    d.gamma = word(in, "");
    model_->knots[d.label] = Knot{d.label, d.gamma};
    scenario_.decls.push_back(std::move(d));
  }

  void trace(Line& in) {
    TraceDecl d;
    d.label = new_label(in);
    in.keyword("from");
    const Knot& from = ref(in, model_->knots, "knot", &d.from);
    in.keyword("to");
    const Knot& to = ref(in, model_->knots, "knot", &d.to);
    in.keyword("latitude");
    d.latitude = word(in, "", {"points"});
    in.keyword("points");
    d.points = points(in);
    model_->traces[d.label] = make_trace(g(), d.label, from, to, d.points, d.latitude);
    scenario_.decls.push_back(std::move(d));
  }

  void sphere(Line& in) {
    SphereDecl d;
    d.label = new_label(in);
    if (in.try_keyword("unlink")) {
      const Knot& k = ref(in, model_->knots, "knot", &d.unlink_knot);
      SphereData s = sphere_for_unlink_complement(g(), k.gamma);
      s.label = d.label;
      model_->spheres[d.label] = std::move(s);
    } else {
      in.keyword("points");
      d.points = points(in);
      model_->spheres[d.label] = SphereData{d.label, d.points};
    }
    scenario_.decls.push_back(std::move(d));
  }

  void linktrace(Line& in) {
    LinkTraceDecl d;
    d.label = new_label(in);
    in.keyword("first");
    const Trace& a = ref(in, model_->traces, "trace", &d.first);
    in.keyword("second");
    const Trace& b = ref(in, model_->traces, "trace", &d.second);
    in.keyword("cross");
    d.cross = points(in);
    model_->link_traces[d.label] = LinkTrace{d.label, a, b, d.cross};
    scenario_.decls.push_back(std::move(d));
  }

  template <class Map>
  std::vector<typename Map::mapped_type> resolve(Line& in, const std::vector<std::string>& labels, const Map& map,
                                                 const char* what, std::size_t at) {
    std::vector<typename Map::mapped_type> out;
    for (const auto& l : labels) {
      const auto it = map.find(l);
      if (it == map.end()) in.error(ErrorCode::UnresolvedReference, std::string("no ") + what + " named '" + l + "'", at);
      out.push_back(it->second);
    }
    return out;
  }

  void phi(Line& in) {
    PhiDecl d;
    d.label = new_label(in);
    if (in.try_keyword("unknot")) {
      d.kind = PhiDecl::Kind::Unknot;
      add_phi(d, unknot_phi(model_->group));
      return;
    }
    in.keyword("knot");
    const Knot& k = ref(in, model_->knots, "knot", &d.knot);
    std::vector<Trace> traces;
    std::vector<SphereData> spheres;
    for (;;) {
      const std::size_t at = (in.ws(), in.pos());
      if (in.try_keyword("toroidal")) {
        d.toroidal = label_list(in);
        traces = resolve(in, d.toroidal, model_->traces, "trace", at);
      } else if (in.try_keyword("spheres")) {
        d.spheres = label_list(in);
        spheres = resolve(in, d.spheres, model_->spheres, "sphere", at);
      } else if (in.try_keyword("zeta")) {
        d.zeta = word_list(in);
      } else {
        break;
      }
    }
    add_phi(d, build_phi(model_->group, k, traces, spheres, d.zeta));
  }

  void philink(Line& in) {
    PhiDecl d;
    d.kind = PhiDecl::Kind::Link;
    d.label = new_label(in);
    in.keyword("knots");
    const Knot& k1 = ref(in, model_->knots, "knot", &d.knot);
    const Knot& k2 = ref(in, model_->knots, "knot", &d.knot2);
    std::vector<LinkTrace> traces;
    std::vector<SphereData> left, right;
    for (;;) {
      const std::size_t at = (in.ws(), in.pos());
      if (in.try_keyword("toroidal")) {
        d.toroidal = label_list(in);
        traces = resolve(in, d.toroidal, model_->link_traces, "link trace", at);
      } else if (in.try_keyword("left")) {
        d.spheres = label_list(in);
        left = resolve(in, d.spheres, model_->spheres, "sphere", at);
      } else if (in.try_keyword("right")) {
        d.right_spheres = label_list(in);
        right = resolve(in, d.right_spheres, model_->spheres, "sphere", at);
      } else if (in.try_keyword("zeta")) {
        d.zeta_pairs = pair_list(in);
      } else {
        break;
      }
    }
    add_phi(d, build_phi_link(model_->group, k1, k2, traces, left, right, d.zeta_pairs));
  }

  void add_phi(const PhiDecl& d, PhiGroup phi) {
    model_->phis[d.label] = std::move(phi);
    model_->phi_order.push_back(d.label);
    scenario_.decls.push_back(d);
  }

  void separator(Line& in) {
    SeparatorDecl d;
    d.name = new_label(in);
    std::vector<std::optional<std::vector<std::int64_t>>> images(g().rank());
    while (!in.try_keyword("mod")) {
      const std::size_t at = (in.ws(), in.pos());
      const std::string gen = in.label();
      const auto idx = g().spec().find(gen);
      if (!idx) in.error(ErrorCode::ParseError, "unknown generator '" + gen + "'", at);
      if (images[*idx]) in.error(ErrorCode::ParseError, "generator '" + gen + "' mapped twice", at);
      if (!in.accept("->")) in.error(ErrorCode::ParseError, "expected '->'");
      images[*idx] = int_tuple(in);
      if (in.done()) in.error(ErrorCode::ParseError, "expected 'mod'");
    }
    d.moduli = int_tuple(in);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!images[i]) in.error(ErrorCode::ParseError, "no image for generator '" + g().spec().labels()[i] + "'");
      d.images.push_back(*images[i]);
    }
    model_->separators.push_back(make_separator(g(), d.name, d.images, d.moduli));
    scenario_.decls.push_back(std::move(d));
  }

  void context(Line& in) {
    ContextDecl d;
    d.label = new_label(in);
    const std::size_t at = (in.ws(), in.pos());
    const std::string kind = in.until("");
    Line sub(kind, in.number());
    const std::string f = sub.until(" \t");
    ContextPtr ctx;
    auto knot = [&](std::string& out) -> const Knot& {
      const std::string label = sub.label();
      const auto it = model_->knots.find(label);
      if (it == model_->knots.end())
        in.error(ErrorCode::UnresolvedReference, "no knot named '" + label + "'", at + sub.pos());
      out = label;
      return it->second;
    };
    if (f == "plain") {
      d.flavor = Flavor::Plain;
      ctx = RingContext::plain(model_->group);
    } else if (f == "tilde") {
      d.flavor = Flavor::Tilde;
      ctx = RingContext::tilde(model_->group);
    } else if (f == "tilde-pi") {
      d.flavor = Flavor::TildePi;
      ctx = RingContext::tilde_pi(model_->group);
    } else if (f == "tilde-gamma") {
      d.flavor = Flavor::TildeGamma;
      ctx = RingContext::tilde_gamma(model_->group, knot(d.knot).gamma);
    } else if (f == "gamma") {
      d.flavor = Flavor::Gamma;
      ctx = RingContext::gamma_cosets(model_->group, knot(d.knot).gamma);
    } else if (f == "two-sided") {
      d.flavor = Flavor::TwoSided;
      const Word a = knot(d.knot).gamma;
      ctx = RingContext::two_sided(model_->group, a, knot(d.knot2).gamma);
    } else {
      in.error(ErrorCode::ParseError, "unknown context flavor '" + f + "'", at);
    }
    if (!sub.done()) in.error(ErrorCode::ParseError, "unexpected trailing text", at + sub.pos());
    model_->contexts[d.label] = ctx;
    scenario_.decls.push_back(std::move(d));
  }

  ContextPtr target(Line& in, std::string& label) {
    const std::size_t at = (in.ws(), in.pos());
    label = in.label();
    if (auto it = model_->contexts.find(label); it != model_->contexts.end()) return it->second;
    if (auto it = model_->phis.find(label); it != model_->phis.end()) return it->second.ctx;
    if (auto it = model_->knots.find(label); it != model_->knots.end())
      return RingContext::tilde_gamma(model_->group, it->second.gamma);
    in.error(ErrorCode::UnresolvedReference, "no context, phi or knot named '" + label + "'", at);
  }

  void element(Line& in) {
    ElementDecl d;
    d.label = new_label(in);
    in.keyword("in");
    const ContextPtr ctx = target(in, d.in);
    in.expect('=');
    const std::size_t at = (in.ws(), in.pos());
    const std::string text = in.rest();
    RingElement y(ctx);
    try {
      y = parse_ring_element(ctx, text);
    } catch (const Error& e) {
      in.error(ErrorCode::ParseError, e.what(), at);
    }
    d.value = y.str();
    model_->elements.emplace(d.label, std::move(y));
    scenario_.decls.push_back(std::move(d));
  }

  void expectation(Line& in) {
    ExpectDecl d;
    const std::size_t at = (in.ws(), in.pos());
    const std::string all = in.rest();
    const std::size_t arrow = all.find("=>");
    if (arrow == std::string::npos) in.error(ErrorCode::ParseError, "expected '=>'", at);
    std::istringstream cmd(all.substr(0, arrow));
    for (std::string tok; cmd >> tok;) d.command.push_back(tok);
    d.expected = std::string(trim(std::string_view(all).substr(arrow + 2)));
    if (d.command.empty() || d.expected.empty()) in.error(ErrorCode::ParseError, "incomplete expectation", at);
    model_->expectations.emplace_back(in.number(), d);
    scenario_.decls.push_back(std::move(d));
  }

  Scenario scenario_;
  std::shared_ptr<ScenarioModel> model_ = std::make_shared<ScenarioModel>();
  std::set<std::string> labels_;
};

// ---- printing

std::string format_points(const Group& g, const PointList& pts) {
  std::string out = "[";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out += (i ? ", (" : "(") + std::string(pts[i].sign > 0 ? "+" : "-") + ", " + g.format(pts[i].g) + ")";
  return out + "]";
}

std::string format_list(const std::vector<std::string>& v) { return "[" + join(v, ", ") + "]"; }

std::string format_tuple(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

struct Printer {
  const Group& g;
  std::ostringstream& os;

  void operator()(const KnotDecl& d) { os << "knot " << d.label << " class " << g.format(d.gamma); }
  void operator()(const TraceDecl& d) {
    os << "trace " << d.label << " from " << d.from << " to " << d.to << " latitude " << g.format(d.latitude)
       << " points " << format_points(g, d.points);
  }
  void operator()(const SphereDecl& d) {
    os << "sphere " << d.label;
    if (!d.unlink_knot.empty()) os << " unlink " << d.unlink_knot;
    else os << " points " << format_points(g, d.points);
  }
  void operator()(const LinkTraceDecl& d) {
    os << "linktrace " << d.label << " first " << d.first << " second " << d.second << " cross "
       << format_points(g, d.cross);
  }
  void operator()(const PhiDecl& d) {
    switch (d.kind) {
      case PhiDecl::Kind::Unknot:
        os << "phi " << d.label << " unknot";
        return;
      case PhiDecl::Kind::Knot:
        os << "phi " << d.label << " knot " << d.knot;
        if (!d.toroidal.empty()) os << " toroidal " << format_list(d.toroidal);
        if (!d.spheres.empty()) os << " spheres " << format_list(d.spheres);
        if (!d.zeta.empty()) {
          std::vector<std::string> words;
          for (const auto& w : d.zeta) words.push_back(g.format(w));
          os << " zeta " << format_list(words);
        }
        return;
      case PhiDecl::Kind::Link:
        os << "philink " << d.label << " knots " << d.knot << ' ' << d.knot2;
        if (!d.toroidal.empty()) os << " toroidal " << format_list(d.toroidal);
        if (!d.spheres.empty()) os << " left " << format_list(d.spheres);
        if (!d.right_spheres.empty()) os << " right " << format_list(d.right_spheres);
        if (!d.zeta_pairs.empty()) {
          std::vector<std::string> pairs;
          for (const auto& [a, b] : d.zeta_pairs) pairs.push_back("(" + g.format(a) + ", " + g.format(b) + ")");
          os << " zeta " << format_list(pairs);
        }
        return;
    }
  }
  void operator()(const SeparatorDecl& d) {
    os << "separator " << d.name;
    for (std::size_t i = 0; i < d.images.size(); ++i)
      os << ' ' << g.spec().labels()[i] << " -> " << format_tuple(d.images[i]);
    os << " mod " << format_tuple(d.moduli);
  }
  void operator()(const ContextDecl& d) {
    os << "context " << d.label << ' ' << flavor_keyword(d.flavor);
    if (!d.knot.empty()) os << ' ' << d.knot;
    if (!d.knot2.empty()) os << ' ' << d.knot2;
  }
  void operator()(const ElementDecl& d) { os << "element " << d.label << " in " << d.in << " = " << d.value; }
  void operator()(const ExpectDecl& d) { os << "expect " << join(d.command, " ") << " => " << d.expected; }
};

}  // namespace

std::string format_group_spec(const GroupSpec& spec) {
  std::ostringstream os;
  switch (spec.kind()) {
    case GroupKind::Free:
      os << "Free{" << join(spec.labels(), ",") << "}";
      break;
    case GroupKind::FreeAbelian:
      os << "FreeAbelian{" << join(spec.labels(), ",") << "}";
      break;
    case GroupKind::FreeTimesZ: {
      std::vector<std::string> free(spec.labels().begin(), spec.labels().end() - 1);
      os << "FreeTimesZ{" << join(free, ",") << ";" << spec.labels().back() << "}";
      break;
    }
    case GroupKind::FreeProduct: {
      os << "FreeProduct{";
      for (std::size_t i = 0; i < spec.factors().size(); ++i)
        os << (i ? ", " : "") << format_group_spec(spec.factors()[i]);
      os << "}";
      break;
    }
  }
  return os.str();
}

GroupSpec parse_group_spec(std::string_view text) {
  Line in(text, 1);
  GroupSpec spec = parse_spec(in);
  if (!in.done()) in.error(ErrorCode::ParseError, "unexpected trailing text");
  return spec;
}

Scenario parse_scenario(std::string_view text, std::string name) {
  Parser p(std::move(name));
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    p.line(line, ++number);
    start = end + 1;
  }
  return std::move(p).finish();
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (const auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (const auto dot = name.rfind(".scn"); dot != std::string::npos && dot + 4 == name.size()) name.resize(dot);
  try {
    return parse_scenario(buf.str(), name);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string print_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "group " << format_group_spec(s.group) << '\n';
  const Group& g = *s.model->group;
  for (const auto& d : s.decls) {
    std::visit(Printer{g, os}, d);
    os << '\n';
  }
  return os.str();
}

}  // namespace alink
