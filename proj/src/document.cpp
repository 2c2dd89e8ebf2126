#include "contact_pi1/document.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace contact_pi1 {

namespace {

using json = nlohmann::json;

// Line of every value in a syntactically valid JSON text, keyed by path
// ("", "normals", "normals[1]", "halfspaces[0].offset", ...).
class LineIndex {
public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    value("");
  }

  std::size_t line_of(const std::string &path) const {
    std::string p = path;
    for (;;) {
      if (auto it = lines_.find(p); it != lines_.end()) return it->second;
      const std::size_t cut = p.find_last_of(".[");
      if (cut == std::string::npos) return p.empty() ? 1 : line_of("");
      p.resize(cut);
    }
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') out += text_[pos_++];
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string &path) {
    lines_.emplace(path, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_; // ':'
        skip_ws();
        value(path.empty() ? key : path + "." + key);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (std::size_t i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(path + "[" + std::to_string(i) + "]");
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '}')
        ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

// Thrown while walking the DOM; turned into Error(ParseError) with a line.
struct FieldError {
  std::string path;
  std::string message;
};

std::string join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string &path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

bool is_decimal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(const json &j, const std::string &path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (is_decimal(s)) {
      if (s[0] == '+') s.erase(0, 1);
      return Integer(s);
    }
    throw FieldError{path, "expected an integer string, got \"" + s + "\""};
  }
  if (j.is_number_float())
    throw FieldError{path, "floating-point numbers are not accepted; use an "
                           "integer or a \"p/q\" string"};
  throw FieldError{path, "expected an integer, got " + std::string(j.type_name())};
}

Rational parse_rational(const json &j, const std::string &path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!is_decimal(num) || !is_decimal(den) || den[0] == '-' || den[0] == '+')
        throw FieldError{path, "malformed fraction \"" + s + "\""};
      Integer d(den);
      if (d == 0) throw FieldError{path, "zero denominator in \"" + s + "\""};
      Rational q(Integer(num[0] == '+' ? num.substr(1) : num), d);
      q.canonicalize();
      return q;
    }
  }
  return Rational(parse_integer(j, path));
}

IntVector parse_int_vector(const json &j, const std::string &path) {
  if (!j.is_array())
    throw FieldError{path, "expected an array of integers, got " + std::string(j.type_name())};
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_integer(j[i], at(path, i)));
  return out;
}

std::size_t parse_dim(const json &j, const std::string &path) {
  const Integer d = parse_integer(j, path);
  if (d < 1 || d > 64) throw FieldError{path, "ambient_dim must be in [1, 64]"};
  return d.get_ui();
}

void check_fields(const json &obj, const std::string &path,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional,
                  std::string_view context) {
  for (const auto &[key, value] : obj.items()) {
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known)
      throw FieldError{join(path, key),
                       "unknown field \"" + key + "\" for " + std::string(context)};
  }
  for (std::string_view key : required)
    if (!obj.contains(key))
      throw FieldError{path, "missing required field \"" + std::string(key) + "\" for " +
                                 std::string(context)};
}

InputDocument walk(const json &j, const std::string &path) {
  if (!j.is_object())
    throw FieldError{path, "expected a JSON object, got " + std::string(j.type_name())};
  if (!j.contains("kind")) throw FieldError{path, "missing required field \"kind\""};
  const json &kind = j.at("kind");
  if (!kind.is_string()) throw FieldError{join(path, "kind"), "kind must be a string"};

  InputDocument doc;
  const std::string k = kind.get<std::string>();
  if (k == "cone") {
    doc.kind = InputDocument::Kind::Cone;
    check_fields(j, path, {"kind", "ambient_dim", "normals"},
                 {"bundle_class", "reeb", "label"}, "kind \"cone\"");
  } else if (k == "polytope") {
    doc.kind = InputDocument::Kind::Polytope;
    check_fields(j, path, {"kind", "ambient_dim", "halfspaces"}, {"label"},
                 "kind \"polytope\"");
  } else if (k == "t3_bundle") {
    doc.kind = InputDocument::Kind::T3Bundle;
    check_fields(j, path, {"kind", "bundle_class"}, {"ambient_dim", "label"},
                 "kind \"t3_bundle\"");
  } else {
    throw FieldError{join(path, "kind"),
                     "unknown kind \"" + k + "\" (expected cone, polytope or t3_bundle)"};
  }

  if (j.contains("label")) {
    if (!j["label"].is_string()) throw FieldError{join(path, "label"), "label must be a string"};
    doc.label = j["label"].get<std::string>();
  }
  if (j.contains("ambient_dim"))
    doc.ambient_dim = parse_dim(j["ambient_dim"], join(path, "ambient_dim"));
  if (doc.kind == InputDocument::Kind::T3Bundle && doc.ambient_dim && *doc.ambient_dim != 3)
    throw FieldError{join(path, "ambient_dim"), "a T^3-bundle has ambient_dim 3"};

  if (j.contains("normals")) {
    const std::string p = join(path, "normals");
    if (!j["normals"].is_array()) throw FieldError{p, "normals must be an array"};
    for (std::size_t i = 0; i < j["normals"].size(); ++i)
      doc.normals.push_back(parse_int_vector(j["normals"][i], at(p, i)));
  }
  if (j.contains("halfspaces")) {
    const std::string p = join(path, "halfspaces");
    if (!j["halfspaces"].is_array()) throw FieldError{p, "halfspaces must be an array"};
    for (std::size_t i = 0; i < j["halfspaces"].size(); ++i) {
      const json &h = j["halfspaces"][i];
      const std::string hp = at(p, i);
      if (!h.is_object())
        throw FieldError{hp, "a halfspace is an object {\"normal\": [...], \"offset\": q}"};
      check_fields(h, hp, {"normal", "offset"}, {}, "a halfspace");
      doc.halfspaces.push_back({parse_int_vector(h["normal"], join(hp, "normal")),
                                parse_rational(h["offset"], join(hp, "offset"))});
    }
  }
  if (j.contains("bundle_class")) {
    const std::string p = join(path, "bundle_class");
    IntVector abc = parse_int_vector(j["bundle_class"], p);
    if (abc.size() != 3) throw FieldError{p, "bundle_class must have exactly 3 entries"};
    doc.bundle_class = BundleClass{abc[0], abc[1], abc[2]};
  }
  if (j.contains("reeb")) doc.reeb = parse_int_vector(j["reeb"], join(path, "reeb"));
  return doc;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto cut = msg.find("syntax error"); cut != std::string::npos) msg = msg.substr(cut);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

InputDocument walk_with_lines(const json &j, const std::string &path, const LineIndex &lines) {
  try {
    return walk(j, path);
  } catch (const FieldError &e) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lines.line_of(e.path)) +
                                           ", field '" + (e.path.empty() ? "<root>" : e.path) +
                                           "': " + e.message);
  }
}

// ---------------------------------------------------------------------------
// Rendering helpers

ordered_json index_json(const std::vector<std::size_t> &idx) {
  ordered_json out = ordered_json::array();
  for (std::size_t i : idx) out.push_back(i + 1);
  return out;
}

ordered_json point_json(const RatVector &v) {
  ordered_json out = ordered_json::array();
  for (const Rational &x : v) out.push_back(rational_json(x));
  return out;
}

ordered_json group_json(const std::optional<AbelianGroup> &g) {
  return g ? ordered_json(g->to_string()) : ordered_json(nullptr);
}

ordered_json failures_json(const ConeValidation &v) {
  ordered_json out = ordered_json::array();
  for (const FaceFailure &f : v.failures) {
    ordered_json rays = ordered_json::array();
    for (const IntVector &r : f.rays) rays.push_back(vector_json(r));
    out.push_back({{"facets", index_json(f.facet_indices)},
                   {"codim", f.codim},
                   {"rays", rays},
                   {"smith_invariants", vector_json(f.smith_invariants)},
                   {"reason", f.reason}});
  }
  return out;
}

ordered_json validation_block(const std::optional<ConeValidation> &cone,
                              const std::optional<PolytopeSummary> &poly,
                              std::optional<std::size_t> bundle_lineality) {
  ordered_json v;
  if (cone) {
    v["strictly_convex"] = cone->strictly_convex;
    v["good"] = cone->strictly_convex ? ordered_json(cone->good) : ordered_json(nullptr);
    v["lineality_dim"] = cone->lineality_dim;
  } else {
    v["strictly_convex"] = bundle_lineality ? ordered_json(false) : ordered_json(nullptr);
    v["good"] = nullptr;
    v["lineality_dim"] = bundle_lineality ? ordered_json(*bundle_lineality) : ordered_json(nullptr);
  }
  v["delzant"] = poly ? ordered_json(poly->delzant) : ordered_json(nullptr);
  v["integral"] = poly ? ordered_json(poly->integral) : ordered_json(nullptr);
  v["failures"] = cone ? failures_json(*cone) : ordered_json::array();
  return v;
}

ordered_json rays_json(const std::vector<Ray> &rays) {
  ordered_json out = ordered_json::array();
  for (const Ray &r : rays)
    out.push_back({{"generator", vector_json(r.generator)},
                   {"facets", index_json(r.facet_indices)}});
  return out;
}

ordered_json polytope_json(const PolytopeSummary &s) {
  ordered_json vs = ordered_json::array();
  for (const RatVector &v : s.vertices) vs.push_back(point_json(v));
  return {{"dim", s.dim},       {"facets", s.facets},     {"vertices", vs},
          {"simple", s.simple}, {"delzant", s.delzant}, {"integral", s.integral}};
}

ordered_json orbifold_json(const OrbifoldData &o) {
  return {{"vertex_orders", vector_json(o.order_by_vertex)}, {"m_lcm", integer_json(o.m_lcm)}};
}

std::string plain(const ordered_json &j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

} // namespace

// ---------------------------------------------------------------------------

std::string_view kind_name(InputDocument::Kind kind) {
  switch (kind) {
  case InputDocument::Kind::Cone: return "cone";
  case InputDocument::Kind::Polytope: return "polytope";
  case InputDocument::Kind::T3Bundle: return "t3_bundle";
  }
  return "";
}

ordered_json integer_json(const Integer &x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

ordered_json vector_json(const IntVector &v) {
  ordered_json out = ordered_json::array();
  for (const Integer &x : v) out.push_back(integer_json(x));
  return out;
}

ordered_json rational_json(const Rational &x) {
  if (x.get_den() == 1) return integer_json(x.get_num());
  return x.get_str();
}

InputDocument document_from_json(const nlohmann::json &j, const std::string &where) {
  try {
    return walk(j, where);
  } catch (const FieldError &e) {
    throw Error(ErrorCode::ParseError,
                "field '" + (e.path.empty() ? "<root>" : e.path) + "': " + e.message);
  }
}

InputDocument parse_input(std::string_view text) {
  const json j = parse_text(text);
  return walk_with_lines(j, "", LineIndex(text));
}

std::vector<InputDocument> parse_batch(std::string_view text) {
  const json j = parse_text(text);
  const LineIndex lines(text);
  std::vector<InputDocument> out;
  if (!j.is_array()) {
    out.push_back(walk_with_lines(j, "", lines));
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(walk_with_lines(j[i], "[" + std::to_string(i) + "]", lines));
  return out;
}

ordered_json to_json(const InputDocument &doc) {
  ordered_json j;
  j["kind"] = kind_name(doc.kind);
  if (doc.label) j["label"] = *doc.label;
  if (doc.ambient_dim) j["ambient_dim"] = *doc.ambient_dim;
  switch (doc.kind) {
  case InputDocument::Kind::Cone: {
    ordered_json ns = ordered_json::array();
    for (const IntVector &v : doc.normals) ns.push_back(vector_json(v));
    j["normals"] = ns;
    break;
  }
  case InputDocument::Kind::Polytope: {
    ordered_json hs = ordered_json::array();
    for (const Halfspace &h : doc.halfspaces)
      hs.push_back({{"normal", vector_json(h.normal)}, {"offset", rational_json(h.offset)}});
    j["halfspaces"] = hs;
    break;
  }
  case InputDocument::Kind::T3Bundle: break;
  }
  if (doc.bundle_class)
    j["bundle_class"] = vector_json({doc.bundle_class->a, doc.bundle_class->b, doc.bundle_class->c});
  if (doc.reeb) j["reeb"] = vector_json(*doc.reeb);
  return j;
}

Pi1Input to_pi1_input(const InputDocument &doc) {
  switch (doc.kind) {
  case InputDocument::Kind::Cone:
    return ConeInput{MomentCone::build(doc.normals, *doc.ambient_dim), doc.bundle_class,
                     doc.reeb};
  case InputDocument::Kind::Polytope:
    return RationalPolytope::build(*doc.ambient_dim, doc.halfspaces);
  case InputDocument::Kind::T3Bundle:
    return *doc.bundle_class;
  }
  throw Error(ErrorCode::ParseError, "unknown document kind");
}

OutputReport run(const InputDocument &doc, const RunOptions &options) {
  Pi1Options o;
  o.method = options.method;
  return {doc, compute_pi1(to_pi1_input(doc), o)};
}

ordered_json report_json(const OutputReport &report) {
  const Pi1Report &r = report.result;
  ordered_json j;
  if (report.input.label) j["label"] = *report.input.label;
  j["input"] = to_json(report.input);
  std::optional<std::size_t> bundle_lin;
  if (report.input.kind == InputDocument::Kind::T3Bundle) bundle_lin = 3;
  j["validation"] = validation_block(r.cone_validation, r.polytope, bundle_lin);
  j["class_label"] = r.class_label;
  j["manifold"] = r.manifold ? ordered_json(describe(*r.manifold)) : ordered_json(nullptr);
  j["pi1"] = group_json(r.pi1);
  if (r.pi2) j["pi2"] = r.pi2->to_string();
  ordered_json methods = ordered_json::object();
  for (const MethodResult &m : r.methods) {
    if (m.group)
      methods[m.name] = {{"pi1", m.group->to_string()}};
    else
      methods[m.name] = {{"skipped", m.skip_reason}};
  }
  j["methods"] = methods;
  j["cross_check"] = r.agree ? "Agree" : "Disagree";
  if (!r.agree) j["disagreement"] = r.disagreement;
  j["warnings"] = r.warnings;
  if (r.rays) j["rays"] = rays_json(*r.rays);
  if (r.reeb_vector) j["reeb_vector"] = vector_json(*r.reeb_vector);
  if (r.euler)
    j["euler_coefficients"] = {{"base_ray", vector_json(r.euler->base_ray.generator)},
                               {"first_n", index_json(r.euler->ordered_first_n)},
                               {"remaining", index_json(r.euler->remaining)},
                               {"coeffs", vector_json(r.euler->coeffs)}};
  if (r.polytope) j["polytope"] = polytope_json(*r.polytope);
  if (r.orbifold) j["orbifold"] = orbifold_json(*r.orbifold);
  return j;
}

std::string render(const OutputReport &report, Format format) {
  const ordered_json j = report_json(report);
  if (format == Format::Json) return j.dump(2) + "\n";

  std::ostringstream os;
  if (j.contains("label")) os << "label: " << plain(j["label"]) << '\n';
  os << "kind: " << kind_name(report.input.kind) << '\n';
  os << "class: " << plain(j["class_label"]);
  if (!j["manifold"].is_null()) os << " (" << plain(j["manifold"]) << ")";
  os << '\n';
  os << "pi1: " << (j["pi1"].is_null() ? "undetermined" : plain(j["pi1"])) << '\n';
  if (j.contains("pi2")) os << "pi2: " << plain(j["pi2"]) << '\n';
  for (const auto &[name, m] : j["methods"].items()) {
    os << "method " << name << ": ";
    if (m.contains("pi1"))
      os << plain(m["pi1"]) << '\n';
    else
      os << "skipped (" << plain(m["skipped"]) << ")\n";
  }
  os << "cross_check: " << plain(j["cross_check"]) << '\n';
  if (j.contains("disagreement")) os << "disagreement: " << plain(j["disagreement"]) << '\n';
  const ordered_json &v = j["validation"];
  os << "validation:";
  for (const char *key : {"strictly_convex", "good", "lineality_dim", "delzant", "integral"})
    os << ' ' << key << '=' << v[key].dump();
  os << '\n';
  for (const auto &f : v["failures"]) os << "failure: " << plain(f["reason"]) << '\n';
  if (j.contains("reeb_vector")) os << "reeb_vector: " << j["reeb_vector"].dump() << '\n';
  if (j.contains("euler_coefficients"))
    os << "euler_coefficients: " << j["euler_coefficients"]["coeffs"].dump() << '\n';
  if (j.contains("orbifold"))
    os << "orbifold: vertex_orders=" << j["orbifold"]["vertex_orders"].dump()
       << " m_lcm=" << j["orbifold"]["m_lcm"].dump() << '\n';
  for (const auto &w : j["warnings"]) os << "warning: " << plain(w) << '\n';
  return os.str();
}

ordered_json validation_json(const InputDocument &doc) {
  ordered_json j;
  if (doc.label) j["label"] = *doc.label;
  j["kind"] = kind_name(doc.kind);
  const Pi1Input in = to_pi1_input(doc);

  if (const auto *c = std::get_if<ConeInput>(&in)) {
    const ConeValidation v = is_good(c->cone);
    j["validation"] = validation_block(v, std::nullopt, std::nullopt);
    j["valid"] = !v.strictly_convex || v.good;
    j["warnings"] = c->cone.warnings();
    if (v.strictly_convex) {
      j["rays"] = rays_json(enumerate_rays(c->cone));
      if (v.good) {
        try {
          j["reeb_vector"] = vector_json(c->reeb ? *c->reeb : find_reeb_vector(c->cone));
        } catch (const Error &e) {
          j["warnings"].push_back(e.what());
        }
      }
    } else {
      try {
        j["class_label"] = classify(c->cone, c->bundle).label();
      } catch (const Error &e) {
        j["valid"] = false;
        j["warnings"].push_back(e.what());
      }
    }
  } else if (const auto *p = std::get_if<RationalPolytope>(&in)) {
    PolytopeSummary s;
    s.dim = p->dim();
    s.facets = p->facet_count();
    for (const Vertex &v : p->vertices()) s.vertices.push_back(v.point);
    s.simple = p->is_simple();
    const DelzantCheck dz = is_delzant(*p);
    s.delzant = dz.delzant;
    s.integral = is_integral(*p);
    j["validation"] = validation_block(std::nullopt, s, std::nullopt);
    j["valid"] = true;
    j["warnings"] = p->warnings();
    j["polytope"] = polytope_json(s);
    ordered_json viol = ordered_json::array();
    for (const auto &[vi, d] : dz.violations)
      viol.push_back({{"vertex", point_json(p->vertices()[vi].point)}, {"det", integer_json(d)}});
    j["delzant_violations"] = viol;
    if (s.simple && !(s.delzant && s.integral)) j["orbifold"] = orbifold_json(orbifold_vertex_orders(*p));
  } else {
    j["validation"] = validation_block(std::nullopt, std::nullopt, std::size_t{3});
    j["valid"] = true;
    j["warnings"] = ordered_json::array();
    j["class_label"] = "PrincipalT3BundleOverS2";
  }
  return j;
}

} // namespace contact_pi1
