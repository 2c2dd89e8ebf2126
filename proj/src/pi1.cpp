#include "contact_pi1/pi1.hpp"

#include <algorithm>

namespace contact_pi1 {

namespace {

void require_good(const MomentCone &c) {
  const ConeValidation v = is_good(c);
  if (!v.strictly_convex)
    throw Error(ErrorCode::NotStrictlyConvex,
                "cone has lineality dimension " + std::to_string(v.lineality_dim));
  if (!v.good)
    throw Error(ErrorCode::NotGood, v.failures.front().reason);
}

EulerCoefficients euler_unchecked(const MomentCone &c, const Ray &base) {
  const std::size_t n = c.n();
  if (base.facet_indices.size() != n)
    throw Error(ErrorCode::NotGood, "ray " + to_string(base.generator) + " lies on " +
                                        std::to_string(base.facet_indices.size()) +
                                        " facets, expected " + std::to_string(n));
  EulerCoefficients out;
  out.base_ray = base;
  out.ordered_first_n = base.facet_indices;
  std::vector<IntVector> cols;
  for (std::size_t i : base.facet_indices) cols.push_back(c.normals()[i]);
  cols.emplace_back();
  for (std::size_t j = 0; j < c.facet_count(); ++j) {
    if (std::binary_search(base.facet_indices.begin(), base.facet_indices.end(), j))
      continue;
    out.remaining.push_back(j);
    cols.back() = c.normals()[j];
    out.coeffs.push_back(det(IntMatrix::from_columns(cols, c.ambient_dim())));
  }
  return out;
}

std::string skip_text(const Error &e) { return e.what(); }

bool wants(const Pi1Options &o, Method m) {
  return o.method == Method::All || o.method == m;
}

PolytopeSummary summarize(const RationalPolytope &p) {
  PolytopeSummary s;
  s.dim = p.dim();
  s.facets = p.facet_count();
  for (const Vertex &v : p.vertices()) s.vertices.push_back(v.point);
  s.simple = p.is_simple();
  s.delzant = is_delzant(p).delzant;
  s.integral = is_integral(p);
  return s;
}

// Runs the edge-length route on a moment polytope, or records why it cannot.
// `primitive_normals` is false when the slice normals had to be rescaled,
// i.e. the Reeb circle acts with finite stabilizers.
void run_polytope_route(const RationalPolytope &p, bool primitive_normals,
                        const Pi1Options &options, Pi1Report &report) {
  PolytopeSummary s = summarize(p);
  const bool applicable = primitive_normals && s.integral && s.delzant;
  if (!applicable && s.simple) report.orbifold = orbifold_vertex_orders(p);
  report.polytope = std::move(s);
  if (!wants(options, Method::ThmC)) return;

  MethodResult r{std::string(method_name(Method::ThmC)), std::nullopt, ""};
  if (!primitive_normals) {
    r.skip_reason = "slice normals are not primitive: the Reeb circle action "
                    "has finite stabilizers";
  } else if (!report.polytope->integral) {
    r.skip_reason = "NotIntegral: moment polytope has a non-integral vertex";
  } else if (!report.polytope->delzant) {
    r.skip_reason = report.polytope->simple
                        ? "NotDelzant: some vertex determinant is not +-1"
                        : "NotSimple: moment polytope is not simple";
  } else {
    try {
      r.group = pi1_thmC(p);
    } catch (const Error &e) {
      r.skip_reason = skip_text(e);
    }
  }
  report.methods.push_back(std::move(r));
}

// Cone routes for a strictly convex cone. Returns false if the cone is not good.
bool run_cone_routes(const MomentCone &c, const ConeValidation &v,
                     const Pi1Options &options, Pi1Report &report) {
  report.rays = enumerate_rays(c);
  if (!v.good) {
    report.class_label = "InvalidMomentCone";
    report.warnings.push_back("cone is not good (" + v.failures.front().reason +
                              "); lattice quotient reported without a "
                              "contact-geometric interpretation");
  } else {
    report.manifold = classify(c);
    report.class_label = report.manifold->label();
  }

  if (wants(options, Method::ThmB)) {
    MethodResult r{std::string(method_name(Method::ThmB)), std::nullopt, ""};
    if (!v.good) {
      r.skip_reason = "NotGood: " + v.failures.front().reason;
    } else {
      report.euler = euler_unchecked(c, report.rays->front());
      r.group = AbelianGroup::cyclic(gcd_all(report.euler->coeffs));
    }
    report.methods.push_back(std::move(r));
  }
  if (wants(options, Method::Lerman))
    report.methods.push_back(
        {std::string(method_name(Method::Lerman)), pi1_lerman(c), ""});
  return v.good;
}

void skip_cone_methods(const Pi1Options &options, const std::string &reason,
                       Pi1Report &report) {
  for (Method m : {Method::ThmB, Method::Lerman, Method::ThmC})
    if (wants(options, m))
      report.methods.push_back({std::string(method_name(m)), std::nullopt, reason});
}

void compute_for_cone(const ConeInput &in, const Pi1Options &options,
                      Pi1Report &report) {
  const MomentCone &c = in.cone;
  report.warnings = c.warnings();
  const ConeValidation v = is_good(c);
  report.cone_validation = v;

  if (!v.strictly_convex) {
    report.manifold = classify(c, in.bundle);
    report.class_label = report.manifold->label();
    if (report.manifold->kind == ManifoldClass::Kind::PrincipalT3Bundle) {
      BundleHomotopy h = pi1_t3_bundle(*report.manifold->bundle);
      report.methods.push_back({"bundle", h.pi1, ""});
      report.pi2 = h.pi2;
    } else {
      // T^m x S^{2n+1-m}; the sphere is a circle only for T^2 x S^1.
      const std::size_t m = report.manifold->m;
      const bool circle = 2 * report.manifold->n + 1 - m == 1;
      report.methods.push_back({"lineality", AbelianGroup::free(m + (circle ? 1 : 0)), ""});
    }
    skip_cone_methods(options, "NotStrictlyConvex: not of Reeb type", report);
    return;
  }

  const bool good = run_cone_routes(c, v, options, report);
  if (!wants(options, Method::ThmC)) return;
  const std::string thmc(method_name(Method::ThmC));
  if (!good) {
    report.methods.push_back({thmc, std::nullopt, "cone is not good"});
    return;
  }
  try {
    IntVector reeb = in.reeb ? *in.reeb : find_reeb_vector(c);
    report.reeb_vector = reeb;
    Reparametrization rp = reparametrize_to_last_axis(c, reeb);
    RationalPolytope slice = slice_at_height_one(rp.cone);
    for (const std::string &w : slice.warnings()) report.warnings.push_back("slice: " + w);
    run_polytope_route(slice, !slice.rescaled(), options, report);
  } catch (const Error &e) {
    report.methods.push_back({thmc, std::nullopt, skip_text(e)});
  }
}

void compute_for_polytope(const RationalPolytope &p, const Pi1Options &options,
                          Pi1Report &report) {
  report.warnings = p.warnings();
  // Rescaling a user-supplied halfspace leaves the polytope unchanged.
  run_polytope_route(p, true, options, report);

  std::optional<MomentCone> cone;
  try {
    cone = cone_over_polytope(p);
  } catch (const Error &e) {
    report.class_label = "Undetermined";
    report.warnings.push_back(std::string("no moment cone: ") + e.what());
    for (Method m : {Method::ThmB, Method::Lerman})
      if (wants(options, m))
        report.methods.push_back({std::string(method_name(m)), std::nullopt, skip_text(e)});
    return;
  }
  const ConeValidation v = is_good(*cone);
  report.cone_validation = v;
  run_cone_routes(*cone, v, options, report);
}

void compute_for_bundle(const BundleClass &cls, Pi1Report &report) {
  ManifoldClass mc;
  mc.kind = ManifoldClass::Kind::PrincipalT3Bundle;
  mc.n = 2;
  mc.m = 3;
  mc.bundle = cls;
  report.manifold = mc;
  report.class_label = mc.label();
  BundleHomotopy h = pi1_t3_bundle(cls);
  report.methods.push_back({"bundle", h.pi1, ""});
  report.pi2 = h.pi2;
}

} // namespace

// ---------------------------------------------------------------------------

EulerCoefficients euler_coefficients(const MomentCone &c) {
  require_good(c);
  return euler_unchecked(c, enumerate_rays(c).front());
}

EulerCoefficients euler_coefficients(const MomentCone &c, const Ray &base) {
  require_good(c);
  return euler_unchecked(c, base);
}

AbelianGroup pi1_thmB(const MomentCone &c) {
  return AbelianGroup::cyclic(gcd_all(euler_coefficients(c).coeffs));
}

AbelianGroup pi1_thmB(const MomentCone &c, const Ray &base) {
  return AbelianGroup::cyclic(gcd_all(euler_coefficients(c, base).coeffs));
}

AbelianGroup pi1_lerman(const MomentCone &c) {
  if (lineality_dim(c) != 0)
    throw Error(ErrorCode::NotStrictlyConvex,
                "cone has lineality dimension " + std::to_string(lineality_dim(c)));
  return cokernel(c.normal_columns());
}

BundleHomotopy pi1_t3_bundle(const BundleClass &cls) {
  const IntVector abc{cls.a, cls.b, cls.c};
  const Integer k = gcd_all(abc);
  return {AbelianGroup::cyclic(k).direct_sum(AbelianGroup::free(2)),
          k == 0 ? AbelianGroup::free(1) : AbelianGroup::trivial()};
}

std::string_view method_name(Method m) {
  switch (m) {
  case Method::All: return "all";
  case Method::ThmB: return "thmB";
  case Method::Lerman: return "lerman";
  case Method::ThmC: return "thmC";
  }
  return "";
}

const MethodResult *Pi1Report::method(std::string_view name) const {
  for (const MethodResult &m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

Pi1Report compute_pi1(const Pi1Input &input, const Pi1Options &options) {
  Pi1Report report;
  if (const auto *cone = std::get_if<ConeInput>(&input))
    compute_for_cone(*cone, options, report);
  else if (const auto *poly = std::get_if<RationalPolytope>(&input))
    compute_for_polytope(*poly, options, report);
  else
    compute_for_bundle(std::get<BundleClass>(input), report);

  const auto position = [](const MethodResult &m) {
    for (Method k : {Method::ThmB, Method::Lerman, Method::ThmC})
      if (m.name == method_name(k)) return static_cast<int>(k);
    return 0;
  };
  std::stable_sort(report.methods.begin(), report.methods.end(),
                   [&](const MethodResult &a, const MethodResult &b) {
                     return position(a) < position(b);
                   });

  std::vector<const MethodResult *> ran;
  for (const MethodResult &m : report.methods)
    if (m.group) ran.push_back(&m);
  for (const MethodResult *m : ran)
    if (*m->group != *ran.front()->group) report.agree = false;
  if (!report.agree) {
    for (const MethodResult *m : ran) {
      if (!report.disagreement.empty()) report.disagreement += ", ";
      report.disagreement += m->name + " = " + m->group->to_string();
    }
  }
  const bool meaningful =
      report.class_label != "InvalidMomentCone" && report.class_label != "Undetermined";
  if (meaningful && !ran.empty()) report.pi1 = *ran.front()->group;
  return report;
}

std::string describe(const ManifoldClass &cls) {
  switch (cls.kind) {
  case ManifoldClass::Kind::ReebType:
    return "Reeb type, dimension " + std::to_string(2 * cls.n + 1);
  case ManifoldClass::Kind::TorusTimesSphere: {
    const std::string torus = cls.m == 1 ? "S^1" : "T^" + std::to_string(cls.m);
    return torus + " x S^" + std::to_string(2 * cls.n + 1 - cls.m);
  }
  case ManifoldClass::Kind::PrincipalT3Bundle: {
    std::string s = "principal T^3-bundle over S^2";
    if (cls.bundle)
      s += " with class (" + cls.bundle->a.get_str() + ", " + cls.bundle->b.get_str() +
           ", " + cls.bundle->c.get_str() + ")";
    return s;
  }
  }
  return "";
}

} // namespace contact_pi1
