#include "contact_pi1/cone.hpp"

#include <algorithm>
#include <set>

#include "contact_pi1/polytope.hpp"

namespace contact_pi1 {

namespace {

std::string index_list(const std::vector<std::size_t> &idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(idx[i] + 1);
  }
  return s + "}";
}

std::size_t span_rank(const std::vector<IntVector> &vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(IntMatrix::from_rows(vectors, dim));
}

std::vector<std::size_t> vanishing(const std::vector<IntVector> &normals,
                                   const IntVector &x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (dot(normals[i], x) == 0) out.push_back(i);
  return out;
}

} // namespace

namespace detail {

std::vector<IntVector> pointed_rays(const std::vector<IntVector> &normals,
                                    std::size_t dim) {
  if (normals.empty()) return {};
  const IntMatrix n_mat = IntMatrix::from_rows(normals, dim);
  const std::size_t r = rank(n_mat);
  if (r == 0) return {};
  const std::vector<IntVector> lineality = kernel_basis(n_mat);

  std::set<IntVector> found;
  for_each_subset(normals.size(), r - 1, [&](const std::vector<std::size_t> &idx) {
    std::vector<IntVector> rows;
    rows.reserve(idx.size() + lineality.size());
    for (std::size_t i : idx) rows.push_back(normals[i]);
    rows.insert(rows.end(), lineality.begin(), lineality.end());
    std::vector<IntVector> ker = kernel_basis(IntMatrix::from_rows(rows, dim));
    if (ker.size() != 1) return true;
    IntVector x = std::move(ker.front());
    bool nonneg = true, nonpos = true;
    for (const IntVector &v : normals) {
      const int s = sgn(dot(v, x));
      if (s < 0) nonneg = false;
      if (s > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return true;
    if (!nonneg)
      for (Integer &e : x) e = -e;
    found.insert(std::move(x));
    return true;
  });
  return {found.begin(), found.end()};
}

} // namespace detail

// ---------------------------------------------------------------------------
// MomentCone

MomentCone MomentCone::build(const std::vector<IntVector> &raw_normals,
                             std::size_t ambient_dim) {
  if (ambient_dim < 2)
    throw Error(ErrorCode::BadDimension,
                "ambient dimension must be at least 2, got " +
                    std::to_string(ambient_dim));
  MomentCone c;
  c.ambient_dim_ = ambient_dim;
  for (std::size_t i = 0; i < raw_normals.size(); ++i) {
    const IntVector &v = raw_normals[i];
    if (v.size() != ambient_dim)
      throw Error(ErrorCode::BadDimension,
                  "normal " + std::to_string(i + 1) + " has length " +
                      std::to_string(v.size()) + ", expected " +
                      std::to_string(ambient_dim),
                  {i + 1});
    if (is_zero(v))
      throw Error(ErrorCode::ZeroNormal,
                  "normal " + std::to_string(i + 1) + " is zero", {i + 1});
    auto [p, g] = primitive_part(v);
    if (g > 1)
      c.warnings_.push_back("normal " + std::to_string(i + 1) + " " +
                            to_string(v) + " replaced by its primitive part " +
                            to_string(p));
    c.normals_.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < c.normals_.size(); ++i)
    for (std::size_t j = i + 1; j < c.normals_.size(); ++j)
      if (c.normals_[i] == c.normals_[j])
        throw Error(ErrorCode::DuplicateNormal,
                    "normals " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " coincide",
                    {i + 1, j + 1});
  if (c.normals_.empty()) return c;

  const std::size_t lin =
      kernel_basis(IntMatrix::from_rows(c.normals_, ambient_dim)).size();
  const std::vector<IntVector> rays = detail::pointed_rays(c.normals_, ambient_dim);
  if (lin + span_rank(rays, ambient_dim) != ambient_dim)
    throw Error(ErrorCode::BadDimension, "the halfspaces do not bound a "
                                         "full-dimensional cone");
  for (std::size_t i = 0; i < c.normals_.size(); ++i) {
    std::vector<IntVector> on_facet;
    for (const IntVector &r : rays)
      if (dot(r, c.normals_[i]) == 0) on_facet.push_back(r);
    if (lin + span_rank(on_facet, ambient_dim) + 1 < ambient_dim)
      throw Error(ErrorCode::RedundantFacet,
                  "normal " + std::to_string(i + 1) + " " +
                      to_string(c.normals_[i]) + " does not define a facet",
                  {i + 1});
  }
  return c;
}

IntMatrix MomentCone::normal_columns() const {
  return IntMatrix::from_columns(normals_, ambient_dim_);
}

MomentCone MomentCone::transformed(const IntMatrix &a) const {
  MomentCone c;
  c.ambient_dim_ = ambient_dim_;
  for (const IntVector &v : normals_) c.normals_.push_back(a * v);
  return c;
}

// ---------------------------------------------------------------------------
// Operations

std::size_t lineality_dim(const MomentCone &c) {
  if (c.normals().empty()) return c.ambient_dim();
  return c.ambient_dim() - rank(IntMatrix::from_rows(c.normals(), c.ambient_dim()));
}

std::vector<Ray> enumerate_rays(const MomentCone &c) {
  if (lineality_dim(c) != 0)
    throw Error(ErrorCode::NotStrictlyConvex,
                "cone contains a linear subspace of dimension " +
                    std::to_string(lineality_dim(c)));
  std::vector<Ray> rays;
  for (IntVector &g : detail::pointed_rays(c.normals(), c.ambient_dim())) {
    std::vector<std::size_t> facets = vanishing(c.normals(), g);
    rays.push_back({std::move(g), std::move(facets)});
  }
  return rays;
}

ConeValidation is_good(const MomentCone &c) {
  ConeValidation out;
  out.lineality_dim = lineality_dim(c);
  out.strictly_convex = out.lineality_dim == 0;
  if (!out.strictly_convex) return out;

  const std::size_t dim = c.ambient_dim();
  const std::vector<Ray> rays = enumerate_rays(c);

  // Every proper face is cut out by the facets common to some set of rays, so
  // the face lattice is the closure of the rays' facet sets under intersection.
  std::set<std::vector<std::size_t>> faces;
  std::vector<std::vector<std::size_t>> frontier;
  for (const Ray &r : rays)
    if (faces.insert(r.facet_indices).second) frontier.push_back(r.facet_indices);
  while (!frontier.empty()) {
    std::vector<std::size_t> t = std::move(frontier.back());
    frontier.pop_back();
    const std::vector<std::vector<std::size_t>> snapshot(faces.begin(), faces.end());
    for (const auto &f : snapshot) {
      std::vector<std::size_t> meet;
      std::set_intersection(t.begin(), t.end(), f.begin(), f.end(),
                            std::back_inserter(meet));
      if (!meet.empty() && faces.insert(meet).second) frontier.push_back(meet);
    }
  }

  for (const auto &facets : faces) {
    std::vector<IntVector> face_rays;
    for (const Ray &r : rays)
      if (std::includes(r.facet_indices.begin(), r.facet_indices.end(),
                        facets.begin(), facets.end()))
        face_rays.push_back(r.generator);
    const std::size_t codim = dim - span_rank(face_rays, dim);

    std::vector<IntVector> face_normals;
    for (std::size_t i : facets) face_normals.push_back(c.normals()[i]);
    const IntVector smith =
        smith_normal_form(IntMatrix::from_rows(face_normals, dim)).diagonal();

    std::string reason;
    if (facets.size() != codim) {
      reason = "face of codimension " + std::to_string(codim) + " lies on " +
               std::to_string(facets.size()) + " facets";
    } else if (!std::all_of(smith.begin(), smith.end(),
                            [](const Integer &d) { return d == 1; })) {
      reason = "normals " + index_list(facets) +
               " do not span a saturated sublattice";
    }
    if (!reason.empty())
      out.failures.push_back({facets, face_rays, codim, smith, reason});
  }
  out.good = out.failures.empty();
  return out;
}

IntVector find_reeb_vector(const MomentCone &c) {
  const std::vector<Ray> rays = enumerate_rays(c);
  IntVector sum(c.ambient_dim(), Integer(0));
  for (const IntVector &v : c.normals())
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
  if (is_zero(sum))
    throw Error(ErrorCode::InteriorVectorNotFound, "normals sum to zero");
  IntVector reeb = primitive_part(sum).first;
  for (const Ray &r : rays)
    if (dot(r.generator, reeb) <= 0)
      throw Error(ErrorCode::InteriorVectorNotFound,
                  to_string(reeb) + " does not pair positively with ray " +
                      to_string(r.generator));
  return reeb;
}

Reparametrization reparametrize_to_last_axis(const MomentCone &c,
                                             const IntVector &r) {
  if (r.size() != c.ambient_dim())
    throw Error(ErrorCode::BadDimension, "Reeb vector has wrong length");
  IntMatrix a = complete_to_unimodular(r);
  return {c.transformed(a), std::move(a)};
}

RationalPolytope slice_at_height_one(const MomentCone &c) {
  const std::size_t n = c.n();
  for (const Ray &r : enumerate_rays(c))
    if (r.generator[n] <= 0)
      throw Error(ErrorCode::ReebNotPositiveOnCone,
                  "ray " + to_string(r.generator) +
                      " does not have positive last coordinate");
  std::vector<Halfspace> hs;
  for (const IntVector &v : c.normals()) {
    IntVector u(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    hs.push_back({std::move(u), Rational(-v[n])});
  }
  return RationalPolytope::build(n, std::move(hs));
}

std::string ManifoldClass::label() const {
  switch (kind) {
  case Kind::ReebType: return "ReebType";
  case Kind::TorusTimesSphere: return "TorusTimesSphere(" + std::to_string(m) + ")";
  case Kind::PrincipalT3Bundle: return "PrincipalT3BundleOverS2";
  }
  return "";
}

ManifoldClass classify(const MomentCone &c, const std::optional<BundleClass> &bundle) {
  ManifoldClass out;
  out.n = c.n();
  out.m = lineality_dim(c);
  if (out.m == 0) {
    ConeValidation v = is_good(c);
    if (!v.good) {
      std::string msg = "strictly convex cone is not good";
      if (!v.failures.empty()) msg += ": " + v.failures.front().reason;
      throw Error(ErrorCode::InvalidMomentCone, msg);
    }
    out.kind = ManifoldClass::Kind::ReebType;
  } else if (out.m == c.ambient_dim() && out.n == 2) {
    if (!bundle)
      throw Error(ErrorCode::MissingBundleClass,
                  "whole-space cone in dimension 3 needs a bundle class (a, b, c)");
    out.kind = ManifoldClass::Kind::PrincipalT3Bundle;
    out.bundle = bundle;
  } else {
    out.kind = ManifoldClass::Kind::TorusTimesSphere;
  }
  return out;
}

} // namespace contact_pi1
