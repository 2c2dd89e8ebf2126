#include "contact_pi1/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "contact_pi1/pi1.hpp"

namespace contact_pi1 {

std::string to_string(const RatVector &v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].get_str();
  }
  out << ')';
  return out.str();
}

bool is_integral(const RatVector &v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational &x) { return x.get_den() == 1; });
}

namespace {

Rational pair(const RatVector &x, const IntVector &u) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * u[i];
  return s;
}

// Solves M x = rhs for square M; nullopt if M is singular.
std::optional<RatVector> solve(const std::vector<IntVector> &rows,
                               const RatVector &rhs) {
  const std::size_t n = rows.size();
  std::vector<RatVector> a(n, RatVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
    a[i][n] = rhs[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

// Clears denominators: the integer vector lcm(den) * v.
IntVector scaled_to_integer(const RatVector &v) {
  Integer l = 1;
  for (const Rational &x : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = v[i].get_num() * (l / v[i].get_den());
  return out;
}

RatVector difference(const RatVector &a, const RatVector &b) {
  RatVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

std::size_t affine_rank(const std::vector<const RatVector *> &points,
                        std::size_t dim) {
  if (points.size() < 2) return 0;
  std::vector<IntVector> diffs;
  for (std::size_t k = 1; k < points.size(); ++k)
    diffs.push_back(scaled_to_integer(difference(*points[k], *points[0])));
  return rank(IntMatrix::from_rows(diffs, dim));
}

Integer active_determinant(const RationalPolytope &p, const Vertex &v) {
  std::vector<IntVector> rows;
  for (std::size_t i : v.active) rows.push_back(p.halfspaces()[i].normal);
  return det(IntMatrix::from_rows(rows, p.dim()));
}

void require_simple(const RationalPolytope &p) {
  if (!p.is_simple())
    throw Error(ErrorCode::NotSimple,
                "some vertex lies on more than " + std::to_string(p.dim()) +
                    " facets");
}

std::vector<Rational> vertex_values(const RationalPolytope &p, const IntVector &x) {
  std::vector<Rational> vals;
  for (const Vertex &v : p.vertices()) vals.push_back(pair(v.point, x));
  return vals;
}

bool separates_vertices(const RationalPolytope &p, const IntVector &x) {
  std::vector<Rational> vals = vertex_values(p, x);
  std::sort(vals.begin(), vals.end());
  return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

} // namespace

// ---------------------------------------------------------------------------
// Construction

RationalPolytope RationalPolytope::build(std::size_t dim,
                                         std::vector<Halfspace> halfspaces) {
  if (dim == 0) throw Error(ErrorCode::BadDimension, "polytope dimension must be positive");
  if (halfspaces.empty())
    throw Error(ErrorCode::Unbounded, "no halfspaces given");

  RationalPolytope p;
  p.dim_ = dim;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    Halfspace &h = halfspaces[i];
    if (h.normal.size() != dim)
      throw Error(ErrorCode::BadDimension,
                  "halfspace " + std::to_string(i + 1) + " normal has length " +
                      std::to_string(h.normal.size()) + ", expected " +
                      std::to_string(dim),
                  {i + 1});
    if (is_zero(h.normal))
      throw Error(ErrorCode::ZeroNormal,
                  "halfspace " + std::to_string(i + 1) + " has zero normal", {i + 1});
    auto [u, g] = primitive_part(h.normal);
    if (g > 1) {
      p.rescaled_ = true;
      p.warnings_.push_back("halfspace " + std::to_string(i + 1) + " normal " +
                            to_string(h.normal) + " divided by " + g.get_str());
      h.offset /= g;
      h.normal = std::move(u);
    }
  }
  for (std::size_t i = 0; i < halfspaces.size(); ++i)
    for (std::size_t j = i + 1; j < halfspaces.size(); ++j)
      if (halfspaces[i].normal == halfspaces[j].normal)
        throw Error(ErrorCode::DuplicateNormal,
                    "halfspaces " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " share a normal",
                    {i + 1, j + 1});
  p.halfspaces_ = std::move(halfspaces);

  std::vector<IntVector> normals;
  for (const Halfspace &h : p.halfspaces_) normals.push_back(h.normal);
  if (rank(IntMatrix::from_rows(normals, dim)) < dim)
    throw Error(ErrorCode::Unbounded, "halfspace normals do not span R^" +
                                          std::to_string(dim));

  std::map<RatVector, std::vector<std::size_t>> found;
  detail::for_each_subset(normals.size(), dim, [&](const std::vector<std::size_t> &idx) {
    std::vector<IntVector> rows;
    RatVector rhs;
    for (std::size_t i : idx) {
      rows.push_back(normals[i]);
      rhs.push_back(p.halfspaces_[i].offset);
    }
    std::optional<RatVector> x = solve(rows, rhs);
    if (!x || found.count(*x)) return true;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      const Rational s = pair(*x, normals[i]);
      if (s < p.halfspaces_[i].offset) return true;
      if (s == p.halfspaces_[i].offset) active.push_back(i);
    }
    found.emplace(std::move(*x), std::move(active));
    return true;
  });
  if (found.empty()) throw Error(ErrorCode::Empty, "halfspaces have empty intersection");
  if (!detail::pointed_rays(normals, dim).empty())
    throw Error(ErrorCode::Unbounded, "halfspaces do not bound a polytope");

  for (auto &[pt, active] : found) p.vertices_.push_back({pt, std::move(active)});

  std::vector<const RatVector *> all;
  for (const Vertex &v : p.vertices_) all.push_back(&v.point);
  if (affine_rank(all, dim) != dim)
    throw Error(ErrorCode::BadDimension, "polytope is not full-dimensional");
  for (std::size_t i = 0; i < p.halfspaces_.size(); ++i) {
    std::vector<const RatVector *> on_facet;
    for (const Vertex &v : p.vertices_)
      if (std::binary_search(v.active.begin(), v.active.end(), i))
        on_facet.push_back(&v.point);
    if (on_facet.empty() || affine_rank(on_facet, dim) + 1 != dim)
      throw Error(ErrorCode::RedundantFacet,
                  "halfspace " + std::to_string(i + 1) + " does not support a facet",
                  {i + 1});
  }

  p.simple_ = std::all_of(p.vertices_.begin(), p.vertices_.end(),
                          [dim](const Vertex &v) { return v.active.size() == dim; });
  if (p.simple_) {
    for (std::size_t a = 0; a < p.vertices_.size(); ++a)
      for (std::size_t b = a + 1; b < p.vertices_.size(); ++b) {
        const Vertex &va = p.vertices_[a], &vb = p.vertices_[b];
        std::vector<std::size_t> common;
        std::set_intersection(va.active.begin(), va.active.end(), vb.active.begin(),
                              vb.active.end(), std::back_inserter(common));
        if (common.size() + 1 != dim) continue;
        const RatVector diff = difference(vb.point, va.point);
        Edge e;
        e.from = a;
        e.to = b;
        e.direction = primitive_part(scaled_to_integer(diff)).first;
        if (is_integral(va.point) && is_integral(vb.point)) {
          IntVector d(dim);
          for (std::size_t k = 0; k < dim; ++k) d[k] = diff[k].get_num();
          e.lattice_length = gcd_all(d);
        }
        p.edges_.push_back(std::move(e));
      }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Queries

std::vector<Vertex> enumerate_vertices(const RationalPolytope &p) { return p.vertices(); }

std::vector<Edge> edge_graph(const RationalPolytope &p) {
  require_simple(p);
  return p.edges();
}

DelzantCheck is_delzant(const RationalPolytope &p) {
  DelzantCheck out;
  out.simple = p.is_simple();
  if (!out.simple) return out;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    Integer d = active_determinant(p, p.vertices()[i]);
    if (abs(d) != 1) out.violations.emplace_back(i, std::move(d));
  }
  out.delzant = out.violations.empty();
  return out;
}

bool is_integral(const RationalPolytope &p) {
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [](const Vertex &v) { return is_integral(v.point); });
}

IntVector choose_generic_functional(const RationalPolytope &p, CurveOrder order) {
  const std::size_t n = p.dim();
  for (Integer t = 1;; ++t) {
    IntVector x(n);
    Integer power = 1;
    for (std::size_t i = 0; i < n; ++i) {
      x[order == CurveOrder::Forward ? i : n - 1 - i] = power;
      power *= t;
    }
    if (separates_vertices(p, x)) return x;
  }
}

MorseData morse_indices(const RationalPolytope &p, const IntVector &x) {
  require_simple(p);
  if (x.size() != p.dim())
    throw Error(ErrorCode::BadDimension, "functional has wrong length");
  if (!separates_vertices(p, x))
    throw Error(ErrorCode::NotGeneric,
                to_string(x) + " takes equal values on two vertices");

  const std::vector<Rational> vals = vertex_values(p, x);
  MorseData out;
  out.functional = x;
  out.index_by_vertex.assign(p.vertices().size(), 0);
  std::vector<std::vector<std::size_t>> down_edges(p.vertices().size());
  for (std::size_t k = 0; k < p.edges().size(); ++k) {
    const Edge &e = p.edges()[k];
    const std::size_t top = vals[e.from] > vals[e.to] ? e.from : e.to;
    down_edges[top].push_back(k);
  }
  std::size_t minima = 0, maxima = 0;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const std::size_t idx = 2 * down_edges[v].size();
    out.index_by_vertex[v] = idx;
    if (idx == 0) {
      out.minimum = v;
      ++minima;
    }
    if (idx == 2 * p.dim()) {
      out.maximum = v;
      ++maxima;
    }
    if (idx == 2) out.index2_down_edges.emplace_back(v, down_edges[v].front());
  }
  if (minima != 1 || maxima != 1)
    throw Error(ErrorCode::NotGeneric, "functional does not have a unique "
                                       "minimum and maximum vertex");
  return out;
}

AbelianGroup pi1_thmC(const RationalPolytope &p) {
  return pi1_thmC(p, choose_generic_functional(p));
}

namespace {

Integer down_edge_length_gcd(const RationalPolytope &p, const IntVector &x) {
  if (!is_integral(p))
    throw Error(ErrorCode::NotIntegral, "polytope has a non-integral vertex");
  const DelzantCheck dz = is_delzant(p);
  if (!dz.delzant)
    throw Error(ErrorCode::NotDelzant,
                dz.simple ? "vertex determinant " + dz.violations.front().second.get_str()
                          : std::string("polytope is not simple"));
  const MorseData morse = morse_indices(p, x);
  IntVector lengths;
  for (const auto &[v, e] : morse.index2_down_edges)
    lengths.push_back(*p.edges()[e].lattice_length);
  return gcd_all(lengths);
}

} // namespace

AbelianGroup pi1_thmC(const RationalPolytope &p, const IntVector &x) {
  return AbelianGroup::cyclic(down_edge_length_gcd(p, x));
}

OrbifoldData orbifold_vertex_orders(const RationalPolytope &p) {
  require_simple(p);
  OrbifoldData out;
  for (const Vertex &v : p.vertices())
    out.order_by_vertex.push_back(abs(active_determinant(p, v)));
  out.m_lcm = lcm_all(out.order_by_vertex);
  return out;
}

MomentCone cone_over_polytope(const RationalPolytope &p) {
  std::vector<IntVector> normals;
  for (std::size_t i = 0; i < p.facet_count(); ++i) {
    const Halfspace &h = p.halfspaces()[i];
    if (h.offset.get_den() != 1)
      throw Error(ErrorCode::NonIntegerOffset,
                  "halfspace " + std::to_string(i + 1) + " has offset " +
                      h.offset.get_str(),
                  {i + 1});
    IntVector v = h.normal;
    v.push_back(-h.offset.get_num());
    normals.push_back(std::move(v));
  }
  return MomentCone::build(normals, p.dim() + 1);
}

EulerGcdCheck euler_gcd_consistency(const RationalPolytope &p) {
  EulerGcdCheck out;
  out.gcd_lengths = down_edge_length_gcd(p, choose_generic_functional(p));
  const EulerCoefficients euler = euler_coefficients(cone_over_polytope(p));
  out.gcd_dets = gcd_all(euler.coeffs);
  out.equal = out.gcd_lengths == out.gcd_dets;
  return out;
}

// ---------------------------------------------------------------------------
// Builders

RationalPolytope standard_simplex(std::size_t n, const Integer &k) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    hs.push_back({std::move(e), Rational(0)});
  }
  hs.push_back({IntVector(n, Integer(-1)), Rational(-k)});
  return RationalPolytope::build(n, std::move(hs));
}

RationalPolytope segment(const Integer &length) {
  return RationalPolytope::build(1, {{{Integer(1)}, Rational(0)},
                                     {{Integer(-1)}, Rational(-length)}});
}

RationalPolytope cube(std::size_t n, const Integer &side) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    hs.push_back({e, Rational(0)});
    e[i] = -1;
    hs.push_back({std::move(e), Rational(-side)});
  }
  return RationalPolytope::build(n, std::move(hs));
}

RationalPolytope hirzebruch_trapezoid(const Integer &a, const Integer &b,
                                      const Integer &k) {
  return RationalPolytope::build(2, {{{Integer(1), Integer(0)}, Rational(0)},
                                     {{Integer(0), Integer(1)}, Rational(0)},
                                     {{Integer(0), Integer(-1)}, Rational(-b)},
                                     {{Integer(-1), Integer(-k)}, Rational(-a)}});
}

RationalPolytope product(const RationalPolytope &p, const RationalPolytope &q) {
  const std::size_t dim = p.dim() + q.dim();
  std::vector<Halfspace> hs;
  for (const Halfspace &h : p.halfspaces()) {
    IntVector u = h.normal;
    u.resize(dim, Integer(0));
    hs.push_back({std::move(u), h.offset});
  }
  for (const Halfspace &h : q.halfspaces()) {
    IntVector u(p.dim(), Integer(0));
    u.insert(u.end(), h.normal.begin(), h.normal.end());
    hs.push_back({std::move(u), h.offset});
  }
  return RationalPolytope::build(dim, std::move(hs));
}

RationalPolytope dilated(const RationalPolytope &p, const Integer &k) {
  std::vector<Halfspace> hs = p.halfspaces();
  for (Halfspace &h : hs) h.offset *= k;
  return RationalPolytope::build(p.dim(), std::move(hs));
}

RationalPolytope transformed(const RationalPolytope &p, const IntMatrix &w,
                             const IntVector &t) {
  std::vector<Halfspace> hs;
  for (const Halfspace &h : p.halfspaces()) {
    IntVector u = w * h.normal;
    const Integer shift = dot(t, u);
    hs.push_back({std::move(u), h.offset + shift});
  }
  return RationalPolytope::build(p.dim(), std::move(hs));
}

} // namespace contact_pi1
