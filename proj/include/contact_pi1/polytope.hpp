#pragma once
// Bounded rational polytopes {x in R^n : <x, u_i> >= lambda_i} with primitive
// integral normals, their vertex/edge structure, and the lattice data used to
// read off fundamental groups from a moment polytope.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contact_pi1/cone.hpp"
#include "contact_pi1/lattice.hpp"

namespace contact_pi1 {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;

std::string to_string(const RatVector &v);
bool is_integral(const RatVector &v);

/// <x, normal> >= offset
struct Halfspace {
  IntVector normal;
  Rational offset;
};

struct Vertex {
  RatVector point;
  /// 0-based halfspace indices tight at the point, ascending.
  std::vector<std::size_t> active;
};

struct Edge {
  /// Vertex indices, from < to.
  std::size_t from = 0;
  std::size_t to = 0;
  /// Primitive integral direction of to - from.
  IntVector direction;
  /// Set iff both endpoints are integral; then to - from = length * direction.
  std::optional<Integer> lattice_length;
};

class RationalPolytope {
public:
  /// Normalizes each normal to its primitive part (rescaling the offset with
  /// it and recording a warning), enumerates vertices, and checks that the
  /// result is a bounded, full-dimensional polytope in which every halfspace
  /// supports a facet.
  static RationalPolytope build(std::size_t dim, std::vector<Halfspace> halfspaces);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Halfspace> &halfspaces() const noexcept { return halfspaces_; }
  std::size_t facet_count() const noexcept { return halfspaces_.size(); }
  const std::vector<Vertex> &vertices() const noexcept { return vertices_; }
  bool is_simple() const noexcept { return simple_; }
  /// Empty unless simple.
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }
  /// True if some input normal had to be divided by its content.
  bool rescaled() const noexcept { return rescaled_; }

private:
  RationalPolytope() = default;
  std::size_t dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> warnings_;
  bool simple_ = false;
  bool rescaled_ = false;
};

std::vector<Vertex> enumerate_vertices(const RationalPolytope &p);
std::vector<Edge> edge_graph(const RationalPolytope &p);

struct DelzantCheck {
  bool delzant = false;
  bool simple = false;
  /// (vertex index, determinant of the active normals) for every vertex
  /// whose determinant is not +-1.
  std::vector<std::pair<std::size_t, Integer>> violations;
};
DelzantCheck is_delzant(const RationalPolytope &p);

bool is_integral(const RationalPolytope &p);

enum class CurveOrder { Forward, Reversed };

/// X = (1, t, ..., t^{n-1}) (or its reverse) for the least t >= 1 that
/// separates all vertex values.
IntVector choose_generic_functional(const RationalPolytope &p,
                                    CurveOrder order = CurveOrder::Forward);

struct MorseData {
  IntVector functional;
  /// Morse index of each vertex: twice the number of lower neighbours.
  std::vector<std::size_t> index_by_vertex;
  std::size_t minimum = 0;
  std::size_t maximum = 0;
  /// (vertex, edge) pairs: every index-2 vertex with its unique down-edge.
  std::vector<std::pair<std::size_t, std::size_t>> index2_down_edges;
};
MorseData morse_indices(const RationalPolytope &p, const IntVector &x);

/// pi_1 of the contact manifold over an integral Delzant polytope: cyclic of
/// order gcd of the lattice lengths of the down-edges at index-2 vertices.
AbelianGroup pi1_thmC(const RationalPolytope &p);
AbelianGroup pi1_thmC(const RationalPolytope &p, const IntVector &x);

struct OrbifoldData {
  IntVector order_by_vertex;
  Integer m_lcm;
};
OrbifoldData orbifold_vertex_orders(const RationalPolytope &p);

/// Cone with normals (u_i, -lambda_i); its height-one slice is p again.
MomentCone cone_over_polytope(const RationalPolytope &p);

struct EulerGcdCheck {
  Integer gcd_lengths;
  Integer gcd_dets;
  bool equal = false;
};
EulerGcdCheck euler_gcd_consistency(const RationalPolytope &p);

// Builders for standard polytopes.

/// k * standard simplex in R^n: x_i >= 0, sum x_i <= k.
RationalPolytope standard_simplex(std::size_t n, const Integer &k = 1);
/// [0, length] in R^1.
RationalPolytope segment(const Integer &length);
/// [0, side]^n.
RationalPolytope cube(std::size_t n, const Integer &side = 1);
/// {x >= 0, 0 <= y <= b, x + k y <= a}; Delzant iff a > k b.
RationalPolytope hirzebruch_trapezoid(const Integer &a, const Integer &b,
                                      const Integer &k);
RationalPolytope product(const RationalPolytope &p, const RationalPolytope &q);
RationalPolytope dilated(const RationalPolytope &p, const Integer &k);
/// Normals u -> W u (W unimodular; points move by W^{-T}), then translation
/// of the point set by t.
RationalPolytope transformed(const RationalPolytope &p, const IntMatrix &w,
                             const IntVector &t);

} // namespace contact_pi1
