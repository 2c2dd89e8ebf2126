#pragma once
// Moment cones: rational polyhedral cones {x : <x, v_i> >= 0} given by
// primitive inward facet normals.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contact_pi1/lattice.hpp"

namespace contact_pi1 {

class RationalPolytope;

class MomentCone {
public:
  /// Normalizes and validates raw normals: each is replaced by its primitive
  /// part (recording a warning), and zero, duplicate or redundant normals are
  /// rejected. An empty list encodes the whole space.
  static MomentCone build(const std::vector<IntVector> &raw_normals,
                          std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  /// The "n" of a (2n+1)-dimensional manifold: ambient_dim - 1.
  std::size_t n() const noexcept { return ambient_dim_ - 1; }
  const std::vector<IntVector> &normals() const noexcept { return normals_; }
  std::size_t facet_count() const noexcept { return normals_.size(); }
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }

  /// (n+1) x d matrix whose columns are the normals.
  IntMatrix normal_columns() const;

  /// Image under the lattice automorphism that sends normals v -> A v (points
  /// of the dual space move by the inverse transpose). A must be unimodular.
  MomentCone transformed(const IntMatrix &a) const;

private:
  MomentCone() = default;
  std::size_t ambient_dim_ = 0;
  std::vector<IntVector> normals_;
  std::vector<std::string> warnings_;
};

struct Ray {
  IntVector generator;
  /// 0-based indices of all normals vanishing on the generator, ascending.
  std::vector<std::size_t> facet_indices;
};

struct FaceFailure {
  std::vector<std::size_t> facet_indices;
  std::vector<IntVector> rays;
  std::size_t codim = 0;
  /// Smith diagonal of the matrix of facet normals through the face.
  IntVector smith_invariants;
  std::string reason;
};

struct ConeValidation {
  bool strictly_convex = false;
  std::size_t lineality_dim = 0;
  bool good = false;
  std::vector<FaceFailure> failures;
};

std::size_t lineality_dim(const MomentCone &c);

/// Extreme rays sorted lexicographically by generator.
std::vector<Ray> enumerate_rays(const MomentCone &c);

ConeValidation is_good(const MomentCone &c);

/// Primitivized sum of the normals, verified to pair positively with every ray.
IntVector find_reeb_vector(const MomentCone &c);

struct Reparametrization {
  MomentCone cone;
  IntMatrix transform;
};

/// Chooses A unimodular with A r = e_{n+1} and returns the cone with normals
/// A v_i, so that pairings of rays against r become last coordinates.
Reparametrization reparametrize_to_last_axis(const MomentCone &c,
                                             const IntVector &r);

/// Intersection with {x_{n+1} = 1}, as a polytope in R^n. Requires every ray
/// to have positive last coordinate.
RationalPolytope slice_at_height_one(const MomentCone &c);

struct BundleClass {
  Integer a, b, c;
};

struct ManifoldClass {
  enum class Kind {
    ReebType,
    /// T^m x S^{2n+1-m}, 0 < m <= n+1 (m = n+1, n = 1 is T^2 x S^1).
    TorusTimesSphere,
    /// Principal T^3-bundle over S^2 (n = 2, whole-space cone).
    PrincipalT3Bundle,
  };
  Kind kind = Kind::ReebType;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<BundleClass> bundle;

  std::string label() const;
};

ManifoldClass classify(const MomentCone &c,
                       const std::optional<BundleClass> &bundle = std::nullopt);

namespace detail {

/// Extreme rays of the pointed part of {x : <x, v> >= 0 for v in normals},
/// taken inside the orthogonal complement of the lineality space. Sorted,
/// primitive, deduplicated.
std::vector<IntVector> pointed_rays(const std::vector<IntVector> &normals,
                                    std::size_t dim);

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
/// fn returns false to stop early.
template <class Fn> void for_each_subset(std::size_t n, std::size_t k, Fn &&fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(static_cast<const std::vector<std::size_t> &>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

} // namespace detail

} // namespace contact_pi1
