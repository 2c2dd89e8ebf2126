#pragma once
// Fundamental groups of compact contact toric manifolds, computed from the
// moment cone (determinant gcd, lattice quotient), from the moment polytope
// (edge lengths), or from a T^3-bundle class, plus the dispatch that runs and
// cross-checks every applicable route.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "contact_pi1/cone.hpp"
#include "contact_pi1/lattice.hpp"
#include "contact_pi1/polytope.hpp"

namespace contact_pi1 {

struct EulerCoefficients {
  Ray base_ray;
  /// The n normals through base_ray, in input order.
  std::vector<std::size_t> ordered_first_n;
  /// The remaining d - n normals, in input order.
  std::vector<std::size_t> remaining;
  /// coeffs[i] = det[v_1, ..., v_n, v_remaining[i]] (normals as columns).
  IntVector coeffs;
};

/// Uses the lexicographically smallest ray as base.
EulerCoefficients euler_coefficients(const MomentCone &c);
EulerCoefficients euler_coefficients(const MomentCone &c, const Ray &base);

/// Cyclic of order gcd |det[v_1, ..., v_n, v_j]| over the normals v_j not
/// through the base ray. Requires a good strictly convex cone.
AbelianGroup pi1_thmB(const MomentCone &c);
AbelianGroup pi1_thmB(const MomentCone &c, const Ray &base);

/// Z^{n+1} / (lattice spanned by the normals). Good is not required.
AbelianGroup pi1_lerman(const MomentCone &c);

struct BundleHomotopy {
  AbelianGroup pi1;
  AbelianGroup pi2;
};
/// Principal T^3-bundle over S^2 with class (a, b, c), k = gcd(a, b, c):
/// pi_1 = Z/k + Z^2 and pi_2 = Z if k = 0, else 0.
BundleHomotopy pi1_t3_bundle(const BundleClass &cls);

enum class Method { All, ThmB, Lerman, ThmC };
std::string_view method_name(Method m);

struct ConeInput {
  MomentCone cone;
  std::optional<BundleClass> bundle;
  /// Overrides the derived Reeb vector for the polytope route.
  std::optional<IntVector> reeb;
};

using Pi1Input = std::variant<ConeInput, RationalPolytope, BundleClass>;

struct Pi1Options {
  Method method = Method::All;
};

struct MethodResult {
  std::string name;
  std::optional<AbelianGroup> group;
  std::string skip_reason;
};

/// Summary of the moment polytope used by the polytope route.
struct PolytopeSummary {
  std::size_t dim = 0;
  std::size_t facets = 0;
  std::vector<RatVector> vertices;
  bool simple = false;
  bool delzant = false;
  bool integral = false;
};

struct Pi1Report {
  /// ReebType, TorusTimesSphere(m), PrincipalT3BundleOverS2,
  /// InvalidMomentCone or Undetermined.
  std::string class_label;
  std::optional<ManifoldClass> manifold;
  std::optional<AbelianGroup> pi1;
  std::optional<AbelianGroup> pi2;
  std::vector<MethodResult> methods;
  bool agree = true;
  std::string disagreement;
  std::vector<std::string> warnings;

  std::optional<ConeValidation> cone_validation;
  std::optional<std::vector<Ray>> rays;
  std::optional<IntVector> reeb_vector;
  std::optional<EulerCoefficients> euler;
  std::optional<PolytopeSummary> polytope;
  std::optional<OrbifoldData> orbifold;

  const MethodResult *method(std::string_view name) const;
};

Pi1Report compute_pi1(const Pi1Input &input, const Pi1Options &options = {});

/// Human-readable manifold description such as "S^1 x S^2" or "T^2 x S^3".
std::string describe(const ManifoldClass &cls);

} // namespace contact_pi1
