#include <doctest.h>

#include <algorithm>

#include "contact_pi1/pi1.hpp"
#include "oracles.hpp"

using namespace contact_pi1;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (auto r : rows) out.push_back(iv(r));
  return out;
}

template <class Fn> ErrorCode code_of(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

MomentCone orthant(std::size_t dim) {
  std::vector<IntVector> normals;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = 1;
    normals.push_back(e);
  }
  return MomentCone::build(normals, dim);
}

MomentCone lens(long p, long q = 1) { return MomentCone::build(vs({{1, 0}, {-q, p}}), 2); }

MomentCone square(long p) {
  return MomentCone::build(vs({{1, 0, 0}, {0, 1, 0}, {-1, 0, p}, {0, -1, p}}), 3);
}

std::vector<MomentCone> good_cones() {
  std::vector<MomentCone> out;
  for (std::size_t d = 2; d <= 6; ++d) out.push_back(orthant(d));
  for (long p = 1; p <= 10; ++p) out.push_back(lens(p));
  out.push_back(lens(7, 3));
  out.push_back(lens(12, 5));
  for (long p = 1; p <= 5; ++p) out.push_back(square(p));
  out.push_back(cone_over_polytope(hirzebruch_trapezoid(5, 2, 2)));
  out.push_back(cone_over_polytope(cube(3, 2)));
  out.push_back(cone_over_polytope(product(segment(4), standard_simplex(2, 6))));
  return out;
}

// |coker| and cyclicity through determinantal divisors of the normal matrix.
void check_against_minor_oracle(const MomentCone &c, const AbelianGroup &g) {
  const IntMatrix a = c.normal_columns();
  const std::size_t r = a.rows();
  CHECK(oracle::minor_gcd(a, r) == g.order());
  CHECK(g.is_cyclic() == (oracle::minor_gcd(a, r - 1) == 1));
}

} // namespace

TEST_CASE("pi1_thmB") {
  for (std::size_t d = 2; d <= 6; ++d) CHECK(pi1_thmB(orthant(d)).is_trivial());
  for (long p = 1; p <= 8; ++p) {
    CHECK(pi1_thmB(lens(p)) == AbelianGroup::cyclic(p));
    CHECK(pi1_thmB(square(p)) == AbelianGroup::cyclic(p));
  }
  const MomentCone bad = MomentCone::build(vs({{1, 0, 0}, {1, 2, 0}, {-1, -1, 1}}), 3);
  CHECK(code_of([&] { pi1_thmB(bad); }) == ErrorCode::NotGood);
  CHECK(code_of([] { pi1_thmB(MomentCone::build(vs({{0, 1}}), 2)); }) ==
        ErrorCode::NotStrictlyConvex);
}

TEST_CASE("pi1_lerman") {
  CHECK(pi1_lerman(orthant(3)).is_trivial());
  CHECK(pi1_lerman(lens(6)) == AbelianGroup::cyclic(6));
  for (long p = 1; p <= 6; ++p) CHECK(pi1_lerman(square(p)) == AbelianGroup::cyclic(p));
  const MomentCone bad = MomentCone::build(vs({{1, 0, 0}, {1, 2, 0}, {-1, -1, 1}}), 3);
  CHECK(pi1_lerman(bad) == AbelianGroup::cyclic(2));
  CHECK(code_of([] { pi1_lerman(MomentCone::build(vs({{0, 1}}), 2)); }) ==
        ErrorCode::NotStrictlyConvex);
}

TEST_CASE("euler_coefficients") {
  const EulerCoefficients o3 = euler_coefficients(orthant(3));
  REQUIRE(o3.coeffs.size() == 1);
  CHECK(abs(o3.coeffs[0]) == 1);
  const EulerCoefficients lens3 = euler_coefficients(lens(3));
  CHECK(lens3.coeffs.size() == 1);
  CHECK(abs(lens3.coeffs[0]) == 3);

  const EulerCoefficients sq = euler_coefficients(square(3));
  CHECK(sq.coeffs.size() == 2);
  for (const Integer &a : sq.coeffs) CHECK(abs(a) == 3);
  CHECK(sq.base_ray.generator == iv({0, 0, 1}));
  CHECK(sq.ordered_first_n == std::vector<std::size_t>{0, 1});

  const MomentCone two_simplex = MomentCone::build(vs({{1, 0, 0}, {0, 1, 0}, {-1, -1, 2}}), 3);
  const EulerCoefficients e = euler_coefficients(two_simplex);
  REQUIRE(e.coeffs.size() == 1);
  CHECK(e.coeffs[0] == 2);

  // Independent check against cofactor determinants.
  for (const MomentCone &c : good_cones()) {
    const EulerCoefficients ec = euler_coefficients(c);
    CHECK(ec.coeffs.size() == c.facet_count() - c.n());
    for (std::size_t i = 0; i < ec.remaining.size(); ++i) {
      std::vector<IntVector> cols;
      for (std::size_t j : ec.ordered_first_n) cols.push_back(c.normals()[j]);
      cols.push_back(c.normals()[ec.remaining[i]]);
      CHECK(ec.coeffs[i] == oracle::cofactor_det(IntMatrix::from_columns(cols, c.ambient_dim())));
    }
    CHECK(AbelianGroup::cyclic(gcd_all(ec.coeffs)) == pi1_thmB(c));
  }
}

TEST_CASE("orthants have one extra normal") {
  // d = n + 1 gives one coefficient; the orthant has d = n + 1 normals only
  // when counted in dimension n + 1, so coefficients appear for n + 1 >= 2.
  const EulerCoefficients e = euler_coefficients(orthant(3));
  CHECK(e.remaining.size() + e.ordered_first_n.size() == 3);
}

TEST_CASE("pi1_t3_bundle") {
  const BundleHomotopy a = pi1_t3_bundle({2, 4, 6});
  CHECK(a.pi1.to_string() == "Z/2 + Z^2");
  CHECK(a.pi2.is_trivial());
  const BundleHomotopy b = pi1_t3_bundle({0, 0, 0});
  CHECK(b.pi1 == AbelianGroup::free(3));
  CHECK(b.pi2 == AbelianGroup::free(1));
  const BundleHomotopy c = pi1_t3_bundle({1, 5, 7});
  CHECK(c.pi1 == AbelianGroup::free(2));
  CHECK(c.pi2.is_trivial());
}

TEST_CASE("pi1_t3_bundle is invariant under sign flips and permutations") {
  oracle::Gen gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long> abc{gen.uniform(-30, 30), gen.uniform(-30, 30), gen.uniform(-30, 30)};
    if (trial % 10 == 0) abc = {0, 0, gen.uniform(-5, 5)};
    const BundleHomotopy ref = pi1_t3_bundle({abc[0], abc[1], abc[2]});
    std::vector<long> other = abc;
    gen.shuffle(other);
    for (long &x : other)
      if (gen.uniform(0, 1)) x = -x;
    const BundleHomotopy h = pi1_t3_bundle({other[0], other[1], other[2]});
    CHECK(h.pi1 == ref.pi1);
    CHECK(h.pi2 == ref.pi2);
  }
}

TEST_CASE("thmB is independent of the base ray") {
  for (const MomentCone &c : good_cones()) {
    const AbelianGroup ref = pi1_thmB(c);
    for (const Ray &r : enumerate_rays(c)) CHECK(pi1_thmB(c, r) == ref);
  }
}

TEST_CASE("thmB agrees with the lattice quotient on good cones and their images") {
  oracle::Gen gen(19);
  for (const MomentCone &c : good_cones()) {
    const AbelianGroup lerman = pi1_lerman(c);
    CHECK(pi1_thmB(c) == lerman);
    CHECK(lerman.is_cyclic());
    check_against_minor_oracle(c, lerman);
    for (int k = 0; k < 6; ++k) {
      const MomentCone t =
          MomentCone::build(c.transformed(gen.unimodular(c.ambient_dim())).normals(),
                            c.ambient_dim());
      CHECK(pi1_thmB(t) == lerman);
      CHECK(pi1_lerman(t) == lerman);
    }
  }
}

TEST_CASE("thmC agrees with thmB on cones over Delzant polytopes") {
  std::vector<RationalPolytope> polys;
  for (std::size_t n = 1; n <= 3; ++n)
    for (long k = 1; k <= 4; ++k) polys.push_back(standard_simplex(n, k));
  polys.push_back(hirzebruch_trapezoid(7, 2, 3));
  polys.push_back(product(segment(6), segment(4)));
  polys.push_back(product(segment(6), standard_simplex(2, 9)));
  for (const RationalPolytope &p : polys)
    CHECK(pi1_thmC(p) == pi1_thmB(cone_over_polytope(p)));
  CHECK(pi1_thmC(product(segment(6), segment(4))) == AbelianGroup::cyclic(2));
}

TEST_CASE("compute_pi1 on Reeb-type cones") {
  const Pi1Report r = compute_pi1(ConeInput{orthant(4), std::nullopt, std::nullopt});
  CHECK(r.class_label == "ReebType");
  REQUIRE(r.pi1);
  CHECK(r.pi1->is_trivial());
  CHECK(r.agree);
  for (const char *m : {"thmB", "lerman", "thmC"}) {
    REQUIRE(r.method(m));
    CHECK(r.method(m)->group == AbelianGroup::trivial());
  }
  CHECK(r.reeb_vector == iv({1, 1, 1, 1}));

  const Pi1Report l = compute_pi1(ConeInput{lens(5, 2), std::nullopt, std::nullopt});
  CHECK(l.pi1 == AbelianGroup::cyclic(5));
  CHECK(l.agree);
}

TEST_CASE("compute_pi1 method filter") {
  Pi1Options only;
  only.method = Method::Lerman;
  const Pi1Report r = compute_pi1(ConeInput{square(3), std::nullopt, std::nullopt}, only);
  CHECK(r.methods.size() == 1);
  CHECK(r.methods[0].name == "lerman");
  CHECK(r.pi1 == AbelianGroup::cyclic(3));
}

TEST_CASE("compute_pi1 with a user Reeb vector") {
  // Reeb vector (1, 2, 3) on the orthant: the slice normals are not all
  // primitive, so the polytope route is skipped with orbifold data.
  ConeInput in{orthant(3), std::nullopt, iv({1, 2, 3})};
  const Pi1Report r = compute_pi1(in);
  CHECK(r.pi1 == AbelianGroup::trivial());
  REQUIRE(r.method("thmC"));
  CHECK_FALSE(r.method("thmC")->group);
  CHECK_FALSE(r.method("thmC")->skip_reason.empty());
  REQUIRE(r.orbifold);
  CHECK(r.orbifold->m_lcm == 6);
}

TEST_CASE("compute_pi1 on non-Reeb cones") {
  const Pi1Report half = compute_pi1(ConeInput{MomentCone::build(vs({{0, 1}}), 2), {}, {}});
  CHECK(half.class_label == "TorusTimesSphere(1)");
  CHECK(half.pi1 == AbelianGroup::free(1));
  CHECK(describe(*half.manifold) == "S^1 x S^2");

  const Pi1Report lin2 = compute_pi1(
      ConeInput{MomentCone::build(vs({{1, 0, 0, 0}, {0, 1, 0, 0}}), 4), {}, {}});
  CHECK(lin2.pi1 == AbelianGroup::free(2));
  CHECK(describe(*lin2.manifold) == "T^2 x S^5");

  const Pi1Report t3 = compute_pi1(ConeInput{MomentCone::build({}, 2), {}, {}});
  CHECK(t3.pi1 == AbelianGroup::free(3));
  CHECK(describe(*t3.manifold) == "T^2 x S^1");

  const Pi1Report big = compute_pi1(ConeInput{MomentCone::build({}, 4), {}, {}});
  CHECK(big.pi1 == AbelianGroup::free(4));

  const Pi1Report bundle =
      compute_pi1(ConeInput{MomentCone::build({}, 3), BundleClass{2, 4, 6}, {}});
  CHECK(bundle.class_label == "PrincipalT3BundleOverS2");
  CHECK(bundle.pi1->to_string() == "Z/2 + Z^2");
  CHECK(bundle.pi2 == AbelianGroup::trivial());
  CHECK(code_of([] { compute_pi1(ConeInput{MomentCone::build({}, 3), {}, {}}); }) ==
        ErrorCode::MissingBundleClass);

  const Pi1Report direct = compute_pi1(BundleClass{0, 0, 0});
  CHECK(direct.pi1 == AbelianGroup::free(3));
  CHECK(direct.pi2 == AbelianGroup::free(1));
}

TEST_CASE("compute_pi1 on a non-good cone") {
  const Pi1Report r = compute_pi1(
      ConeInput{MomentCone::build(vs({{1, 0, 0}, {1, 2, 0}, {-1, -1, 1}}), 3), {}, {}});
  CHECK(r.class_label == "InvalidMomentCone");
  CHECK_FALSE(r.pi1);
  CHECK(r.method("lerman")->group == AbelianGroup::cyclic(2));
  CHECK_FALSE(r.method("thmB")->group);
  CHECK(r.method("thmB")->skip_reason.find("NotGood") == 0);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("compute_pi1 on polytopes") {
  const Pi1Report sq = compute_pi1(cube(2));
  CHECK(sq.class_label == "ReebType");
  CHECK(sq.pi1 == AbelianGroup::trivial());
  CHECK(sq.agree);
  CHECK(sq.methods.size() == 3);
  CHECK(sq.methods[0].name == "thmB");
  CHECK(sq.methods[2].name == "thmC");

  const RationalPolytope half =
      RationalPolytope::build(1, {{iv({1}), Rational(1, 2)}, {iv({-1}), -2}});
  const Pi1Report u = compute_pi1(half);
  CHECK(u.class_label == "Undetermined");
  CHECK_FALSE(u.pi1);
}
