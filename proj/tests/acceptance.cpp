// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "contact_pi1/corpus.hpp"
#include "contact_pi1/crossval.hpp"
#include "contact_pi1/pi1.hpp"
#include "oracles.hpp"

using namespace contact_pi1;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string &why) {
    if (pass) detail = why;
    pass = false;
  }
};

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
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

std::vector<RationalPolytope> corpus_polytopes() {
  std::vector<RationalPolytope> out;
  for (const CorpusEntry &e : corpus())
    if (e.document.kind == InputDocument::Kind::Polytope)
      out.push_back(std::get<RationalPolytope>(to_pi1_input(e.document)));
  return out;
}

std::vector<RationalPolytope> integral_delzant_corpus() {
  std::vector<RationalPolytope> out;
  for (RationalPolytope &p : corpus_polytopes())
    if (is_delzant(p).delzant && is_integral(p)) out.push_back(std::move(p));
  return out;
}

std::vector<MomentCone> good_corpus_cones() {
  std::vector<MomentCone> out;
  for (const CorpusEntry &e : corpus()) {
    if (e.document.kind != InputDocument::Kind::Cone) continue;
    MomentCone c = std::get<ConeInput>(to_pi1_input(e.document)).cone;
    if (is_good(c).good) out.push_back(std::move(c));
  }
  for (const RationalPolytope &p : corpus_polytopes()) {
    try {
      MomentCone c = cone_over_polytope(p);
      if (is_good(c).good) out.push_back(std::move(c));
    } catch (const Error &) {
    }
  }
  return out;
}

std::string g(const AbelianGroup &a) { return a.to_string(); }

// ---------------------------------------------------------------------------

Outcome spheres() {
  Outcome o;
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    const MomentCone c = orthant(dim);
    if (!pi1_thmB(c).is_trivial()) o.fail("thmB nontrivial in dim " + std::to_string(dim));
    if (!pi1_lerman(c).is_trivial()) o.fail("lerman nontrivial in dim " + std::to_string(dim));
    const RationalPolytope slice =
        slice_at_height_one(reparametrize_to_last_axis(c, find_reeb_vector(c)).cone);
    if (!pi1_thmC(slice).is_trivial()) o.fail("thmC nontrivial in dim " + std::to_string(dim));
    const Pi1Report r = compute_pi1(ConeInput{c, {}, {}});
    const MethodResult *m = r.method("thmC");
    if (!m || !m->group || !m->group->is_trivial() || !r.agree)
      o.fail("dispatch did not run thmC with trivial result in dim " + std::to_string(dim));
  }
  return o;
}

Outcome lens_spaces() {
  Outcome o;
  std::size_t cases = 0;
  for (long p = 1; p <= 50; ++p) {
    for (long q = 1; q <= std::max(1L, p - 1); ++q) {
      if (std::gcd(p, q) != 1) continue;
      const MomentCone c = MomentCone::build({iv({1, 0}), iv({-q, p})}, 2);
      const AbelianGroup b = pi1_thmB(c), l = pi1_lerman(c);
      ++cases;
      if (b.order() != p || l.order() != p || !l.is_cyclic())
        o.fail("p=" + std::to_string(p) + " q=" + std::to_string(q) + ": thmB " + g(b) +
               ", lerman " + g(l));
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " (p, q) pairs";
  return o;
}

Outcome det_gcd_vs_quotient() {
  Outcome o;
  const std::vector<InputDocument> bases = crossval_cone_bases();
  std::mt19937_64 rng(20240607);
  for (int i = 0; i < 200; ++i) {
    const InputDocument &base = bases[std::uniform_int_distribution<std::size_t>(0, bases.size() - 1)(rng)];
    const std::size_t dim = *base.ambient_dim;
    const IntMatrix w = unimodular_from_ops(dim, random_ops(rng, dim));
    std::vector<IntVector> normals;
    for (const IntVector &v : base.normals) normals.push_back(w * v);
    const MomentCone c = MomentCone::build(normals, dim);
    const AbelianGroup b = pi1_thmB(c), l = cokernel(c.normal_columns());
    if (b.order() != l.order() || !l.is_cyclic())
      o.fail("instance " + std::to_string(i) + ": thmB " + g(b) + ", cokernel " + g(l));
  }
  if (o.pass) o.detail = "200/200";
  return o;
}

Outcome edge_lengths_vs_dets() {
  Outcome o;
  std::vector<RationalPolytope> polys;
  for (std::size_t n = 1; n <= 3; ++n)
    for (long k = 1; k <= 5; ++k) {
      const RationalPolytope p = standard_simplex(n, k);
      if (pi1_thmC(p) != AbelianGroup::cyclic(k)) o.fail(std::to_string(k) + "-simplex not Z_k");
      polys.push_back(p);
    }
  for (long len = 1; len <= 6; ++len) {
    if (pi1_thmC(segment(len)) != AbelianGroup::cyclic(len)) o.fail("segment not Z_p");
    for (long len2 = 1; len2 <= 4; ++len2) polys.push_back(product(segment(len), segment(len2)));
    for (long k = 1; k <= 3; ++k) polys.push_back(product(segment(len), standard_simplex(2, k)));
  }
  for (long a = 1; a <= 9; ++a)
    for (long b = 1; b <= 3; ++b)
      for (long k = 0; k <= 3; ++k) {
        if (a <= k * b) continue;
        const RationalPolytope p = hirzebruch_trapezoid(a, b, k);
        if (is_delzant(p).delzant) polys.push_back(p);
      }
  // Seeded lattice images of the above.
  oracle::Gen gen(4);
  const std::size_t plain = polys.size();
  for (std::size_t i = 0; i < plain; i += 3)
    polys.push_back(transformed(polys[i], gen.unimodular(polys[i].dim()),
                                gen.vector(polys[i].dim(), 3)));

  std::size_t checked = 0;
  for (const RationalPolytope &p : polys) {
    if (!is_delzant(p).delzant || !is_integral(p)) {
      o.fail("generated polytope is not integral Delzant");
      continue;
    }
    const AbelianGroup c = pi1_thmC(p), b = pi1_thmB(cone_over_polytope(p));
    ++checked;
    if (c != b) o.fail("thmC " + g(c) + " vs thmB " + g(b));
  }
  if (checked < 100) o.fail("only " + std::to_string(checked) + " polytopes");
  if (o.pass) o.detail = std::to_string(checked) + " polytopes";
  return o;
}

Outcome morse_count() {
  Outcome o;
  const auto polys = integral_delzant_corpus();
  for (const RationalPolytope &p : polys) {
    const MorseData m = morse_indices(p, choose_generic_functional(p));
    std::size_t zero = 0, two = 0, top = 0;
    for (std::size_t i : m.index_by_vertex) {
      zero += i == 0;
      two += i == 2;
      top += i == 2 * p.dim();
    }
    if (two != p.facet_count() - p.dim() || zero != 1 || top != 1)
      o.fail("index counts (" + std::to_string(zero) + ", " + std::to_string(two) + ", " +
             std::to_string(top) + ") on a polytope with d=" + std::to_string(p.facet_count()));
  }
  if (o.pass) o.detail = std::to_string(polys.size()) + " polytopes";
  return o;
}

Outcome euler_identity() {
  Outcome o;
  const auto polys = integral_delzant_corpus();
  for (const RationalPolytope &p : polys) {
    const EulerGcdCheck e = euler_gcd_consistency(p);
    if (!e.equal)
      o.fail("lengths gcd " + e.gcd_lengths.get_str() + " vs dets gcd " + e.gcd_dets.get_str());
  }
  if (o.pass) o.detail = std::to_string(polys.size()) + " polytopes";
  return o;
}

Outcome ray_independence() {
  Outcome o;
  const auto cones = good_corpus_cones();
  std::size_t rays = 0;
  for (const MomentCone &c : cones) {
    const Integer ref = pi1_thmB(c).order();
    for (const Ray &r : enumerate_rays(c)) {
      ++rays;
      if (pi1_thmB(c, r).order() != ref) o.fail("ray " + to_string(r.generator) + " differs");
    }
  }
  if (o.pass) o.detail = std::to_string(cones.size()) + " cones, " + std::to_string(rays) + " rays";
  return o;
}

Outcome non_reeb() {
  Outcome o;
  auto expect = [&](const Pi1Report &r, const std::string &pi1, const char *pi2) {
    if (!r.pi1 || r.pi1->to_string() != pi1)
      o.fail("expected " + pi1 + ", got " + (r.pi1 ? g(*r.pi1) : "none"));
    if (pi2 && (!r.pi2 || r.pi2->to_string() != pi2)) o.fail(std::string("pi2 expected ") + pi2);
  };
  expect(compute_pi1(ConeInput{MomentCone::build({iv({0, 1})}, 2), {}, {}}), "Z", nullptr);
  expect(compute_pi1(ConeInput{MomentCone::build({iv({1, 0, 0, 0}), iv({0, 1, 0, 0})}, 4), {}, {}}),
         "Z^2", nullptr);
  const MomentCone whole = MomentCone::build({}, 3);
  expect(compute_pi1(ConeInput{whole, BundleClass{2, 4, 6}, {}}), "Z/2 + Z^2", "0");
  expect(compute_pi1(ConeInput{whole, BundleClass{0, 0, 0}, {}}), "Z^3", "Z");
  expect(compute_pi1(ConeInput{whole, BundleClass{1, 5, 7}, {}}), "Z^2", "0");
  return o;
}

Outcome goodness_rejection() {
  Outcome o;
  const MomentCone c = MomentCone::build({iv({1, 0, 0}), iv({1, 2, 0}), iv({-1, -1, 1})}, 3);
  const ConeValidation v = is_good(c);
  if (v.good) o.fail("cone reported good");
  bool found = false;
  for (const FaceFailure &f : v.failures)
    if (f.rays == std::vector<IntVector>{iv({0, 0, 1})} && f.smith_invariants == iv({1, 2}))
      found = true;
  if (!found) o.fail("failing ray (0,0,1) with Smith invariants (1,2) not reported");
  try {
    pi1_thmB(c);
    o.fail("thmB did not refuse");
  } catch (const Error &e) {
    if (e.code() != ErrorCode::NotGood) o.fail(std::string("wrong error: ") + e.what());
  }
  return o;
}

Outcome orbifold() {
  Outcome o;
  const RationalPolytope t = RationalPolytope::build(
      2, {{iv({1, 0}), 0}, {iv({0, 1}), 0}, {iv({-1, -2}), -3}});
  const OrbifoldData d = orbifold_vertex_orders(t);
  std::map<RatVector, Integer> by_point;
  for (std::size_t i = 0; i < t.vertices().size(); ++i)
    by_point[t.vertices()[i].point] = d.order_by_vertex[i];
  const std::map<RatVector, Integer> want{
      {{0, 0}, 1}, {{3, 0}, 1}, {{0, Rational(3, 2)}, 2}};
  if (by_point != want) o.fail("vertex orders " + to_string(d.order_by_vertex));
  if (d.m_lcm != 2) o.fail("m_lcm " + d.m_lcm.get_str());
  if (o.pass) o.detail = "(0,0)->1, (3,0)->1, (0,3/2)->2, m_lcm 2";
  return o;
}

Outcome kernel_algebra() {
  Outcome o;
  oracle::Gen gen(1000);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t r = static_cast<std::size_t>(gen.uniform(1, 4));
    const std::size_t c = static_cast<std::size_t>(gen.uniform(1, 4));
    const IntMatrix a = gen.matrix(r, c, 9);
    const SmithDecomposition s = smith_normal_form(a);
    if (!(s.U * a * s.V == s.S)) o.fail("U A V != S");
    if (abs(det(s.U)) != 1 || abs(det(s.V)) != 1) o.fail("U or V not unimodular");
    const IntVector diag = s.diagonal();
    Integer prod = 1;
    for (std::size_t k = 0; k < diag.size(); ++k) {
      if (k < s.rank()) {
        if (diag[k] <= 0) o.fail("nonpositive invariant factor");
        if (k > 0 && !mpz_divisible_p(diag[k].get_mpz_t(), diag[k - 1].get_mpz_t()))
          o.fail("divisibility chain broken");
        prod *= diag[k];
        if (prod != oracle::minor_gcd(a, k + 1)) o.fail("minor-gcd identity fails");
      } else if (diag[k] != 0) {
        o.fail("nonzero entry past the rank");
      }
    }
    for (std::size_t x = 0; x < s.S.rows(); ++x)
      for (std::size_t y = 0; y < s.S.cols(); ++y)
        if (x != y && s.S(x, y) != 0) o.fail("S not diagonal");
    const std::size_t n = std::min(r, c);
    IntMatrix sq(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) sq(x, y) = a(x, y);
    if (det(sq) != oracle::cofactor_det(sq)) o.fail("det differs from cofactor oracle");
  }
  if (o.pass) o.detail = "1000 matrices";
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    double budget_s; // 0: no time bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "spheres", 1.0, spheres},
      {2, "lens spaces", 1.0, lens_spaces},
      {3, "determinant gcd vs lattice quotient", 10.0, det_gcd_vs_quotient},
      {4, "edge lengths vs determinant gcd", 10.0, edge_lengths_vs_dets},
      {5, "Morse count", 0, morse_count},
      {6, "Euler/length subgroup identity", 0, euler_identity},
      {7, "ray independence", 0, ray_independence},
      {8, "non-Reeb dispatch", 0, non_reeb},
      {9, "goodness rejection", 0, goodness_rejection},
      {10, "orbifold vertex orders", 0, orbifold},
      {11, "kernel algebra", 5.0, kernel_algebra},
  };
  int failures = 0;
  for (const Criterion &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      std::ostringstream os;
      os << "took " << secs << " s, budget " << c.budget_s << " s";
      o.fail(os.str());
    }
    failures += !o.pass;
    std::printf("%s %2d %-38s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
