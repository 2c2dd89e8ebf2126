#include "contact_pi1/corpus.hpp"

namespace contact_pi1 {

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::string cyclic_name(long k) { return AbelianGroup::cyclic(k).to_string(); }

void add(std::vector<CorpusEntry> &out, std::string name, InputDocument doc,
         ExpectedOutcome expected) {
  doc.label = name;
  out.push_back({std::move(name), std::move(doc), std::move(expected)});
}

InputDocument bundle_document(long a, long b, long c) {
  InputDocument doc;
  doc.kind = InputDocument::Kind::T3Bundle;
  doc.bundle_class = BundleClass{a, b, c};
  return doc;
}

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> out;

  for (std::size_t dim = 2; dim <= 6; ++dim) {
    std::vector<IntVector> normals;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, Integer(0));
      e[i] = 1;
      normals.push_back(std::move(e));
    }
    add(out, "orthant-" + std::to_string(dim), cone_document(normals, dim),
        {"ReebType", "0", std::nullopt, {{"thmB", "0"}, {"lerman", "0"}, {"thmC", "0"}}});
  }

  for (long p = 1; p <= 10; ++p)
    add(out, "lens-" + std::to_string(p) + "-1", cone_document({iv({1, 0}), iv({-1, p})}, 2),
        {"ReebType", cyclic_name(p), std::nullopt,
         {{"thmB", cyclic_name(p)}, {"lerman", cyclic_name(p)}}});
  for (auto [p, q] : {std::pair{5L, 2L}, {7L, 3L}, {8L, 3L}, {12L, 5L}})
    add(out, "lens-" + std::to_string(p) + "-" + std::to_string(q),
        cone_document({iv({1, 0}), iv({-q, p})}, 2),
        {"ReebType", cyclic_name(p), std::nullopt,
         {{"thmB", cyclic_name(p)}, {"lerman", cyclic_name(p)}}});

  for (long p = 1; p <= 5; ++p)
    add(out, "square-" + std::to_string(p),
        cone_document({iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, 0, p}), iv({0, -1, p})}, 3),
        {"ReebType", cyclic_name(p), std::nullopt,
         {{"thmB", cyclic_name(p)}, {"lerman", cyclic_name(p)}}});

  for (std::size_t n = 1; n <= 3; ++n)
    for (long k = 1; k <= 3; ++k)
      add(out, "simplex-" + std::to_string(n) + "-" + std::to_string(k),
          polytope_document(standard_simplex(n, k)),
          {"ReebType", cyclic_name(k), std::nullopt,
           {{"thmB", cyclic_name(k)}, {"lerman", cyclic_name(k)}, {"thmC", cyclic_name(k)}}});
  for (long len : {4L, 6L})
    add(out, "segment-" + std::to_string(len), polytope_document(segment(len)),
        {"ReebType", cyclic_name(len), std::nullopt, {{"thmC", cyclic_name(len)}}});

  add(out, "unit-square", polytope_document(cube(2)),
      {"ReebType", "0", std::nullopt, {{"thmB", "0"}, {"lerman", "0"}, {"thmC", "0"}}});
  add(out, "cube-3-2", polytope_document(cube(3, 2)),
      {"ReebType", "Z/2", std::nullopt, {{"thmC", "Z/2"}}});
  add(out, "hirzebruch-3-1-1", polytope_document(hirzebruch_trapezoid(3, 1, 1)),
      {"ReebType", "0", std::nullopt, {{"thmC", "0"}}});
  add(out, "hirzebruch-5-2-2", polytope_document(hirzebruch_trapezoid(5, 2, 2)),
      {"ReebType", "0", std::nullopt, {{"thmC", "0"}}});
  add(out, "hirzebruch-6-2-1",
      polytope_document(dilated(hirzebruch_trapezoid(3, 1, 1), 2)),
      {"ReebType", "Z/2", std::nullopt, {{"thmC", "Z/2"}}});

  {
    InputDocument doc;
    doc.kind = InputDocument::Kind::Polytope;
    doc.ambient_dim = 2;
    doc.halfspaces = {{iv({1, 0}), 0}, {iv({0, 1}), 0}, {iv({-1, -2}), -3}};
    add(out, "orbifold-triangle", doc,
        {"ReebType", "Z/3", std::nullopt,
         {{"thmB", "Z/3"}, {"lerman", "Z/3"}, {"thmC", "skipped"}}});
  }

  add(out, "non-good", cone_document({iv({1, 0, 0}), iv({1, 2, 0}), iv({-1, -1, 1})}, 3),
      {"InvalidMomentCone", std::nullopt, std::nullopt,
       {{"thmB", "skipped"}, {"lerman", "Z/2"}}});

  add(out, "half-plane", cone_document({iv({0, 1})}, 2),
      {"TorusTimesSphere(1)", "Z", std::nullopt, {{"lineality", "Z"}}});
  add(out, "wedge-3", cone_document({iv({1, 0, 0}), iv({0, 1, 0})}, 3),
      {"TorusTimesSphere(1)", "Z", std::nullopt, {}});
  add(out, "lineality-2-in-4", cone_document({iv({1, 0, 0, 0}), iv({0, 1, 0, 0})}, 4),
      {"TorusTimesSphere(2)", "Z^2", std::nullopt, {}});
  add(out, "whole-plane", cone_document({}, 2), {"TorusTimesSphere(2)", "Z^3", std::nullopt, {}});
  add(out, "whole-space-4", cone_document({}, 4),
      {"TorusTimesSphere(4)", "Z^4", std::nullopt, {}});
  {
    InputDocument doc = cone_document({}, 3);
    doc.bundle_class = BundleClass{2, 4, 6};
    add(out, "whole-space-3-bundle-2-4-6", doc,
        {"PrincipalT3BundleOverS2", "Z/2 + Z^2", "0", {{"bundle", "Z/2 + Z^2"}}});
  }
  add(out, "t3-bundle-2-4-6", bundle_document(2, 4, 6),
      {"PrincipalT3BundleOverS2", "Z/2 + Z^2", "0", {}});
  add(out, "t3-bundle-0-0-0", bundle_document(0, 0, 0),
      {"PrincipalT3BundleOverS2", "Z^3", "Z", {}});
  add(out, "t3-bundle-1-5-7", bundle_document(1, 5, 7),
      {"PrincipalT3BundleOverS2", "Z^2", "0", {}});
  add(out, "t3-bundle-0-0-5", bundle_document(0, 0, -5),
      {"PrincipalT3BundleOverS2", "Z/5 + Z^2", "0", {}});
  return out;
}

} // namespace

InputDocument cone_document(const std::vector<IntVector> &normals, std::size_t ambient_dim,
                            std::optional<std::string> label) {
  InputDocument doc;
  doc.kind = InputDocument::Kind::Cone;
  doc.ambient_dim = ambient_dim;
  doc.normals = normals;
  doc.label = std::move(label);
  return doc;
}

InputDocument polytope_document(const RationalPolytope &p, std::optional<std::string> label) {
  InputDocument doc;
  doc.kind = InputDocument::Kind::Polytope;
  doc.ambient_dim = p.dim();
  doc.halfspaces = p.halfspaces();
  doc.label = std::move(label);
  return doc;
}

const std::vector<CorpusEntry> &corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

CorpusCheck check_entry(const CorpusEntry &entry) {
  CorpusCheck out;
  auto expect = [&](const std::string &what, const std::string &got, const std::string &want) {
    if (got != want) out.problems.push_back(what + ": got " + got + ", expected " + want);
  };
  try {
    const Pi1Report r = run(entry.document).result;
    const ExpectedOutcome &e = entry.expected;
    expect("class", r.class_label, e.class_label);
    expect("pi1", r.pi1 ? r.pi1->to_string() : "none", e.pi1.value_or("none"));
    if (e.pi2) expect("pi2", r.pi2 ? r.pi2->to_string() : "none", *e.pi2);
    if (!r.agree) out.problems.push_back("methods disagree: " + r.disagreement);
    for (const auto &[name, want] : e.methods) {
      const MethodResult *m = r.method(name);
      if (!m) {
        out.problems.push_back("method " + name + " missing");
        continue;
      }
      expect("method " + name, m->group ? m->group->to_string() : "skipped", want);
    }
  } catch (const Error &err) {
    out.problems.push_back(std::string("error: ") + err.what());
  }
  out.passed = out.problems.empty();
  return out;
}

} // namespace contact_pi1
