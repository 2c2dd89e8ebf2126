#include "contact_pi1/crossval.hpp"

#include <atomic>
#include <thread>

#include "contact_pi1/corpus.hpp"

namespace contact_pi1 {

namespace {

struct Shape {
  std::size_t dim = 0;
  std::size_t facets = 0;
};

Shape cone_shape(const InputDocument &doc) { return {*doc.ambient_dim, doc.normals.size()}; }

Shape polytope_shape(const InputDocument &base, const InputDocument *factor) {
  Shape s{*base.ambient_dim + 1, base.halfspaces.size()};
  if (factor) {
    s.dim += *factor->ambient_dim;
    s.facets += factor->halfspaces.size();
  }
  return s;
}

bool fits(const Shape &s, const CrossvalOptions &o) {
  return o.dim.contains(s.dim) && o.facets.contains(s.facets);
}

std::string range_text(const Range &r) {
  return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

std::size_t pick(std::mt19937_64 &rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

} // namespace

Range parse_range(const std::string &text) {
  const std::size_t dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const std::size_t x = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {x, x};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    Range r{std::stoul(a, &used), 0};
    if (used != a.size()) throw std::invalid_argument(text);
    r.hi = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error &) {
    throw Error(ErrorCode::ParseError, "malformed range \"" + text + "\" (expected a..b)");
  }
}

IntMatrix unimodular_from_ops(std::size_t n, const std::vector<ElementaryOp> &ops) {
  IntMatrix w = IntMatrix::identity(n);
  for (const ElementaryOp &op : ops) w.add_row_multiple(op.dst, op.src, op.coeff);
  return w;
}

std::vector<ElementaryOp> random_ops(std::mt19937_64 &rng, std::size_t n, std::size_t max_ops,
                                     int bound) {
  std::vector<ElementaryOp> ops;
  if (n < 2) return ops;
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, max_ops)(rng);
  std::uniform_int_distribution<int> coeff(1, bound);
  std::bernoulli_distribution negative(0.5);
  for (std::size_t i = 0; i < count; ++i) {
    ElementaryOp op;
    op.dst = pick(rng, n);
    op.src = pick(rng, n - 1);
    if (op.src >= op.dst) ++op.src;
    op.coeff = coeff(rng) * (negative(rng) ? -1 : 1);
    ops.push_back(op);
  }
  return ops;
}

std::vector<InputDocument> crossval_cone_bases() {
  std::vector<InputDocument> out;
  for (const CorpusEntry &e : corpus())
    if (e.document.kind == InputDocument::Kind::Cone && e.expected.class_label == "ReebType")
      out.push_back(e.document);
  return out;
}

std::vector<InputDocument> crossval_polytope_bases() {
  std::vector<InputDocument> out;
  for (std::size_t n = 1; n <= 3; ++n) out.push_back(polytope_document(standard_simplex(n)));
  out.push_back(polytope_document(cube(2)));
  out.push_back(polytope_document(cube(3)));
  out.push_back(polytope_document(hirzebruch_trapezoid(3, 1, 1)));
  out.push_back(polytope_document(hirzebruch_trapezoid(5, 2, 2)));
  out.push_back(polytope_document(hirzebruch_trapezoid(4, 1, 3)));
  return out;
}

Recipe random_recipe(std::uint64_t seed, std::size_t index, const CrossvalOptions &options,
                     std::string &skip_reason) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);

  static const std::vector<InputDocument> cones = crossval_cone_bases();
  static const std::vector<InputDocument> polys = crossval_polytope_bases();

  std::vector<std::size_t> cone_candidates;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (fits(cone_shape(cones[i]), options)) cone_candidates.push_back(i);
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> poly_candidates;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (fits(polytope_shape(polys[i], nullptr), options)) poly_candidates.push_back({i, {}});
    for (std::size_t j = 0; j < polys.size(); ++j)
      if (fits(polytope_shape(polys[i], &polys[j]), options)) poly_candidates.push_back({i, j});
  }

  Recipe r;
  r.polytope = std::bernoulli_distribution(0.5)(rng);
  if (r.polytope && poly_candidates.empty()) r.polytope = false;
  if (!r.polytope && cone_candidates.empty()) r.polytope = true;
  if (r.polytope && poly_candidates.empty()) {
    skip_reason = "no corpus instance with ambient dimension in " + range_text(options.dim) +
                  " and facet count in " + range_text(options.facets);
    return r;
  }

  if (r.polytope) {
    const auto &[base, factor] = poly_candidates[pick(rng, poly_candidates.size())];
    r.base = base;
    r.factor = factor;
    r.dilation = std::uniform_int_distribution<long>(1, 3)(rng);
    const std::size_t n = polytope_shape(polys[base], factor ? &polys[*factor] : nullptr).dim - 1;
    r.ops = random_ops(rng, n);
    std::uniform_int_distribution<long> shift(-3, 3);
    for (std::size_t i = 0; i < n; ++i) r.translation.emplace_back(shift(rng));
  } else {
    r.base = cone_candidates[pick(rng, cone_candidates.size())];
    r.ops = random_ops(rng, *cones[r.base].ambient_dim);
  }
  return r;
}

InputDocument realize(const Recipe &recipe) {
  static const std::vector<InputDocument> cones = crossval_cone_bases();
  static const std::vector<InputDocument> polys = crossval_polytope_bases();
  if (!recipe.polytope) {
    const InputDocument &base = cones[recipe.base];
    const IntMatrix w = unimodular_from_ops(*base.ambient_dim, recipe.ops);
    std::vector<IntVector> normals;
    for (const IntVector &v : base.normals) normals.push_back(w * v);
    return cone_document(normals, *base.ambient_dim, "crossval-cone");
  }
  RationalPolytope p = std::get<RationalPolytope>(to_pi1_input(polys[recipe.base]));
  if (recipe.factor)
    p = product(p, std::get<RationalPolytope>(to_pi1_input(polys[*recipe.factor])));
  if (recipe.dilation != 1) p = dilated(p, recipe.dilation);
  IntVector t = recipe.translation;
  t.resize(p.dim(), Integer(0));
  p = transformed(p, unimodular_from_ops(p.dim(), recipe.ops), t);
  return polytope_document(p, "crossval-polytope");
}

std::string find_violation(const Recipe &recipe) {
  try {
    const InputDocument doc = parse_input(to_json(realize(recipe)).dump());
    const Pi1Report r = run(doc).result;
    if (!r.agree) return "routes disagree: " + r.disagreement;
    std::vector<std::string> required{"thmB", "lerman"};
    if (recipe.polytope) required.push_back("thmC");
    for (const std::string &name : required) {
      const MethodResult *m = r.method(name);
      if (!m) return "method " + name + " missing";
      if (!m->group) return "method " + name + " skipped: " + m->skip_reason;
    }
    if (!r.method("lerman")->group->is_cyclic())
      return "lattice quotient " + r.method("lerman")->group->to_string() + " is not cyclic";
    if (r.class_label != "ReebType") return "class " + r.class_label + ", expected ReebType";

    Recipe plain = recipe;
    plain.ops.clear();
    std::fill(plain.translation.begin(), plain.translation.end(), Integer(0));
    const Pi1Report ref = run(realize(plain)).result;
    if (!ref.pi1 || *ref.pi1 != *r.pi1)
      return "pi1 " + r.pi1->to_string() + " differs from untransformed instance " +
             (ref.pi1 ? ref.pi1->to_string() : std::string("none"));
  } catch (const Error &e) {
    return std::string("error: ") + e.what();
  }
  return "";
}

Recipe minimize(Recipe recipe) {
  bool changed = true;
  auto attempt = [&](Recipe candidate) {
    if (find_violation(candidate).empty()) return;
    recipe = std::move(candidate);
    changed = true;
  };
  while (changed) {
    changed = false;
    if (recipe.factor) {
      Recipe c = recipe;
      c.factor.reset();
      c.translation.resize(c.translation.size() -
                           *crossval_polytope_bases()[*recipe.factor].ambient_dim);
      std::erase_if(c.ops, [&](const ElementaryOp &op) {
        return op.dst >= c.translation.size() || op.src >= c.translation.size();
      });
      attempt(std::move(c));
    }
    if (recipe.dilation != 1) {
      Recipe c = recipe;
      c.dilation = 1;
      attempt(std::move(c));
    }
    if (!is_zero(recipe.translation)) {
      Recipe c = recipe;
      std::fill(c.translation.begin(), c.translation.end(), Integer(0));
      attempt(std::move(c));
    }
    for (std::size_t i = recipe.ops.size(); i-- > 0;) {
      if (i >= recipe.ops.size()) continue;
      Recipe c = recipe;
      c.ops.erase(c.ops.begin() + static_cast<std::ptrdiff_t>(i));
      attempt(std::move(c));
    }
  }
  return recipe;
}

TrialOutcome run_trial(std::uint64_t seed, std::size_t index, const CrossvalOptions &options) {
  TrialOutcome out;
  out.index = index;
  std::string skip;
  Recipe recipe = random_recipe(seed, index, options, skip);
  if (!skip.empty()) {
    out.status = TrialOutcome::Status::Skipped;
    out.detail = skip;
    return out;
  }
  out.detail = find_violation(recipe);
  out.status = out.detail.empty() ? TrialOutcome::Status::Agree : TrialOutcome::Status::Disagree;
  out.recipe = recipe;
  try {
    out.document = realize(recipe);
  } catch (const Error &) {
  }
  return out;
}

CrossvalSummary crossval(const CrossvalOptions &options) {
  CrossvalSummary s;
  for (const CorpusEntry &e : corpus()) {
    const CorpusCheck c = check_entry(e);
    if (c.passed) {
      ++s.corpus_passed;
      continue;
    }
    std::string msg = e.name + ":";
    for (const std::string &p : c.problems) msg += " " + p + ";";
    s.corpus_failures.push_back(msg);
  }

  s.trials.resize(options.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.count; i = next++)
      s.trials[i] = run_trial(options.seed, i, options);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, options.count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread &t : pool) t.join();
  }

  for (const TrialOutcome &t : s.trials) {
    switch (t.status) {
    case TrialOutcome::Status::Agree: ++s.agree; break;
    case TrialOutcome::Status::Skipped: ++s.skipped; break;
    case TrialOutcome::Status::Disagree:
      if (s.disagree++ == 0) {
        const Recipe small = minimize(*t.recipe);
        s.reproduction_detail = find_violation(small);
        try {
          s.reproduction = realize(small);
        } catch (const Error &) {
          s.reproduction = t.document;
        }
      }
      break;
    }
  }
  return s;
}

ordered_json summary_json(const CrossvalSummary &s) {
  ordered_json j;
  j["corpus"] = {{"passed", s.corpus_passed},
                 {"failed", s.corpus_failures.size()},
                 {"failures", s.corpus_failures}};
  j["trials"] = s.trials.size();
  j["agree"] = s.agree;
  j["disagree"] = s.disagree;
  j["skipped"] = s.skipped;
  ordered_json skips = ordered_json::array();
  ordered_json failures = ordered_json::array();
  for (const TrialOutcome &t : s.trials) {
    if (t.status == TrialOutcome::Status::Skipped)
      skips.push_back({{"trial", t.index}, {"reason", t.detail}});
    if (t.status == TrialOutcome::Status::Disagree)
      failures.push_back({{"trial", t.index}, {"detail", t.detail}});
  }
  j["skip_reasons"] = skips;
  j["disagreements"] = failures;
  if (s.reproduction) {
    j["reproduction"] = to_json(*s.reproduction);
    j["reproduction_detail"] = s.reproduction_detail;
  }
  return j;
}

} // namespace contact_pi1
