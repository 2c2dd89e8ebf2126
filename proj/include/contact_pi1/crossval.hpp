#pragma once
// Randomized cross-validation: every route must agree on random unimodular
// images of corpus cones and on dilations, products and lattice transforms of
// corpus Delzant polytopes.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "contact_pi1/document.hpp"

namespace contact_pi1 {

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool contains(std::size_t x) const { return lo <= x && x <= hi; }
};

/// Parses "a..b" or "a".
Range parse_range(const std::string &text);

struct CrossvalOptions {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  /// Ambient dimension of the cone (polytope dimension + 1).
  Range dim{2, 6};
  Range facets{1, 12};
  std::size_t jobs = 1;
};

/// One elementary row operation row[dst] += coeff * row[src].
struct ElementaryOp {
  std::size_t dst = 0;
  std::size_t src = 0;
  int coeff = 0;
};

IntMatrix unimodular_from_ops(std::size_t n, const std::vector<ElementaryOp> &ops);
std::vector<ElementaryOp> random_ops(std::mt19937_64 &rng, std::size_t n,
                                     std::size_t max_ops = 12, int bound = 3);

/// Everything needed to rebuild one random instance.
struct Recipe {
  bool polytope = false;
  std::size_t base = 0;
  std::optional<std::size_t> factor;
  long dilation = 1;
  std::vector<ElementaryOp> ops;
  IntVector translation;
};

struct TrialOutcome {
  enum class Status { Agree, Disagree, Skipped };
  std::size_t index = 0;
  Status status = Status::Skipped;
  std::string detail;
  std::optional<Recipe> recipe;
  std::optional<InputDocument> document;
};

struct CrossvalSummary {
  std::size_t corpus_passed = 0;
  std::vector<std::string> corpus_failures;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t skipped = 0;
  std::vector<TrialOutcome> trials;
  /// Minimized reproduction of the first disagreement.
  std::optional<InputDocument> reproduction;
  std::string reproduction_detail;

  bool ok() const { return disagree == 0 && corpus_failures.empty(); }
};

/// Bases the generator draws from.
std::vector<InputDocument> crossval_cone_bases();
std::vector<InputDocument> crossval_polytope_bases();

/// Deterministic in (seed, index) alone.
Recipe random_recipe(std::uint64_t seed, std::size_t index, const CrossvalOptions &options,
                     std::string &skip_reason);
InputDocument realize(const Recipe &recipe);
/// Empty if every route agrees (and matches the untransformed reference).
std::string find_violation(const Recipe &recipe);
Recipe minimize(Recipe recipe);

TrialOutcome run_trial(std::uint64_t seed, std::size_t index, const CrossvalOptions &options);
CrossvalSummary crossval(const CrossvalOptions &options);

ordered_json summary_json(const CrossvalSummary &summary);

} // namespace contact_pi1
