#pragma once
// Built-in examples with known answers.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contact_pi1/document.hpp"

namespace contact_pi1 {

struct ExpectedOutcome {
  std::string class_label;
  /// Absent when no group is reported (invalid cone).
  std::optional<std::string> pi1;
  std::optional<std::string> pi2;
  /// Method name -> rendered group, or "skipped".
  std::map<std::string, std::string> methods;
};

struct CorpusEntry {
  std::string name;
  InputDocument document;
  ExpectedOutcome expected;
};

const std::vector<CorpusEntry> &corpus();

struct CorpusCheck {
  bool passed = false;
  std::vector<std::string> problems;
};
CorpusCheck check_entry(const CorpusEntry &entry);

InputDocument cone_document(const std::vector<IntVector> &normals, std::size_t ambient_dim,
                            std::optional<std::string> label = std::nullopt);
InputDocument polytope_document(const RationalPolytope &p,
                                std::optional<std::string> label = std::nullopt);

} // namespace contact_pi1
