#pragma once
// JSON input documents and report rendering for the command-line tool.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contact_pi1/pi1.hpp"

namespace contact_pi1 {

using ordered_json = nlohmann::ordered_json;

struct InputDocument {
  enum class Kind { Cone, Polytope, T3Bundle };
  Kind kind = Kind::Cone;
  std::optional<std::size_t> ambient_dim;
  std::vector<IntVector> normals;
  std::vector<Halfspace> halfspaces;
  std::optional<BundleClass> bundle_class;
  std::optional<IntVector> reeb;
  std::optional<std::string> label;
};

std::string_view kind_name(InputDocument::Kind kind);

/// Strict parse of a single document; unknown or misplaced fields are
/// rejected. Integers may be JSON integers or decimal strings; offsets may
/// also be "p/q" strings. Throws Error(ParseError) with line/field context.
InputDocument parse_input(std::string_view text);
/// A single document or a JSON array of documents.
std::vector<InputDocument> parse_batch(std::string_view text);
InputDocument document_from_json(const nlohmann::json &j, const std::string &where = "");

ordered_json to_json(const InputDocument &doc);
/// Builds the validated mathematical input (may throw construction errors).
Pi1Input to_pi1_input(const InputDocument &doc);

enum class Format { Json, Text };

struct RunOptions {
  Method method = Method::All;
  Format format = Format::Json;
};

struct OutputReport {
  InputDocument input;
  Pi1Report result;
};

OutputReport run(const InputDocument &doc, const RunOptions &options = {});

ordered_json report_json(const OutputReport &report);
std::string render(const OutputReport &report, Format format);

/// Validation-only summary (no fundamental group computation).
ordered_json validation_json(const InputDocument &doc);

ordered_json integer_json(const Integer &x);
ordered_json vector_json(const IntVector &v);
ordered_json rational_json(const Rational &x);

} // namespace contact_pi1
