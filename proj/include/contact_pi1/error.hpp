#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace contact_pi1 {

enum class ErrorCode {
  ZeroVector,
  NotSquare,
  NotPrimitive,
  ZeroNormal,
  DuplicateNormal,
  RedundantFacet,
  BadDimension,
  NotStrictlyConvex,
  InteriorVectorNotFound,
  ReebNotPositiveOnCone,
  InvalidMomentCone,
  MissingBundleClass,
  Unbounded,
  Empty,
  NotSimple,
  NotGeneric,
  NotIntegral,
  NotDelzant,
  NonIntegerOffset,
  NotGood,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `indices()` carries the 1-based
/// positions the error refers to (e.g. the two halves of a duplicate pair).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &detail,
        std::vector<std::size_t> indices = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t> &indices() const noexcept { return indices_; }

private:
  ErrorCode code_;
  std::vector<std::size_t> indices_;
};

} // namespace contact_pi1
