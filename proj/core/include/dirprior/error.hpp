#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dirprior {

enum class ErrorCode {
  InvalidBounds,
  DegenerateRegion,
  ForcedUpperBound,
  DimensionMismatch,
  InvalidParams,
  NoUniqueMode,
  InvalidMode,
  NoConvergence,
  UndefinedRB,
  ZeroMargin,
  ConditioningStarvation,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// True for failures of a numerical procedure (as opposed to bad input).
bool is_numerical(ErrorCode code);

/// Single exception type for the library. `inequality` names the violated
/// bound condition ("ineq1" ... "ineq5", "range") and `index` the offending
/// coordinate, when the failure is attributable to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::string inequality = {},
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& inequality() const noexcept { return inequality_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

  /// Same error with the coordinate index remapped, used when bounds were
  /// validated in a relabelled order.
  Error with_index(std::optional<std::size_t> index) const;

 private:
  ErrorCode code_;
  std::string inequality_;
  std::optional<std::size_t> index_;
};

}  // namespace dirprior
