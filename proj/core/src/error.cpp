#include "dirprior/error.hpp"

namespace dirprior {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::ForcedUpperBound: return "ForcedUpperBound";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NoUniqueMode: return "NoUniqueMode";
    case ErrorCode::InvalidMode: return "InvalidMode";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UndefinedRB: return "UndefinedRB";
    case ErrorCode::ZeroMargin: return "ZeroMargin";
    case ErrorCode::ConditioningStarvation: return "ConditioningStarvation";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NoConvergence ||
         code == ErrorCode::ConditioningStarvation ||
         code == ErrorCode::UndefinedRB;
}

Error::Error(ErrorCode code, const std::string& message, std::string inequality,
             std::optional<std::size_t> index)
    : std::runtime_error(message),
      code_(code),
      inequality_(std::move(inequality)),
      index_(index) {}

Error Error::with_index(std::optional<std::size_t> index) const {
  return Error(code_, what(), inequality_, index);
}

}  // namespace dirprior
