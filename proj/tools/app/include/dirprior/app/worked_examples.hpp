#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dirprior::app {

/// One computed quantity next to its reference value. Rows without a band
/// are informational and never fail.
struct Comparison {
  std::string quantity;
  std::string published;
  double computed = 0.0;
  std::optional<double> lo;
  std::optional<double> hi;

  bool banded() const noexcept { return lo.has_value() || hi.has_value(); }
  bool pass() const noexcept;
};

struct ExampleRun {
  std::string name;
  std::vector<Comparison> rows;

  bool pass() const noexcept;
};

struct ReproduceOptions {
  std::uint64_t seed = 1;
  /// Monte Carlo draws per content evaluation; 0 keeps each example's default.
  std::size_t draws = 0;
};

/// Runs "example1" ... "example4" end to end. Unknown names raise InvalidInput.
ExampleRun reproduce(const std::string& name, const ReproduceOptions& opts);

void print_comparison(const ExampleRun& run, std::ostream& out);

}  // namespace dirprior::app
