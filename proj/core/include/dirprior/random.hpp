#pragma once

#include <cstdint>
#include <random>

namespace dirprior {

/// Seeded random stream. Every Monte Carlo routine takes one of these
/// explicitly; `substream` derives independent, reproducible streams for
/// parallel or per-task work.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  std::uint64_t next_u64() { return engine_(); }
  std::int64_t binomial(std::int64_t n, double p);

  /// Gamma(shape, 1) variate; requires shape >= 1 (Marsaglia-Tsang).
  double gamma(double shape);

  /// Independent stream keyed by (seed, stream, index); does not advance
  /// this stream.
  Rng substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dirprior
