#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dirprior/dirichlet.hpp"
#include "dirprior/random.hpp"

namespace dirprior {

/// r x c contingency table flattened row-major, cell (i, j) -> i * c + j.
class ContingencyShape {
 public:
  ContingencyShape(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t cells() const noexcept { return rows_ * cols_; }
  std::size_t index(std::size_t row, std::size_t col) const {
    return row * cols_ + col;
  }

  friend bool operator==(const ContingencyShape&, const ContingencyShape&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
};

/// Bins [i delta, (i+1) delta) for i < K - 1; the last bin is [(K-1) delta, inf).
class DiscretizationGrid {
 public:
  DiscretizationGrid(double delta, std::size_t bins);

  /// Smallest grid (at least two bins) whose closed bins cover [0, max_value].
  static DiscretizationGrid covering(double delta, double max_value);

  double delta() const noexcept { return delta_; }
  std::size_t bins() const noexcept { return bins_; }
  std::size_t bin_of(double value) const noexcept;
  double lower_edge(std::size_t bin) const noexcept {
    return delta_ * static_cast<double>(bin);
  }

  friend bool operator==(const DiscretizationGrid&, const DiscretizationGrid&) = default;

 private:
  double delta_;
  std::size_t bins_;
};

/// psi = sum p_ij ln(p_ij / (p_i. p_.j)), the KL divergence of the table
/// from the product of its margins. Zero cells contribute nothing.
double kl_independence_psi(std::span<const double> p, const ContingencyShape& shape);

/// Per-bin hit counts of psi over `draws` Dirichlet samples.
std::vector<std::uint64_t> psi_bin_counts(const DirichletParams& d,
                                          const ContingencyShape& shape,
                                          const DiscretizationGrid& grid,
                                          std::size_t draws, Rng& rng);

/// Per-bin probability contents of psi (counts / draws).
std::vector<double> psi_bin_contents(const DirichletParams& d,
                                     const ContingencyShape& shape,
                                     const DiscretizationGrid& grid,
                                     std::size_t draws, Rng& rng);

/// psi values of `draws` samples from Dirichlet(d).
std::vector<double> sample_psi(const DirichletParams& d,
                               const ContingencyShape& shape, std::size_t draws,
                               Rng& rng);

struct RBAnalysis {
  DiscretizationGrid grid{1.0, 2};
  std::vector<std::uint64_t> prior_counts;
  std::vector<std::uint64_t> posterior_counts;
  std::vector<double> prior_content;
  std::vector<double> posterior_content;
  /// posterior / prior per bin; nullopt where the prior estimate is zero.
  std::vector<std::optional<double>> rb;
  std::size_t prior_draws = 0;
  std::size_t posterior_draws = 0;

  /// Builds contents and ratios from per-bin counts.
  static RBAnalysis from_counts(DiscretizationGrid grid,
                                std::vector<std::uint64_t> prior_counts,
                                std::vector<std::uint64_t> posterior_counts);
};

/// Discretised relative-belief analysis of psi. The grid is sized to cover
/// every sampled psi from both the prior and the posterior.
RBAnalysis rb_analysis(const DirichletParams& prior, const CountVector& f,
                       const ContingencyShape& shape, double delta,
                       std::size_t prior_draws, std::size_t posterior_draws,
                       Rng& rng);

enum class Verdict { EvidenceInFavor, EvidenceAgainst, NoEvidence };

struct HypothesisAssessment {
  std::size_t h0_bin = 0;
  double rb_at_h0 = 1.0;
  double strength = 0.0;
  Verdict verdict = Verdict::NoEvidence;
};

/// RB of the hypothesised bin and its strength, the posterior probability
/// of bins whose RB does not exceed it.
HypothesisAssessment assess_hypothesis(const RBAnalysis& a, std::size_t h0_bin = 0);

/// Bin with the largest RB; ties go to the smaller psi.
std::size_t rb_estimate(const RBAnalysis& a);

struct ChiSquaredResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
};

/// Pearson test of independence; throws ZeroMargin for an empty row/column.
ChiSquaredResult chi_squared_independence(const CountVector& f,
                                          const ContingencyShape& shape);

}  // namespace dirprior
