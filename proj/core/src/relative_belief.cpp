#include "dirprior/relative_belief.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirprior/error.hpp"
#include "dirprior/special_functions.hpp"

namespace dirprior {

ContingencyShape::ContingencyShape(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows < 2 || cols < 2) {
    throw Error(ErrorCode::InvalidInput, "contingency table needs r, c >= 2");
  }
}

DiscretizationGrid::DiscretizationGrid(double delta, std::size_t bins)
    : delta_(delta), bins_(bins) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidInput, "delta must be positive");
  }
  if (bins < 2) throw Error(ErrorCode::InvalidInput, "grid needs at least 2 bins");
}

DiscretizationGrid DiscretizationGrid::covering(double delta, double max_value) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidInput, "delta must be positive");
  const double extent = std::ceil(std::max(max_value, 0.0) / delta);
  return DiscretizationGrid(delta, std::max<std::size_t>(
                                       2, static_cast<std::size_t>(extent) + 1));
}

std::size_t DiscretizationGrid::bin_of(double value) const noexcept {
  if (!(value > 0.0)) return 0;
  const double idx = std::floor(value / delta_);
  if (idx >= static_cast<double>(bins_ - 1)) return bins_ - 1;
  return static_cast<std::size_t>(idx);
}

double kl_independence_psi(std::span<const double> p, const ContingencyShape& shape) {
  if (p.size() != shape.cells()) {
    throw Error(ErrorCode::DimensionMismatch, "table size does not match shape");
  }
  const std::size_t r = shape.rows();
  const std::size_t c = shape.cols();
  std::vector<double> row(r, 0.0);
  std::vector<double> col(c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double v = p[shape.index(i, j)];
      row[i] += v;
      col[j] += v;
    }
  }
  double psi = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double v = p[shape.index(i, j)];
      if (v > 0.0) psi += v * std::log(v / (row[i] * col[j]));
    }
  }
  return std::max(psi, 0.0);
}

std::vector<double> sample_psi(const DirichletParams& d,
                               const ContingencyShape& shape, std::size_t draws,
                               Rng& rng) {
  if (d.k() != shape.cells()) {
    throw Error(ErrorCode::DimensionMismatch, "prior size does not match table");
  }
  std::vector<double> p(d.k());
  std::vector<double> out;
  out.reserve(draws);
  for (std::size_t n = 0; n < draws; ++n) {
    sample_into(d, rng, p);
    out.push_back(kl_independence_psi(p, shape));
  }
  return out;
}

namespace {

std::vector<std::uint64_t> bin_counts(std::span<const double> values,
                                      const DiscretizationGrid& grid) {
  std::vector<std::uint64_t> counts(grid.bins(), 0);
  for (double v : values) ++counts[grid.bin_of(v)];
  return counts;
}

std::vector<double> to_contents(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  std::vector<double> out(counts.size(), 0.0);
  if (total == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> psi_bin_counts(const DirichletParams& d,
                                          const ContingencyShape& shape,
                                          const DiscretizationGrid& grid,
                                          std::size_t draws, Rng& rng) {
  if (draws == 0) throw Error(ErrorCode::InvalidInput, "need at least one draw");
  return bin_counts(sample_psi(d, shape, draws, rng), grid);
}

std::vector<double> psi_bin_contents(const DirichletParams& d,
                                     const ContingencyShape& shape,
                                     const DiscretizationGrid& grid,
                                     std::size_t draws, Rng& rng) {
  return to_contents(psi_bin_counts(d, shape, grid, draws, rng));
}

RBAnalysis RBAnalysis::from_counts(DiscretizationGrid grid,
                                   std::vector<std::uint64_t> prior_counts,
                                   std::vector<std::uint64_t> posterior_counts) {
  if (prior_counts.size() != grid.bins() || posterior_counts.size() != grid.bins()) {
    throw Error(ErrorCode::DimensionMismatch, "bin counts do not match grid");
  }
  RBAnalysis a;
  a.grid = grid;
  a.prior_content = to_contents(prior_counts);
  a.posterior_content = to_contents(posterior_counts);
  for (auto c : prior_counts) a.prior_draws += c;
  for (auto c : posterior_counts) a.posterior_draws += c;
  a.rb.resize(grid.bins());
  for (std::size_t i = 0; i < grid.bins(); ++i) {
    if (prior_counts[i] > 0) a.rb[i] = a.posterior_content[i] / a.prior_content[i];
  }
  a.prior_counts = std::move(prior_counts);
  a.posterior_counts = std::move(posterior_counts);
  return a;
}

RBAnalysis rb_analysis(const DirichletParams& prior, const CountVector& f,
                       const ContingencyShape& shape, double delta,
                       std::size_t prior_draws, std::size_t posterior_draws,
                       Rng& rng) {
  if (prior_draws == 0 || posterior_draws == 0) {
    throw Error(ErrorCode::InvalidInput, "need at least one draw");
  }
  const DirichletParams posterior = posterior_update(prior, f);
  const std::vector<double> prior_psi = sample_psi(prior, shape, prior_draws, rng);
  const std::vector<double> post_psi =
      sample_psi(posterior, shape, posterior_draws, rng);
  const double max_psi = std::max(*std::max_element(prior_psi.begin(), prior_psi.end()),
                                  *std::max_element(post_psi.begin(), post_psi.end()));
  const DiscretizationGrid grid = DiscretizationGrid::covering(delta, max_psi);
  return RBAnalysis::from_counts(grid, bin_counts(prior_psi, grid),
                                 bin_counts(post_psi, grid));
}

HypothesisAssessment assess_hypothesis(const RBAnalysis& a, std::size_t h0_bin) {
  if (h0_bin >= a.rb.size()) {
    throw Error(ErrorCode::InvalidInput, "hypothesis bin outside the grid");
  }
  if (!a.rb[h0_bin]) {
    throw Error(ErrorCode::UndefinedRB,
                "relative belief ratio undefined at bin " + std::to_string(h0_bin) +
                    " (zero estimated prior content)");
  }
  HypothesisAssessment out;
  out.h0_bin = h0_bin;
  out.rb_at_h0 = *a.rb[h0_bin];
  std::uint64_t qualifying = 0;
  for (std::size_t i = 0; i < a.rb.size(); ++i) {
    if (a.rb[i] && *a.rb[i] <= out.rb_at_h0) qualifying += a.posterior_counts[i];
  }
  out.strength = a.posterior_draws == 0
                     ? 0.0
                     : static_cast<double>(qualifying) /
                           static_cast<double>(a.posterior_draws);
  if (out.rb_at_h0 > 1.0) {
    out.verdict = Verdict::EvidenceInFavor;
  } else if (out.rb_at_h0 < 1.0) {
    out.verdict = Verdict::EvidenceAgainst;
  } else {
    out.verdict = Verdict::NoEvidence;
  }
  return out;
}

std::size_t rb_estimate(const RBAnalysis& a) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < a.rb.size(); ++i) {
    if (!a.rb[i]) continue;
    if (!best || *a.rb[i] > *a.rb[*best]) best = i;
  }
  if (!best) throw Error(ErrorCode::UndefinedRB, "no bin has a defined ratio");
  return *best;
}

ChiSquaredResult chi_squared_independence(const CountVector& f,
                                          const ContingencyShape& shape) {
  if (f.k() != shape.cells()) {
    throw Error(ErrorCode::DimensionMismatch, "counts do not match table shape");
  }
  const std::size_t r = shape.rows();
  const std::size_t c = shape.cols();
  std::vector<double> row(r, 0.0);
  std::vector<double> col(c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double v = static_cast<double>(f.counts()[shape.index(i, j)]);
      row[i] += v;
      col[j] += v;
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (row[i] == 0.0) {
      throw Error(ErrorCode::ZeroMargin, "row " + std::to_string(i + 1) + " is empty",
                  "", i);
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (col[j] == 0.0) {
      throw Error(ErrorCode::ZeroMargin,
                  "column " + std::to_string(j + 1) + " is empty", "", j);
    }
  }
  const double n = static_cast<double>(f.total());
  ChiSquaredResult out;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row[i] * col[j] / n;
      const double diff = static_cast<double>(f.counts()[shape.index(i, j)]) - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.degrees_of_freedom = static_cast<double>((r - 1) * (c - 1));
  out.p_value = chi_squared_survival(out.statistic, out.degrees_of_freedom);
  return out;
}

}  // namespace dirprior
