#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dirprior/app/io.hpp"

namespace dirprior::app {

enum class PlotKind { MarginalDensity, PsiHistogram, ScatterPairs };

std::string to_string(PlotKind kind);
/// "marginal-density", "psi-histogram" or "scatter-pairs".
PlotKind plot_kind_from_string(const std::string& name);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Data series for one chart; rendering is left to the client.
struct PlotData {
  PlotKind kind = PlotKind::MarginalDensity;
  std::vector<Series> series;
  /// Bin width, psi-histogram only.
  double delta = 0.0;

  /// Every series has matching x and y lengths.
  bool consistent() const;
  json to_json() const;
};

/// "1-2,2-3" (1-based) to 0-based pairs; empty text gives up to three
/// consecutive pairs.
std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text,
                                                             std::size_t k);

/// beta(alpha_i, sum alpha - alpha_i) density on a uniform grid over [0, 1].
PlotData marginal_density_data(const DirichletParams& prior, std::size_t index,
                               std::size_t grid_points);
/// One series per coordinate.
PlotData marginal_density_data(const DirichletParams& prior, std::size_t grid_points);

/// Coordinates of `n_points` prior draws for each (i, j) pair (0-based).
PlotData scatter_pairs_data(const DirichletParams& prior,
                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                            std::size_t n_points, Rng& rng);

/// Density-scale histogram: x holds the bin lower edges, y = content / delta.
PlotData psi_histogram_data(const std::vector<double>& contents, double delta);

}  // namespace dirprior::app
